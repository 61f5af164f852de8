#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scholarviz {

enum class LayoutMode { Radial, Horizontal, Force };

std::string_view layout_mode_name(LayoutMode mode) noexcept;
std::optional<LayoutMode> parse_layout_mode(std::string_view name) noexcept;

/// Canvas coordinates, y grows downward.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Canvas {
    double width = 1000.0;
    double height = 800.0;

    Point center() const noexcept { return {width / 2.0, height / 2.0}; }
    Point clamp(Point p) const noexcept;
    bool contains(Point p) const noexcept;
};

struct LayoutNode {
    std::string id;
    int depth = 0;  // <0 super side, >0 sub side, 0 focus
};

struct LayoutEdge {
    std::string parent;
    std::string child;
};

struct LayoutInput {
    std::vector<LayoutNode> nodes;
    std::vector<LayoutEdge> edges;  // children keep the order they appear here
    std::map<std::string, Point> pinned;  // force mode only
    Canvas canvas;
    std::uint64_t seed = 0;
};

/// Tunables shared by the three layouts. Defaults are the shipped values.
struct LayoutConfig {
    double link_min = 40.0;
    double link_max = 120.0;
    double reference_nodes = 12.0;  // N0 in the shrink rule
    double column_gap = 48.0;       // vertical gap between stacked leaves
    double guard_degrees = 0.0;     // excluded wedge at the horizontal axis
    double margin = 20.0;           // kept free at the canvas border
    double force_k_coefficient = 0.8;
    std::size_t force_iterations = 300;
};

struct PositionedNode {
    std::string id;
    Point position;

    friend bool operator==(const PositionedNode&, const PositionedNode&) = default;
};

struct LayoutResult {
    LayoutMode mode = LayoutMode::Radial;
    std::vector<PositionedNode> positions;  // input node order
    double link_length = 0.0;
    /// Force mode: summed node displacement per iteration.
    std::vector<double> displacement;

    const Point& at(std::string_view id) const;
};

/// clamp(link_max * sqrt(N0 / N), link_min, link_max).
double spacing_for(std::size_t node_count, const LayoutConfig& config) noexcept;

LayoutResult radial_layout(const LayoutInput& input, const LayoutConfig& config = {});
LayoutResult horizontal_layout(const LayoutInput& input, const LayoutConfig& config = {});
LayoutResult force_layout(const LayoutInput& input, const LayoutConfig& config = {});
LayoutResult force_layout(const LayoutInput& input, std::size_t iterations,
                          const LayoutConfig& config = {});

LayoutResult compute_layout(LayoutMode mode, const LayoutInput& input,
                            const LayoutConfig& config = {});

/// SplitMix64 stream; the jitter source for force layout.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) from the top 53 bits.
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace scholarviz
