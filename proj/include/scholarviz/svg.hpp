#pragma once

#include <string>

#include "scholarviz/explorer.hpp"
#include "scholarviz/layout.hpp"

namespace scholarviz {

struct SvgStyle {
    double node_radius = 12.0;
    double more_radius = 9.0;
    double edge_width = 2.0;
    double font_size = 12.0;
    std::string font_family = "sans-serif";
};

struct NodeAppearance {
    PaletteColor fill;
    PaletteColor stroke;
    bool hollow;
};

/// Fill/stroke for a node's visual state: fresh = filled generation color,
/// expanded leaf = hollow generation color, expanded = hollow red,
/// collapsed = filled red.
NodeAppearance appearance_of(const ExplorerNode& node) noexcept;

/// Standalone SVG document of the visible graph at the given positions.
/// Output is byte-stable for equal inputs.
std::string render_svg(const ExplorerGraph& graph, const LayoutResult& layout,
                       const Canvas& canvas, const SvgStyle& style = {});

std::string xml_escape(std::string_view text);

}  // namespace scholarviz
