#include "scholarviz/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "scholarviz/error.hpp"

namespace scholarviz {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Parent/child structure of a validated layout input, indexed by node order.
struct Forest {
    std::size_t focus = 0;
    std::vector<std::vector<std::size_t>> children;
    std::vector<std::size_t> parent;  // npos for the focus
    int max_abs_depth = 0;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::unordered_map<std::string_view, std::size_t> index_nodes(const LayoutInput& input) {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < input.nodes.size(); ++i) {
        const auto& id = input.nodes[i].id;
        if (id.empty()) throw Error(ErrorCode::InvalidLayoutInput, "layout node with empty id");
        if (!index.emplace(id, i).second)
            throw Error(ErrorCode::InvalidLayoutInput, "duplicate layout node '" + id + "'");
    }
    return index;
}

void check_canvas(const Canvas& canvas) {
    if (!(std::isfinite(canvas.width) && std::isfinite(canvas.height) && canvas.width > 0.0 &&
          canvas.height > 0.0))
        throw Error(ErrorCode::InvalidLayoutInput, "canvas dimensions must be positive");
}

std::size_t find_focus(const LayoutInput& input) {
    std::size_t focus = npos;
    for (std::size_t i = 0; i < input.nodes.size(); ++i) {
        if (input.nodes[i].depth != 0) continue;
        if (focus != npos)
            throw Error(ErrorCode::NoFocus, "more than one node at depth 0 ('" +
                                                input.nodes[focus].id + "', '" +
                                                input.nodes[i].id + "')");
        focus = i;
    }
    if (focus == npos) throw Error(ErrorCode::NoFocus, "no node at depth 0");
    return focus;
}

Forest build_forest(const LayoutInput& input) {
    check_canvas(input.canvas);
    auto index = index_nodes(input);
    Forest forest;
    forest.focus = find_focus(input);
    forest.children.resize(input.nodes.size());
    forest.parent.assign(input.nodes.size(), npos);

    for (const auto& edge : input.edges) {
        auto p = index.find(edge.parent);
        auto c = index.find(edge.child);
        if (p == index.end() || c == index.end())
            throw Error(ErrorCode::InvalidLayoutInput,
                        "edge " + edge.parent + " -> " + edge.child + " names an unknown node");
        int pd = input.nodes[p->second].depth;
        int cd = input.nodes[c->second].depth;
        bool same_side = pd == 0 || (pd < 0) == (cd < 0);
        if (std::abs(cd) != std::abs(pd) + 1 || !same_side)
            throw Error(ErrorCode::InvalidDepths, "edge " + edge.parent + " -> " + edge.child +
                                                      " spans depths " + std::to_string(pd) +
                                                      " -> " + std::to_string(cd));
        if (forest.parent[c->second] != npos)
            throw Error(ErrorCode::InvalidLayoutInput, "node '" + edge.child +
                                                           "' has more than one parent");
        forest.parent[c->second] = p->second;
        forest.children[p->second].push_back(c->second);
    }
    for (std::size_t i = 0; i < input.nodes.size(); ++i) {
        if (i != forest.focus && forest.parent[i] == npos)
            throw Error(ErrorCode::InvalidLayoutInput,
                        "node '" + input.nodes[i].id + "' is not connected to the focus");
        forest.max_abs_depth = std::max(forest.max_abs_depth, std::abs(input.nodes[i].depth));
    }
    return forest;
}

LayoutResult make_result(LayoutMode mode, const LayoutInput& input) {
    LayoutResult result;
    result.mode = mode;
    result.positions.reserve(input.nodes.size());
    for (const auto& n : input.nodes) result.positions.push_back({n.id, Point{}});
    return result;
}

double available_extent(double half_extent, double margin) {
    double avail = half_extent - margin;
    return avail > 0.0 ? avail : half_extent;
}

}  // namespace

std::string_view layout_mode_name(LayoutMode mode) noexcept {
    switch (mode) {
        case LayoutMode::Radial: return "radial";
        case LayoutMode::Horizontal: return "horizontal";
        case LayoutMode::Force: return "force";
    }
    return "radial";
}

std::optional<LayoutMode> parse_layout_mode(std::string_view name) noexcept {
    if (name == "radial") return LayoutMode::Radial;
    if (name == "horizontal") return LayoutMode::Horizontal;
    if (name == "force") return LayoutMode::Force;
    return std::nullopt;
}

Point Canvas::clamp(Point p) const noexcept {
    return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
}

bool Canvas::contains(Point p) const noexcept {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

const Point& LayoutResult::at(std::string_view id) const {
    for (const auto& p : positions)
        if (p.id == id) return p.position;
    throw Error(ErrorCode::UnknownNode, "no position for node '" + std::string(id) + "'");
}

double spacing_for(std::size_t node_count, const LayoutConfig& config) noexcept {
    if (node_count == 0) return config.link_max;
    double scaled = config.link_max *
                    std::sqrt(config.reference_nodes / static_cast<double>(node_count));
    return std::clamp(scaled, config.link_min, config.link_max);
}

LayoutResult radial_layout(const LayoutInput& input, const LayoutConfig& config) {
    Forest forest = build_forest(input);
    LayoutResult result = make_result(LayoutMode::Radial, input);
    const Canvas& canvas = input.canvas;
    const Point center = canvas.center();

    double link = spacing_for(input.nodes.size(), config);
    if (forest.max_abs_depth > 0) {
        double fit = available_extent(std::min(canvas.width, canvas.height) / 2.0, config.margin) /
                     forest.max_abs_depth;
        link = std::min(link, fit);
    }
    result.link_length = link;
    result.positions[forest.focus].position = center;

    // Angular sectors in screen degrees: supers in (180, 360), subs in (0, 180).
    struct Sector {
        std::size_t node;
        double start;
        double width;
    };
    const double guard = config.guard_degrees;
    std::vector<Sector> pending;
    std::vector<std::size_t> supers;
    std::vector<std::size_t> subs;
    for (std::size_t child : forest.children[forest.focus])
        (input.nodes[child].depth < 0 ? supers : subs).push_back(child);

    auto partition = [&](const std::vector<std::size_t>& kids, double start, double width) {
        if (kids.empty()) return;
        double slice = width / static_cast<double>(kids.size());
        for (std::size_t i = 0; i < kids.size(); ++i)
            pending.push_back({kids[i], start + static_cast<double>(i) * slice, slice});
    };
    partition(supers, 180.0 + guard, 180.0 - 2.0 * guard);
    partition(subs, guard, 180.0 - 2.0 * guard);

    while (!pending.empty()) {
        Sector s = pending.back();
        pending.pop_back();
        double theta = (s.start + s.width / 2.0) * kDegToRad;
        double radius = std::abs(input.nodes[s.node].depth) * link;
        Point p{center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
        result.positions[s.node].position = canvas.clamp(p);
        partition(forest.children[s.node], s.start, s.width);
    }
    return result;
}

LayoutResult horizontal_layout(const LayoutInput& input, const LayoutConfig& config) {
    Forest forest = build_forest(input);
    LayoutResult result = make_result(LayoutMode::Horizontal, input);
    const Canvas& canvas = input.canvas;
    const Point center = canvas.center();

    double link = spacing_for(input.nodes.size(), config);
    if (forest.max_abs_depth > 0) {
        double fit = available_extent(canvas.width / 2.0, config.margin) / forest.max_abs_depth;
        link = std::min(link, fit);
    }
    result.link_length = link;

    // Leaves take consecutive unit slots in depth-first order; a parent sits
    // at the mean of its children. Slots are later scaled by the gap.
    std::vector<double> slot(input.nodes.size(), 0.0);
    auto place_side = [&](const std::vector<std::size_t>& roots) {
        if (roots.empty()) return;
        double next_leaf = 0.0;
        std::vector<std::size_t> side_nodes;
        struct Frame {
            std::size_t node;
            std::size_t next_child;
        };
        for (std::size_t root : roots) {
            std::vector<Frame> stack{{root, 0}};
            while (!stack.empty()) {
                Frame& top = stack.back();
                const auto& kids = forest.children[top.node];
                if (kids.empty()) {
                    slot[top.node] = next_leaf;
                    next_leaf += 1.0;
                } else if (top.next_child < kids.size()) {
                    stack.push_back({kids[top.next_child++], 0});
                    continue;
                } else {
                    double sum = 0.0;
                    for (std::size_t k : kids) sum += slot[k];
                    slot[top.node] = sum / static_cast<double>(kids.size());
                }
                side_nodes.push_back(top.node);
                stack.pop_back();
            }
        }
        double anchor = 0.0;
        for (std::size_t r : roots) anchor += slot[r];
        anchor /= static_cast<double>(roots.size());

        double extent = 0.0;
        for (std::size_t n : side_nodes) {
            slot[n] -= anchor;
            extent = std::max(extent, std::abs(slot[n]));
        }
        double gap = config.column_gap;
        if (extent > 0.0)
            gap = std::min(gap, available_extent(canvas.height / 2.0, config.margin) / extent);
        for (std::size_t n : side_nodes) {
            Point p{center.x + input.nodes[n].depth * link, center.y + slot[n] * gap};
            result.positions[n].position = canvas.clamp(p);
        }
    };

    std::vector<std::size_t> supers;
    std::vector<std::size_t> subs;
    for (std::size_t child : forest.children[forest.focus])
        (input.nodes[child].depth < 0 ? supers : subs).push_back(child);
    result.positions[forest.focus].position = center;
    place_side(supers);
    place_side(subs);
    return result;
}

LayoutResult force_layout(const LayoutInput& input, const LayoutConfig& config) {
    return force_layout(input, config.force_iterations, config);
}

LayoutResult force_layout(const LayoutInput& input, std::size_t iterations,
                          const LayoutConfig& config) {
    check_canvas(input.canvas);
    if (iterations == 0)
        throw Error(ErrorCode::InvalidLayoutInput, "force layout needs at least one iteration");
    auto index = index_nodes(input);
    find_focus(input);

    const Canvas& canvas = input.canvas;
    const Point center = canvas.center();
    const std::size_t n = input.nodes.size();
    LayoutResult result = make_result(LayoutMode::Force, input);

    const double k = config.force_k_coefficient *
                     std::sqrt(canvas.width * canvas.height / static_cast<double>(n));
    result.link_length = k;

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(input.edges.size());
    for (const auto& e : input.edges) {
        auto p = index.find(e.parent);
        auto c = index.find(e.child);
        if (p == index.end() || c == index.end())
            throw Error(ErrorCode::InvalidLayoutInput,
                        "edge " + e.parent + " -> " + e.child + " names an unknown node");
        edges.emplace_back(p->second, c->second);
    }

    std::vector<Point> pos(n);
    std::vector<char> pinned(n, 0);
    if (n == 1) {
        pos[0] = center;
    } else {
        SplitMix64 rng(input.seed);
        const double radius = k * std::sqrt(static_cast<double>(n));
        const double jitter = k / 100.0;
        for (std::size_t i = 0; i < n; ++i) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
            double jx = (2.0 * rng.next_unit() - 1.0) * jitter;
            double jy = (2.0 * rng.next_unit() - 1.0) * jitter;
            pos[i] = {center.x + radius * std::cos(angle) + jx,
                      center.y + radius * std::sin(angle) + jy};
        }
    }
    for (const auto& [id, point] : input.pinned) {
        auto it = index.find(id);
        if (it == index.end()) continue;
        pos[it->second] = canvas.clamp(point);
        pinned[it->second] = 1;
    }

    const double t0 = std::min(canvas.width, canvas.height) / 10.0;
    const double k2 = k * k;
    std::vector<Point> disp(n);
    result.displacement.reserve(iterations);
    for (std::size_t it = 0; it < iterations; ++it) {
        const double temperature =
            t0 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations));
        std::fill(disp.begin(), disp.end(), Point{});

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double d = std::hypot(dx, dy);
                if (d < 1e-9) {
                    dx = 1e-3;
                    dy = 0.0;
                    d = 1e-3;
                }
                double f = k2 / d;
                disp[i].x += dx / d * f;
                disp[i].y += dy / d * f;
                disp[j].x -= dx / d * f;
                disp[j].y -= dy / d * f;
            }
        }
        for (auto [u, v] : edges) {
            double dx = pos[u].x - pos[v].x;
            double dy = pos[u].y - pos[v].y;
            double d = std::hypot(dx, dy);
            if (d < 1e-9) continue;
            double f = d * d / k;
            disp[u].x -= dx / d * f;
            disp[u].y -= dy / d * f;
            disp[v].x += dx / d * f;
            disp[v].y += dy / d * f;
        }

        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pinned[i]) continue;
            double len = std::hypot(disp[i].x, disp[i].y);
            if (len <= 0.0) continue;
            double step = std::min(len, temperature);
            pos[i].x += disp[i].x / len * step;
            pos[i].y += disp[i].y / len * step;
            moved += step;
        }
        result.displacement.push_back(moved);
    }

    for (std::size_t i = 0; i < n; ++i)
        result.positions[i].position = pinned[i] ? pos[i] : canvas.clamp(pos[i]);
    return result;
}

LayoutResult compute_layout(LayoutMode mode, const LayoutInput& input,
                            const LayoutConfig& config) {
    switch (mode) {
        case LayoutMode::Radial: return radial_layout(input, config);
        case LayoutMode::Horizontal: return horizontal_layout(input, config);
        case LayoutMode::Force: return force_layout(input, config);
    }
    return radial_layout(input, config);
}

}  // namespace scholarviz
