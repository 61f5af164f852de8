#include "scholarviz/svg.hpp"

#include <cstdio>
#include <sstream>

namespace scholarviz {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

}  // namespace

NodeAppearance appearance_of(const ExplorerNode& node) noexcept {
    switch (node.state) {
        case NodeState::Fresh: return {node.color, node.color, false};
        case NodeState::ExpandedLeaf: return {node.color, node.color, true};
        case NodeState::Expanded: return {PaletteColor::Red, PaletteColor::Red, true};
        case NodeState::Collapsed: return {PaletteColor::Red, PaletteColor::Red, false};
    }
    return {node.color, node.color, false};
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string render_svg(const ExplorerGraph& graph, const LayoutResult& layout,
                       const Canvas& canvas, const SvgStyle& style) {
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(canvas.width)
        << "\" height=\"" << num(canvas.height) << "\" viewBox=\"0 0 " << num(canvas.width) << ' '
        << num(canvas.height) << "\" data-mode=\"" << layout_mode_name(layout.mode)
        << "\" data-center-x=\"" << num(canvas.center().x) << "\" data-center-y=\""
        << num(canvas.center().y) << "\">\n";
    svg << "  <title>" << xml_escape(graph.focus.label) << "</title>\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << num(canvas.width) << "\" height=\""
        << num(canvas.height) << "\" fill=\"#ffffff\"/>\n";

    svg << "  <g class=\"edges\">\n";
    for (const ExplorerEdge* e : graph.visible_edges()) {
        const Point& a = layout.at(e->parent);
        const Point& b = layout.at(e->child);
        svg << "    <line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
            << "\" y2=\"" << num(b.y) << "\" stroke=\"" << palette_hex(e->color)
            << "\" stroke-width=\"" << num(style.edge_width) << "\" data-parent=\"" << e->parent
            << "\" data-child=\"" << e->child << "\"/>\n";
    }
    svg << "  </g>\n";

    svg << "  <g class=\"nodes\">\n";
    for (const ExplorerNode* n : graph.visible_nodes()) {
        const Point& p = layout.at(n->key);
        NodeAppearance look = appearance_of(*n);
        double r = n->kind == NodeKind::More ? style.more_radius : style.node_radius;
        svg << "    <g class=\"node\" data-key=\"" << n->key << "\" data-kind=\""
            << node_kind_name(n->kind) << "\" data-side=\"" << side_name(n->side)
            << "\" data-state=\"" << node_state_name(n->state) << "\" data-generation=\""
            << n->generation << "\">\n";
        svg << "      <circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(r)
            << "\" fill=\"" << (look.hollow ? std::string("#ffffff") : std::string(palette_hex(look.fill)))
            << "\" stroke=\"" << palette_hex(look.stroke) << "\" stroke-width=\"2.00\"/>\n";
        svg << "      <text x=\"" << num(p.x) << "\" y=\"" << num(p.y - r - 4.0)
            << "\" text-anchor=\"middle\" font-family=\"" << xml_escape(style.font_family)
            << "\" font-size=\"" << num(style.font_size) << "\">" << xml_escape(n->label)
            << "</text>\n";
        svg << "    </g>\n";
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

}  // namespace scholarviz
