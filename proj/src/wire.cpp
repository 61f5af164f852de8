#include "scholarviz/wire.hpp"

#include <unordered_map>

namespace scholarviz::wire {

namespace {

Json concept_ref(const ConceptRef& ref) { return Json{{"id", ref.id.value}, {"label", ref.label}}; }

}  // namespace

Json concept_page(const ConceptPage& page) {
    Json items = Json::array();
    for (const auto& item : page.items) items.push_back(concept_ref(item));
    return Json{{"items", std::move(items)}, {"offset", page.offset}, {"remaining", page.remaining}};
}

Json expand_result(const ExpandResult& r) {
    Json out;
    out["kind"] = std::string(result_kind_name(r.kind));
    out["query"] = r.query;
    out["focus"] = r.focus ? concept_ref(*r.focus) : Json(nullptr);
    Json expansions = Json::array();
    for (const auto& e : r.expansions)
        expansions.push_back(
            {{"label", e.label}, {"concept_id", e.concept_id ? Json(e.concept_id->value) : Json(nullptr)}});
    out["expansions"] = std::move(expansions);
    out["supers"] = concept_page(r.supers);
    out["subs"] = concept_page(r.subs);
    out["translation"] = r.translation
                             ? Json{{"language", r.translation->language}, {"text", r.translation->text}}
                             : Json(nullptr);
    return out;
}

Json graph_snapshot(const ExplorerGraph& graph) {
    Json out;
    out["session_id"] = graph.session_id;
    out["focus"] = concept_ref(graph.focus);
    out["mode"] = std::string(layout_mode_name(graph.mode));

    auto visible = graph.visible_nodes();
    // Hidden descendants per collapsed node: walk each hidden node up to the
    // first visible ancestor.
    std::unordered_map<std::string_view, std::size_t> hidden_below;
    {
        std::unordered_map<std::string_view, const ExplorerNode*> by_key;
        for (const auto& n : graph.nodes) by_key.emplace(n.key, &n);
        std::unordered_map<std::string_view, bool> shown;
        for (const auto* n : visible) shown[n->key] = true;
        for (const auto& n : graph.nodes) {
            if (shown.count(n.key)) continue;
            const ExplorerNode* cur = &n;
            while (!cur->parent.empty()) {
                const ExplorerNode* parent = by_key.at(cur->parent);
                if (shown.count(parent->key)) {
                    ++hidden_below[parent->key];
                    break;
                }
                cur = parent;
            }
        }
    }

    Json nodes = Json::array();
    for (const auto* n : visible) {
        Json node;
        node["key"] = n->key;
        node["kind"] = std::string(node_kind_name(n->kind));
        node["concept_id"] = n->concept_id ? Json(n->concept_id->value) : Json(nullptr);
        node["label"] = n->label;
        node["side"] = std::string(side_name(n->side));
        node["generation"] = n->generation;
        node["state"] = std::string(node_state_name(n->state));
        node["color"] = static_cast<int>(n->color);
        node["color_name"] = std::string(palette_name(n->color));
        node["parent"] = n->parent.empty() ? Json(nullptr) : Json(n->parent);
        if (n->state == NodeState::Collapsed) node["hidden_descendants"] = hidden_below[n->key];
        if (n->more) {
            node["more"] = {{"list", n->more->list == ConceptList::Supers ? "supers" : "subs"},
                            {"next_offset", n->more->next_offset},
                            {"remaining", n->more->remaining}};
        }
        if (n->translation)
            node["translation"] = {{"language", n->translation->language},
                                   {"text", n->translation->text}};
        nodes.push_back(std::move(node));
    }
    out["nodes"] = std::move(nodes);

    Json edges = Json::array();
    for (const auto* e : graph.visible_edges())
        edges.push_back({{"parent", e->parent},
                         {"child", e->child},
                         {"color", static_cast<int>(e->color)},
                         {"color_name", std::string(palette_name(e->color))}});
    out["edges"] = std::move(edges);

    Json pinned = Json::array();
    for (const auto& [key, p] : graph.pinned)
        if (graph.is_visible(key)) pinned.push_back({{"key", key}, {"x", p.x}, {"y", p.y}});
    out["pinned"] = std::move(pinned);
    return out;
}

Json layout_result(const LayoutResult& layout, const Canvas& canvas) {
    Json out;
    out["mode"] = std::string(layout_mode_name(layout.mode));
    out["link_length"] = layout.link_length;
    out["canvas"] = {{"width", canvas.width}, {"height", canvas.height}};
    Json positions = Json::array();
    for (const auto& p : layout.positions)
        positions.push_back({{"id", p.id}, {"x", p.position.x}, {"y", p.position.y}});
    out["positions"] = std::move(positions);
    return out;
}

Json search_page(const SearchPage& page, const ScholarQuery& query) {
    Json out;
    Json keywords = Json::array();
    for (const auto& k : query.keywords) keywords.push_back(k);
    out["keywords"] = std::move(keywords);
    out["match"] = query.match == KeywordMatch::All ? "all" : "any";
    out["offset"] = query.offset;
    out["limit"] = query.limit;
    out["total"] = page.total;
    Json results = Json::array();
    for (const auto& r : page.results) {
        const ScholarRecord& s = *r.scholar;
        Json kws = Json::array();
        for (const auto& kw : s.keywords) kws.push_back({{"label", kw.label}, {"weight", kw.weight}});
        results.push_back({{"id", s.id},
                           {"name", s.name},
                           {"affiliation", s.affiliation},
                           {"score", r.score},
                           {"citations", s.citations},
                           {"paper_count", s.paper_count},
                           {"keywords", std::move(kws)}});
    }
    out["results"] = std::move(results);
    return out;
}

Json error(std::string_view code, std::string_view message) {
    return Json{{"error", std::string(code)}, {"message", std::string(message)}};
}

std::string dump(const Json& value) { return value.dump(-1, ' ', false, Json::error_handler_t::replace); }

}  // namespace scholarviz::wire
