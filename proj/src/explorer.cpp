#include "scholarviz/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "scholarviz/error.hpp"

namespace scholarviz {

namespace {

std::string make_key(ExplorerGraph& graph) { return "n" + std::to_string(graph.next_key++); }

std::unordered_map<std::string_view, std::size_t> key_index(const ExplorerGraph& graph) {
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(graph.nodes.size());
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) index.emplace(graph.nodes[i].key, i);
    return index;
}

/// visible[i] for every node: no collapsed ancestor.
std::vector<char> visibility(const ExplorerGraph& graph) {
    auto index = key_index(graph);
    std::vector<char> visible(graph.nodes.size(), 0);
    std::vector<char> done(graph.nodes.size(), 0);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        std::vector<std::size_t> chain;
        std::size_t cur = i;
        while (!done[cur]) {
            chain.push_back(cur);
            const auto& parent = graph.nodes[cur].parent;
            if (parent.empty()) {
                visible[cur] = 1;
                done[cur] = 1;
                chain.pop_back();
                break;
            }
            auto it = index.find(parent);
            if (it == index.end()) {
                // Orphans are reported by check_invariants; treat as hidden.
                done[cur] = 1;
                chain.pop_back();
                break;
            }
            if (chain.size() > graph.nodes.size()) break;  // malformed parent cycle
            cur = it->second;
        }
        while (!chain.empty()) {
            std::size_t n = chain.back();
            chain.pop_back();
            auto it = index.find(graph.nodes[n].parent);
            if (it == index.end()) continue;
            const auto& p = graph.nodes[it->second];
            visible[n] = visible[it->second] && p.state != NodeState::Collapsed;
            done[n] = 1;
        }
    }
    return visible;
}

}  // namespace

std::string_view node_kind_name(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::Concept: return "concept";
        case NodeKind::More: return "more";
        case NodeKind::Translation: return "translation";
    }
    return "concept";
}

std::string_view side_name(Side side) noexcept {
    switch (side) {
        case Side::Focus: return "focus";
        case Side::Super: return "super";
        case Side::Sub: return "sub";
    }
    return "focus";
}

std::string_view node_state_name(NodeState state) noexcept {
    switch (state) {
        case NodeState::Fresh: return "fresh";
        case NodeState::ExpandedLeaf: return "expanded_leaf";
        case NodeState::Expanded: return "expanded";
        case NodeState::Collapsed: return "collapsed";
    }
    return "fresh";
}

PaletteColor generation_color(unsigned generation, Side side) noexcept {
    switch (generation) {
        case 0: return PaletteColor::Gray;
        case 1: return side == Side::Super ? PaletteColor::Blue : PaletteColor::Orange;
        case 2: return PaletteColor::Green;
        case 3: return PaletteColor::Brown;
        default: break;
    }
    static constexpr PaletteColor cycle[] = {PaletteColor::Purple, PaletteColor::Teal,
                                             PaletteColor::Olive};
    return cycle[(generation - 4) % 3];
}

std::string_view palette_name(PaletteColor color) noexcept {
    switch (color) {
        case PaletteColor::Gray: return "gray";
        case PaletteColor::Blue: return "blue";
        case PaletteColor::Orange: return "orange";
        case PaletteColor::Green: return "green";
        case PaletteColor::Brown: return "brown";
        case PaletteColor::Purple: return "purple";
        case PaletteColor::Teal: return "teal";
        case PaletteColor::Olive: return "olive";
        case PaletteColor::Red: return "red";
    }
    return "gray";
}

std::string_view palette_hex(PaletteColor color) noexcept {
    switch (color) {
        case PaletteColor::Gray: return "#7f7f7f";
        case PaletteColor::Blue: return "#1f77b4";
        case PaletteColor::Orange: return "#ff7f0e";
        case PaletteColor::Green: return "#2ca02c";
        case PaletteColor::Brown: return "#8c564b";
        case PaletteColor::Purple: return "#9467bd";
        case PaletteColor::Teal: return "#17becf";
        case PaletteColor::Olive: return "#bcbd22";
        case PaletteColor::Red: return "#d62728";
    }
    return "#7f7f7f";
}

// ---------------------------------------------------------------------------
// ExplorerGraph

const ExplorerNode* ExplorerGraph::find(std::string_view key) const noexcept {
    for (const auto& n : nodes)
        if (n.key == key) return &n;
    return nullptr;
}

bool ExplorerGraph::is_visible(std::string_view key) const {
    auto vis = visibility(*this);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].key == key) return vis[i] != 0;
    return false;
}

std::vector<const ExplorerNode*> ExplorerGraph::visible_nodes() const {
    auto vis = visibility(*this);
    std::vector<const ExplorerNode*> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (vis[i]) out.push_back(&nodes[i]);
    return out;
}

std::vector<const ExplorerEdge*> ExplorerGraph::visible_edges() const {
    auto vis = visibility(*this);
    auto index = key_index(*this);
    std::vector<const ExplorerEdge*> out;
    for (const auto& e : edges) {
        auto it = index.find(e.child);
        if (it != index.end() && vis[it->second]) out.push_back(&e);
    }
    return out;
}

std::vector<const ExplorerNode*> ExplorerGraph::children_of(std::string_view key) const {
    auto index = key_index(*this);
    std::vector<const ExplorerNode*> out;
    for (const auto& e : edges) {
        if (e.parent != key) continue;
        auto it = index.find(e.child);
        if (it != index.end()) out.push_back(&nodes[it->second]);
    }
    return out;
}

bool ExplorerGraph::same_structure(const ExplorerGraph& other) const {
    return focus == other.focus && mode == other.mode && nodes == other.nodes &&
           edges == other.edges && pinned == other.pinned && next_key == other.next_key;
}

// ---------------------------------------------------------------------------
// Explorer

std::vector<ExplorerNode> Explorer::page_nodes(ExplorerGraph& graph, const ExplorerNode& parent,
                                               Side side, unsigned generation,
                                               const ConceptPage& page, const ConceptId& source,
                                               ConceptList list) const {
    std::vector<ExplorerNode> out;
    const PaletteColor color = generation_color(generation, side);
    for (const auto& item : page.items) {
        ExplorerNode node;
        node.key = make_key(graph);
        node.kind = NodeKind::Concept;
        node.concept_id = item.id;
        node.label = item.label;
        node.side = side;
        node.generation = generation;
        node.state = NodeState::Fresh;
        node.color = color;
        node.parent = parent.key;
        out.push_back(std::move(node));
    }
    if (page.remaining > 0) {
        ExplorerNode node;
        node.key = make_key(graph);
        node.kind = NodeKind::More;
        node.label = "MORE";
        node.side = side;
        node.generation = generation;
        node.state = NodeState::Fresh;
        node.color = color;
        node.parent = parent.key;
        node.more = MoreCursor{source, list, page.offset + page.items.size(), page.remaining};
        out.push_back(std::move(node));
    }
    return out;
}

ExplorerGraph Explorer::start_session(const ExpandResult& result, LayoutMode mode,
                                      std::string session_id) const {
    if (result.kind == ResultKind::Expansions || result.kind == ResultKind::NotFound ||
        !result.focus)
        throw Error(ErrorCode::WrongResultKind,
                    "cannot start a session from a '" +
                        std::string(result_kind_name(result.kind)) + "' result");

    ExplorerGraph graph;
    graph.session_id = std::move(session_id);
    graph.focus = *result.focus;
    graph.mode = mode;

    ExplorerNode focus;
    focus.key = make_key(graph);
    focus.kind = NodeKind::Concept;
    focus.concept_id = result.focus->id;
    focus.label = result.focus->label;
    focus.side = Side::Focus;
    focus.generation = 0;
    focus.color = PaletteColor::Gray;

    std::vector<ExplorerNode> children;
    if (result.kind == ResultKind::TranslationOnly) {
        ExplorerNode note;
        note.key = make_key(graph);
        note.kind = NodeKind::Translation;
        note.label = result.translation->text;
        note.translation = result.translation;
        note.side = Side::Sub;
        note.generation = 1;
        note.color = generation_color(1, Side::Sub);
        note.parent = focus.key;
        children.push_back(std::move(note));
    } else {
        auto supers = page_nodes(graph, focus, Side::Super, 1, result.supers, focus.concept_id.value(),
                                 ConceptList::Supers);
        auto subs = page_nodes(graph, focus, Side::Sub, 1, result.subs, focus.concept_id.value(),
                               ConceptList::Subs);
        children = std::move(supers);
        children.insert(children.end(), std::make_move_iterator(subs.begin()),
                        std::make_move_iterator(subs.end()));
    }
    focus.state = children.empty() ? NodeState::ExpandedLeaf : NodeState::Expanded;

    graph.nodes.push_back(std::move(focus));
    for (auto& child : children) {
        graph.edges.push_back({child.parent, child.key, child.color});
        graph.nodes.push_back(std::move(child));
    }
    return graph;
}

const ExplorerNode& Explorer::visible_node(const ExplorerGraph& graph, std::string_view key) const {
    auto vis = visibility(graph);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        if (graph.nodes[i].key == key && vis[i]) return graph.nodes[i];
    throw Error(ErrorCode::UnknownNode, "no visible node '" + std::string(key) + "'");
}

void Explorer::consume_more(ExplorerGraph& graph, std::size_t index) const {
    ExplorerNode more_node = graph.nodes[index];
    const MoreCursor& cursor = *more_node.more;
    ConceptPage page = cursor.list == ConceptList::Supers
                           ? taxonomy_->supers(cursor.source, cursor.next_offset, options_.page_size)
                           : taxonomy_->subs(cursor.source, cursor.next_offset, options_.page_size);

    auto parent_it = std::find_if(graph.nodes.begin(), graph.nodes.end(),
                                  [&](const ExplorerNode& n) { return n.key == more_node.parent; });
    auto fresh = page_nodes(graph, *parent_it, more_node.side, more_node.generation, page,
                            cursor.source, cursor.list);

    auto edge_it = std::find_if(graph.edges.begin(), graph.edges.end(),
                                [&](const ExplorerEdge& e) { return e.child == more_node.key; });
    std::size_t edge_pos = static_cast<std::size_t>(edge_it - graph.edges.begin());
    graph.edges.erase(edge_it);
    graph.nodes.erase(graph.nodes.begin() + static_cast<std::ptrdiff_t>(index));
    graph.pinned.erase(more_node.key);

    std::vector<ExplorerEdge> new_edges;
    for (const auto& n : fresh) new_edges.push_back({n.parent, n.key, n.color});
    graph.edges.insert(graph.edges.begin() + static_cast<std::ptrdiff_t>(edge_pos),
                       new_edges.begin(), new_edges.end());
    graph.nodes.insert(graph.nodes.begin() + static_cast<std::ptrdiff_t>(index),
                       std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
}

void Explorer::click(ExplorerGraph& graph, std::string_view key) const {
    const ExplorerNode& target = visible_node(graph, key);
    std::size_t index = static_cast<std::size_t>(&target - graph.nodes.data());
    ExplorerNode& node = graph.nodes[index];

    if (node.kind == NodeKind::More) {
        consume_more(graph, index);
        return;
    }
    if (node.kind == NodeKind::Translation) return;

    switch (node.state) {
        case NodeState::Fresh: {
            ConceptPage page = taxonomy_->subs(*node.concept_id, 0, options_.page_size);
            if (page.items.empty()) {
                node.state = NodeState::ExpandedLeaf;
                return;
            }
            node.state = NodeState::Expanded;
            ExplorerNode parent = node;
            auto fresh = page_nodes(graph, parent, parent.side, parent.generation + 1, page,
                                    *parent.concept_id, ConceptList::Subs);
            for (auto& child : fresh) {
                graph.edges.push_back({child.parent, child.key, child.color});
                graph.nodes.push_back(std::move(child));
            }
            return;
        }
        case NodeState::Expanded:
            node.state = NodeState::Collapsed;
            return;
        case NodeState::Collapsed:
            node.state = NodeState::Expanded;
            return;
        case NodeState::ExpandedLeaf:
            return;
    }
}

void Explorer::more(ExplorerGraph& graph, std::string_view key) const {
    const ExplorerNode& target = visible_node(graph, key);
    if (target.kind != NodeKind::More)
        throw Error(ErrorCode::IllegalEvent, "node '" + std::string(key) + "' is not a MORE node");
    consume_more(graph, static_cast<std::size_t>(&target - graph.nodes.data()));
}

void Explorer::double_click(ExplorerGraph& graph, std::string_view key) const {
    const ExplorerNode& target = visible_node(graph, key);
    if (target.kind != NodeKind::Concept)
        throw Error(ErrorCode::NotRecenterable,
                    "node '" + std::string(key) + "' is a " +
                        std::string(node_kind_name(target.kind)) + " node");
    ExpandResult result = expand_concept(*target.concept_id, *taxonomy_,
                                         QueryOptions{options_.page_size, options_.language});
    graph = start_session(result, graph.mode, std::move(graph.session_id));
}

void Explorer::set_mode(ExplorerGraph& graph, LayoutMode mode) const { graph.mode = mode; }

void Explorer::pin(ExplorerGraph& graph, std::string_view key, Point point) const {
    if (graph.mode != LayoutMode::Force)
        throw Error(ErrorCode::WrongMode, "nodes can only be pinned in force mode");
    const ExplorerNode& node = visible_node(graph, key);
    if (!std::isfinite(point.x) || !std::isfinite(point.y))
        throw Error(ErrorCode::IllegalEvent, "pin position must be finite");
    graph.pinned[node.key] = options_.canvas.clamp(point);
}

void Explorer::unpin(ExplorerGraph& graph, std::string_view key) const {
    if (graph.mode != LayoutMode::Force)
        throw Error(ErrorCode::WrongMode, "nodes can only be unpinned in force mode");
    const ExplorerNode& node = visible_node(graph, key);
    graph.pinned.erase(node.key);
}

LayoutInput Explorer::layout_input(const ExplorerGraph& graph, std::uint64_t seed) const {
    LayoutInput input;
    input.canvas = options_.canvas;
    input.seed = seed;
    for (const ExplorerNode* n : graph.visible_nodes()) {
        int depth = static_cast<int>(n->generation);
        if (n->side == Side::Super) depth = -depth;
        if (n->side == Side::Focus) depth = 0;
        input.nodes.push_back({n->key, depth});
        if (graph.mode == LayoutMode::Force) {
            auto pin = graph.pinned.find(n->key);
            if (pin != graph.pinned.end()) input.pinned.emplace(pin->first, pin->second);
        }
    }
    for (const ExplorerEdge* e : graph.visible_edges()) input.edges.push_back({e->parent, e->child});
    return input;
}

// ---------------------------------------------------------------------------
// Invariants

std::vector<std::string> check_invariants(const ExplorerGraph& graph) {
    std::vector<std::string> problems;
    auto fail = [&](const std::string& what) { problems.push_back(what); };

    auto index = key_index(graph);
    if (index.size() != graph.nodes.size()) fail("duplicate node keys");
    if (graph.nodes.empty()) {
        fail("graph has no focus");
        return problems;
    }

    std::size_t focus_count = 0;
    for (const auto& n : graph.nodes) {
        if (n.side == Side::Focus) {
            ++focus_count;
            if (n.generation != 0) fail("focus generation is not 0");
            if (n.state == NodeState::Fresh) fail("focus is FRESH");
            if (!n.parent.empty()) fail("focus has a parent");
            if (n.concept_id != graph.focus.id) fail("focus node does not match graph focus");
        }
    }
    if (focus_count != 1) fail("expected exactly one focus node");

    std::unordered_map<std::string_view, std::size_t> child_edges;
    std::unordered_map<std::string_view, std::size_t> child_count;
    for (const auto& e : graph.edges) {
        auto p = index.find(e.parent);
        auto c = index.find(e.child);
        if (p == index.end() || c == index.end()) {
            fail("edge " + e.parent + " -> " + e.child + " names an unknown node");
            continue;
        }
        const auto& parent = graph.nodes[p->second];
        const auto& child = graph.nodes[c->second];
        ++child_edges[e.child];
        ++child_count[e.parent];
        if (child.parent != e.parent) fail("edge parent disagrees with node " + child.key);
        if (child.generation != parent.generation + 1)
            fail("generation does not step by one on edge to " + child.key);
        if (e.color != generation_color(child.generation, child.side))
            fail("edge color mismatch on " + child.key);
        if (parent.side != Side::Focus && child.side != parent.side)
            fail("side changes along edge to " + child.key);
        if (parent.kind != NodeKind::Concept) fail("non-concept node " + parent.key + " has children");
    }

    auto vis = visibility(graph);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const auto& n = graph.nodes[i];
        if (n.side != Side::Focus && child_edges[n.key] != 1)
            fail("node " + n.key + " does not have exactly one incoming edge");
        if (n.color != generation_color(n.generation, n.side))
            fail("node color mismatch on " + n.key);
        std::size_t kids = child_count[n.key];
        switch (n.state) {
            case NodeState::Fresh:
                if (kids != 0) fail("FRESH node " + n.key + " has children");
                break;
            case NodeState::ExpandedLeaf:
                if (kids != 0) fail("EXPANDED_LEAF node " + n.key + " has children");
                break;
            case NodeState::Expanded:
            case NodeState::Collapsed:
                if (kids == 0) fail("node " + n.key + " is expanded/collapsed without children");
                break;
        }
        if (n.kind == NodeKind::More) {
            if (!n.more) fail("MORE node " + n.key + " has no cursor");
            if (n.state != NodeState::Fresh) fail("MORE node " + n.key + " changed state");
        }
        if (n.kind == NodeKind::Concept && !n.concept_id) fail("concept node without concept id");
        if (!n.parent.empty()) {
            auto p = index.find(n.parent);
            if (p != index.end()) {
                const auto& parent = graph.nodes[p->second];
                bool expect = vis[p->second] && parent.state != NodeState::Collapsed;
                if ((vis[i] != 0) != expect) fail("visibility of " + n.key + " is inconsistent");
            }
        }
    }
    for (const auto& [key, point] : graph.pinned) {
        if (!index.count(key)) fail("pin on unknown node " + key);
        if (!std::isfinite(point.x) || !std::isfinite(point.y)) fail("non-finite pin on " + key);
    }
    return problems;
}

// ---------------------------------------------------------------------------
// SessionStore

SessionStore::SessionStore(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity == 0 ? 1 : capacity), ids_(seed) {}

std::shared_ptr<SessionStore::Session> SessionStore::create(ExplorerGraph graph) {
    auto session = std::make_shared<Session>();
    std::lock_guard lock(mutex_);
    std::string id;
    do {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids_.next()));
        id = buf;
    } while (sessions_.count(id));

    graph.session_id = id;
    session->graph = std::move(graph);
    lru_.push_front(id);
    sessions_.emplace(id, std::make_pair(session, lru_.begin()));
    while (sessions_.size() > capacity_) {
        sessions_.erase(lru_.back());
        lru_.pop_back();
    }
    return session;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(std::string_view id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(id));
    if (it == sessions_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second.second);
    return it->second.first;
}

bool SessionStore::erase(std::string_view id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(std::string(id));
    if (it == sessions_.end()) return false;
    lru_.erase(it->second.second);
    sessions_.erase(it);
    return true;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

}  // namespace scholarviz
