#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scholarviz/layout.hpp"
#include "scholarviz/query.hpp"
#include "scholarviz/taxonomy.hpp"

namespace scholarviz {

enum class NodeKind { Concept, More, Translation };
enum class Side { Focus, Super, Sub };

/// Visual state of an explorer node.
///  Fresh        solid fill, generation color (never clicked)
///  ExpandedLeaf hollow, generation color (clicked, nothing below)
///  Expanded     hollow red (children visible)
///  Collapsed    solid red (children hidden)
enum class NodeState { Fresh, ExpandedLeaf, Expanded, Collapsed };

enum class ConceptList { Supers, Subs };

std::string_view node_kind_name(NodeKind kind) noexcept;
std::string_view side_name(Side side) noexcept;
std::string_view node_state_name(NodeState state) noexcept;

/// Fixed palette. Red is reserved for the expanded/collapsed marker.
enum class PaletteColor : int {
    Gray = 0,  // focus
    Blue = 1,  // generation 1, super side
    Orange = 2,  // generation 1, sub side
    Green = 3,
    Brown = 4,
    Purple = 5,
    Teal = 6,
    Olive = 7,
    Red = 8,
};

PaletteColor generation_color(unsigned generation, Side side) noexcept;
std::string_view palette_name(PaletteColor color) noexcept;
std::string_view palette_hex(PaletteColor color) noexcept;

/// Where a MORE node continues its sibling list.
struct MoreCursor {
    ConceptId source;
    ConceptList list = ConceptList::Subs;
    std::size_t next_offset = 0;
    std::size_t remaining = 0;

    friend bool operator==(const MoreCursor&, const MoreCursor&) = default;
};

struct ExplorerNode {
    std::string key;
    NodeKind kind = NodeKind::Concept;
    std::optional<ConceptId> concept_id;
    std::string label;
    Side side = Side::Focus;
    unsigned generation = 0;
    NodeState state = NodeState::Fresh;
    PaletteColor color = PaletteColor::Gray;
    std::string parent;  // empty for the focus
    std::optional<MoreCursor> more;
    std::optional<Translation> translation;

    friend bool operator==(const ExplorerNode&, const ExplorerNode&) = default;
};

struct ExplorerEdge {
    std::string parent;
    std::string child;
    PaletteColor color = PaletteColor::Gray;

    friend bool operator==(const ExplorerEdge&, const ExplorerEdge&) = default;
};

/// Every node ever revealed since the last (re)center. Nodes below a
/// collapsed node stay in `nodes`/`edges` untouched and are simply not
/// visible, which is what keeps collapse/expand an exact round trip.
struct ExplorerGraph {
    std::string session_id;
    ConceptRef focus;
    LayoutMode mode = LayoutMode::Radial;
    std::vector<ExplorerNode> nodes;
    std::vector<ExplorerEdge> edges;  // a parent's children in display order
    std::map<std::string, Point> pinned;
    std::uint64_t next_key = 0;

    const ExplorerNode* find(std::string_view key) const noexcept;
    bool is_visible(std::string_view key) const;
    std::vector<const ExplorerNode*> visible_nodes() const;
    std::vector<const ExplorerEdge*> visible_edges() const;
    std::vector<const ExplorerNode*> children_of(std::string_view key) const;

    /// Structural equality ignoring the session id.
    bool same_structure(const ExplorerGraph& other) const;

    friend bool operator==(const ExplorerGraph&, const ExplorerGraph&) = default;
};

struct ExplorerOptions {
    std::size_t page_size = 6;
    std::string language = "zh";
    Canvas canvas;
};

/// Applies interaction events to explorer graphs over one taxonomy.
class Explorer {
public:
    Explorer(const Taxonomy& taxonomy, ExplorerOptions options)
        : taxonomy_(&taxonomy), options_(std::move(options)) {}

    const ExplorerOptions& options() const noexcept { return options_; }

    /// Throws WrongResultKind for Expansions and NotFound results.
    ExplorerGraph start_session(const ExpandResult& result, LayoutMode mode,
                                std::string session_id = {}) const;

    void click(ExplorerGraph& graph, std::string_view key) const;
    /// Consumes a MORE node; IllegalEvent for any other node.
    void more(ExplorerGraph& graph, std::string_view key) const;
    void double_click(ExplorerGraph& graph, std::string_view key) const;
    void set_mode(ExplorerGraph& graph, LayoutMode mode) const;
    void pin(ExplorerGraph& graph, std::string_view key, Point point) const;
    void unpin(ExplorerGraph& graph, std::string_view key) const;

    /// Visible graph as layout input; pins are passed only in force mode.
    LayoutInput layout_input(const ExplorerGraph& graph, std::uint64_t seed) const;

private:
    const ExplorerNode& visible_node(const ExplorerGraph& graph, std::string_view key) const;
    std::vector<ExplorerNode> page_nodes(ExplorerGraph& graph, const ExplorerNode& parent,
                                         Side side, unsigned generation, const ConceptPage& page,
                                         const ConceptId& source, ConceptList list) const;
    void consume_more(ExplorerGraph& graph, std::size_t index) const;

    const Taxonomy* taxonomy_;
    ExplorerOptions options_;
};

/// Empty when every structural and visual-state rule holds.
std::vector<std::string> check_invariants(const ExplorerGraph& graph);

/// LRU-bounded set of live sessions. Each session carries its own mutex so
/// events on one session apply one at a time while others proceed.
class SessionStore {
public:
    struct Session {
        std::mutex mutex;
        ExplorerGraph graph;
    };

    SessionStore(std::size_t capacity, std::uint64_t seed);

    /// Stores the graph under a fresh id (also written into graph.session_id).
    std::shared_ptr<Session> create(ExplorerGraph graph);
    std::shared_ptr<Session> find(std::string_view id);
    bool erase(std::string_view id);
    std::size_t size() const;
    std::size_t capacity() const noexcept { return capacity_; }

private:
    using Lru = std::list<std::string>;

    mutable std::mutex mutex_;
    std::size_t capacity_;
    SplitMix64 ids_;
    Lru lru_;  // most recent first
    std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, Lru::iterator>> sessions_;
};

}  // namespace scholarviz
