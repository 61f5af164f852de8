#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scholarviz {

/// Opaque, case-preserving identifier of a taxonomy concept.
struct ConceptId {
    std::string value;

    ConceptId() = default;
    explicit ConceptId(std::string v) : value(std::move(v)) {}

    friend auto operator<=>(const ConceptId&, const ConceptId&) = default;
};

struct ConceptIdHash {
    std::size_t operator()(const ConceptId& id) const noexcept {
        return std::hash<std::string>{}(id.value);
    }
};

struct Concept {
    ConceptId id;
    std::string label;
    std::vector<ConceptId> super_ids;  // file order
    std::vector<ConceptId> sub_ids;    // derived, in file order of the children
    std::vector<std::string> expansions;
    std::map<std::string, std::string> translations;  // language code -> text
};

struct ConceptRef {
    ConceptId id;
    std::string label;

    friend bool operator==(const ConceptRef&, const ConceptRef&) = default;
};

/// One page of a super/sub list. `offset` is where the page starts in the
/// stored list; `remaining` counts entries after the page.
struct ConceptPage {
    std::vector<ConceptRef> items;
    std::size_t offset = 0;
    std::size_t remaining = 0;

    bool empty() const noexcept { return items.empty(); }
    friend bool operator==(const ConceptPage&, const ConceptPage&) = default;
};

/// ASCII case fold used for every label comparison in the system.
std::string fold_case(std::string_view text);

/// Immutable IS-A taxonomy. Built once by `load`; all accessors are const.
class Taxonomy {
public:
    Taxonomy() = default;

    /// Reads JSON-Lines concept records. Throws scholarviz::Error with one of
    /// MalformedRecord, DuplicateId, DuplicateLabel, DanglingSuperReference or
    /// CycleDetected. Blank lines are ignored.
    static Taxonomy load(std::istream& in);
    static Taxonomy load_file(const std::string& path);
    static Taxonomy parse(std::string_view text);

    /// Writes the taxonomy back as JSON-Lines in load order.
    void write_jsonl(std::ostream& out) const;

    std::size_t size() const noexcept { return concepts_.size(); }
    bool empty() const noexcept { return concepts_.empty(); }

    /// Concepts in file order.
    const std::vector<Concept>& concepts() const noexcept { return concepts_; }

    const Concept* find(const ConceptId& id) const noexcept;
    const Concept& at(const ConceptId& id) const;  // throws UnknownConcept

    /// Case-insensitive exact label match.
    std::optional<ConceptId> lookup(std::string_view label) const;

    ConceptPage supers(const ConceptId& id, std::size_t offset, std::size_t limit) const;
    ConceptPage subs(const ConceptId& id, std::size_t offset, std::size_t limit) const;

private:
    ConceptPage page_of(const std::vector<ConceptId>& list, std::size_t offset,
                        std::size_t limit) const;

    std::vector<Concept> concepts_;
    std::unordered_map<ConceptId, std::size_t, ConceptIdHash> by_id_;
    std::unordered_map<std::string, ConceptId> label_index_;
};

}  // namespace scholarviz
