#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholarviz/taxonomy.hpp"

namespace scholarviz {

enum class ResultKind { Expansions, Concept, SupersOnly, TranslationOnly, NotFound };

std::string_view result_kind_name(ResultKind kind) noexcept;

struct ExpansionCandidate {
    std::string label;
    std::optional<ConceptId> concept_id;  // set when the full term is itself in the taxonomy

    friend bool operator==(const ExpansionCandidate&, const ExpansionCandidate&) = default;
};

struct Translation {
    std::string language;
    std::string text;

    friend bool operator==(const Translation&, const Translation&) = default;
};

/// What a keyword query yields. Exactly one kind; see `check_invariants`.
struct ExpandResult {
    ResultKind kind = ResultKind::NotFound;
    std::string query;  // trimmed query text, echoed back
    std::optional<ConceptRef> focus;
    std::vector<ExpansionCandidate> expansions;
    ConceptPage supers;
    ConceptPage subs;
    std::optional<Translation> translation;

    friend bool operator==(const ExpandResult&, const ExpandResult&) = default;
};

struct QueryOptions {
    std::size_t page_size = 6;
    std::string language = "zh";
};

/// Classifies a raw keyword: abbreviation expansions first, then a full
/// concept (has subs), supers only, translation only, or not found.
/// Throws EmptyQuery when `q` is blank after trimming.
ExpandResult expand_query(std::string_view q, const Taxonomy& taxonomy,
                          const QueryOptions& options = {});

/// Same classification for a label picked from an Expansions result, but
/// never yields Expansions again. Labels outside the taxonomy come back as
/// NotFound with the label echoed.
ExpandResult resolve_expansion(std::string_view choice, const Taxonomy& taxonomy,
                               const QueryOptions& options = {});

/// Classification of a known concept without the expansion step.
ExpandResult expand_concept(const ConceptId& id, const Taxonomy& taxonomy,
                            const QueryOptions& options = {});

/// Empty when the result satisfies its kind's shape rules.
std::vector<std::string> check_invariants(const ExpandResult& result);

std::string_view trim(std::string_view text) noexcept;

}  // namespace scholarviz
