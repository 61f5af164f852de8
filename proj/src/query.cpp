#include "scholarviz/query.hpp"

#include "scholarviz/error.hpp"

namespace scholarviz {

namespace {

ExpandResult classify(const Concept& c, const Taxonomy& taxonomy, const QueryOptions& options,
                      bool allow_expansions) {
    ExpandResult result;
    result.focus = ConceptRef{c.id, c.label};

    if (allow_expansions && !c.expansions.empty()) {
        result.kind = ResultKind::Expansions;
        for (const auto& label : c.expansions)
            result.expansions.push_back({label, taxonomy.lookup(label)});
        return result;
    }

    if (!c.sub_ids.empty()) {
        result.kind = ResultKind::Concept;
        result.supers = taxonomy.supers(c.id, 0, options.page_size);
        result.subs = taxonomy.subs(c.id, 0, options.page_size);
        return result;
    }
    if (!c.super_ids.empty()) {
        result.kind = ResultKind::SupersOnly;
        result.supers = taxonomy.supers(c.id, 0, options.page_size);
        return result;
    }
    if (!c.translations.empty()) {
        result.kind = ResultKind::TranslationOnly;
        auto it = c.translations.find(options.language);
        if (it == c.translations.end()) it = c.translations.begin();
        result.translation = Translation{it->first, it->second};
        return result;
    }
    // Isolated concept: nothing to show around it, but it still exists.
    result.kind = ResultKind::Concept;
    return result;
}

ExpandResult not_found(std::string_view label) {
    ExpandResult result;
    result.kind = ResultKind::NotFound;
    result.query = std::string(label);
    return result;
}

}  // namespace

std::string_view result_kind_name(ResultKind kind) noexcept {
    switch (kind) {
        case ResultKind::Expansions: return "expansions";
        case ResultKind::Concept: return "concept";
        case ResultKind::SupersOnly: return "supers_only";
        case ResultKind::TranslationOnly: return "translation_only";
        case ResultKind::NotFound: return "not_found";
    }
    return "not_found";
}

std::string_view trim(std::string_view text) noexcept {
    constexpr std::string_view ws = " \t\r\n\f\v";
    auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

ExpandResult expand_query(std::string_view q, const Taxonomy& taxonomy,
                          const QueryOptions& options) {
    std::string_view query = trim(q);
    if (query.empty()) throw Error(ErrorCode::EmptyQuery, "query is empty");
    auto id = taxonomy.lookup(query);
    if (!id) return not_found(query);
    ExpandResult result = classify(taxonomy.at(*id), taxonomy, options, true);
    result.query = std::string(query);
    return result;
}

ExpandResult resolve_expansion(std::string_view choice, const Taxonomy& taxonomy,
                               const QueryOptions& options) {
    std::string_view label = trim(choice);
    if (label.empty()) throw Error(ErrorCode::EmptyQuery, "expansion choice is empty");
    auto id = taxonomy.lookup(label);
    if (!id) return not_found(label);
    ExpandResult result = classify(taxonomy.at(*id), taxonomy, options, false);
    result.query = std::string(label);
    return result;
}

ExpandResult expand_concept(const ConceptId& id, const Taxonomy& taxonomy,
                            const QueryOptions& options) {
    const Concept& c = taxonomy.at(id);
    ExpandResult result = classify(c, taxonomy, options, false);
    result.query = c.label;
    return result;
}

std::vector<std::string> check_invariants(const ExpandResult& r) {
    std::vector<std::string> problems;
    auto require = [&](bool ok, const char* what) {
        if (!ok) problems.emplace_back(what);
    };
    switch (r.kind) {
        case ResultKind::Expansions:
            require(!r.expansions.empty(), "expansions result without candidates");
            require(r.supers.empty() && r.subs.empty(), "expansions result carries pages");
            break;
        case ResultKind::Concept:
            require(r.focus.has_value(), "concept result without focus");
            require(r.expansions.empty(), "concept result carries expansions");
            break;
        case ResultKind::SupersOnly:
            require(r.focus.has_value(), "supers-only result without focus");
            require(r.subs.empty(), "supers-only result has subs");
            require(!r.supers.empty(), "supers-only result has no supers");
            break;
        case ResultKind::TranslationOnly:
            require(r.focus.has_value(), "translation-only result without focus");
            require(r.supers.empty() && r.subs.empty(), "translation-only result carries pages");
            require(r.translation.has_value(), "translation-only result without translation");
            break;
        case ResultKind::NotFound:
            require(!r.focus.has_value(), "not-found result has a focus");
            require(r.supers.empty() && r.subs.empty() && r.expansions.empty(),
                    "not-found result carries data");
            break;
    }
    return problems;
}

}  // namespace scholarviz
