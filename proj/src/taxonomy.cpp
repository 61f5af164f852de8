#include "scholarviz/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scholarviz/error.hpp"

namespace scholarviz {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedRecord,
                "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> string_array(const json& record, const char* key, std::size_t line) {
    std::vector<std::string> out;
    auto it = record.find(key);
    if (it == record.end() || it->is_null()) return out;
    if (!it->is_array()) malformed(line, std::string("'") + key + "' must be an array");
    for (const auto& v : *it) {
        if (!v.is_string()) malformed(line, std::string("'") + key + "' must hold strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

struct RawRecord {
    Concept concept_;
    std::size_t line = 0;
};

RawRecord parse_record(const std::string& text, std::size_t line) {
    json record;
    try {
        record = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(line, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) malformed(line, "record must be a JSON object");

    RawRecord raw;
    raw.line = line;
    Concept& c = raw.concept_;

    auto id = record.find("id");
    if (id == record.end() || !id->is_string() || id->get<std::string>().empty())
        malformed(line, "missing or empty 'id'");
    c.id = ConceptId(id->get<std::string>());

    auto label = record.find("label");
    if (label == record.end() || !label->is_string() || label->get<std::string>().empty())
        malformed(line, "missing or empty 'label'");
    c.label = label->get<std::string>();

    for (auto& s : string_array(record, "super", line)) c.super_ids.emplace_back(std::move(s));
    c.expansions = string_array(record, "expansions", line);

    if (auto tr = record.find("translations"); tr != record.end() && !tr->is_null()) {
        if (!tr->is_object()) malformed(line, "'translations' must be an object");
        for (const auto& [lang, text] : tr->items()) {
            if (!text.is_string()) malformed(line, "translation values must be strings");
            c.translations.emplace(lang, text.get<std::string>());
        }
    }
    return raw;
}

}  // namespace

std::string fold_case(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
        return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : static_cast<char>(ch);
    });
    return out;
}

Taxonomy Taxonomy::load(std::istream& in) {
    Taxonomy tax;
    std::vector<std::size_t> lines;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
            continue;
        RawRecord raw = parse_record(text, line);
        Concept& c = raw.concept_;

        if (tax.by_id_.count(c.id))
            throw Error(ErrorCode::DuplicateId,
                        "line " + std::to_string(line) + ": duplicate id '" + c.id.value + "'");
        std::string folded = fold_case(c.label);
        if (tax.label_index_.count(folded))
            throw Error(ErrorCode::DuplicateLabel, "line " + std::to_string(line) +
                                                       ": duplicate label '" + c.label + "'");
        for (const auto& s : c.super_ids) {
            if (s == c.id)
                throw Error(ErrorCode::CycleDetected, "cycle detected: " + c.id.value + " -> " +
                                                          c.id.value);
        }
        std::vector<ConceptId> seen;
        for (const auto& s : c.super_ids) {
            if (std::find(seen.begin(), seen.end(), s) != seen.end())
                malformed(line, "super id '" + s.value + "' listed twice");
            seen.push_back(s);
        }

        tax.by_id_.emplace(c.id, tax.concepts_.size());
        tax.label_index_.emplace(std::move(folded), c.id);
        tax.concepts_.push_back(std::move(c));
        lines.push_back(line);
    }

    for (std::size_t i = 0; i < tax.concepts_.size(); ++i) {
        for (const auto& s : tax.concepts_[i].super_ids) {
            auto it = tax.by_id_.find(s);
            if (it == tax.by_id_.end())
                throw Error(ErrorCode::DanglingSuperReference,
                            "line " + std::to_string(lines[i]) + ": concept '" +
                                tax.concepts_[i].id.value + "' names unknown super '" + s.value +
                                "'");
            tax.concepts_[it->second].sub_ids.push_back(tax.concepts_[i].id);
        }
    }

    // Depth-first search over super edges; a grey node reached again closes a cycle.
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(tax.concepts_.size(), Mark::White);
    std::vector<std::size_t> path;
    struct Frame {
        std::size_t node;
        std::size_t next_edge;
    };
    for (std::size_t root = 0; root < tax.concepts_.size(); ++root) {
        if (mark[root] != Mark::White) continue;
        std::vector<Frame> stack{{root, 0}};
        mark[root] = Mark::Grey;
        path.assign(1, root);
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& supers = tax.concepts_[top.node].super_ids;
            if (top.next_edge == supers.size()) {
                mark[top.node] = Mark::Black;
                stack.pop_back();
                path.pop_back();
                continue;
            }
            std::size_t next = tax.by_id_.at(supers[top.next_edge++]);
            if (mark[next] == Mark::Grey) {
                auto start = std::find(path.begin(), path.end(), next);
                std::string cycle;
                for (auto p = start; p != path.end(); ++p)
                    cycle += tax.concepts_[*p].id.value + " -> ";
                cycle += tax.concepts_[next].id.value;
                throw Error(ErrorCode::CycleDetected, "cycle detected: " + cycle);
            }
            if (mark[next] == Mark::White) {
                mark[next] = Mark::Grey;
                path.push_back(next);
                stack.push_back({next, 0});
            }
        }
    }
    return tax;
}

Taxonomy Taxonomy::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open taxonomy file '" + path + "'");
    return load(in);
}

Taxonomy Taxonomy::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load(in);
}

void Taxonomy::write_jsonl(std::ostream& out) const {
    for (const auto& c : concepts_) {
        nlohmann::ordered_json record;
        record["id"] = c.id.value;
        record["label"] = c.label;
        auto& supers = record["super"] = nlohmann::ordered_json::array();
        for (const auto& s : c.super_ids) supers.push_back(s.value);
        if (!c.expansions.empty()) record["expansions"] = c.expansions;
        if (!c.translations.empty()) {
            auto& tr = record["translations"] = nlohmann::ordered_json::object();
            for (const auto& [lang, text] : c.translations) tr[lang] = text;
        }
        out << record.dump() << '\n';
    }
}

const Concept* Taxonomy::find(const ConceptId& id) const noexcept {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &concepts_[it->second];
}

const Concept& Taxonomy::at(const ConceptId& id) const {
    if (const Concept* c = find(id)) return *c;
    throw Error(ErrorCode::UnknownConcept, "unknown concept '" + id.value + "'");
}

std::optional<ConceptId> Taxonomy::lookup(std::string_view label) const {
    auto it = label_index_.find(fold_case(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

ConceptPage Taxonomy::supers(const ConceptId& id, std::size_t offset, std::size_t limit) const {
    return page_of(at(id).super_ids, offset, limit);
}

ConceptPage Taxonomy::subs(const ConceptId& id, std::size_t offset, std::size_t limit) const {
    return page_of(at(id).sub_ids, offset, limit);
}

ConceptPage Taxonomy::page_of(const std::vector<ConceptId>& list, std::size_t offset,
                              std::size_t limit) const {
    if (offset > list.size())
        throw Error(ErrorCode::OffsetOutOfRange, "offset " + std::to_string(offset) +
                                                     " beyond list of " +
                                                     std::to_string(list.size()));
    ConceptPage page;
    page.offset = offset;
    std::size_t end = offset + std::min(limit, list.size() - offset);
    for (std::size_t i = offset; i < end; ++i) {
        const Concept& c = concepts_[by_id_.at(list[i])];
        page.items.push_back({c.id, c.label});
    }
    page.remaining = list.size() - end;
    return page;
}

}  // namespace scholarviz
