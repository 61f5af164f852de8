#include "scholarviz/scholars.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scholarviz/error.hpp"
#include "scholarviz/layout.hpp"
#include "scholarviz/taxonomy.hpp"

namespace scholarviz {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line) + ": " + what);
}

std::string required_string(const json& record, const char* key, std::size_t line,
                            bool allow_empty) {
    auto it = record.find(key);
    if (it == record.end() || !it->is_string())
        malformed(line, std::string("missing string field '") + key + "'");
    std::string value = it->get<std::string>();
    if (!allow_empty && value.empty()) malformed(line, std::string("empty '") + key + "'");
    return value;
}

std::uint64_t count_field(const json& record, const char* key, std::size_t line) {
    auto it = record.find(key);
    if (it == record.end()) return 0;
    bool negative = it->is_number_integer() && !it->is_number_unsigned() &&
                    it->get<std::int64_t>() < 0;
    if (!it->is_number_integer() || negative)
        malformed(line, std::string("'") + key + "' must be a non-negative integer");
    return it->get<std::uint64_t>();
}

ScholarRecord parse_scholar(const std::string& text, std::size_t line) {
    json record;
    try {
        record = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(line, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) malformed(line, "record must be a JSON object");

    ScholarRecord s;
    s.id = required_string(record, "id", line, false);
    s.name = required_string(record, "name", line, false);
    s.affiliation = record.contains("affiliation")
                        ? required_string(record, "affiliation", line, true)
                        : std::string();
    s.citations = count_field(record, "citations", line);
    s.paper_count = count_field(record, "paper_count", line);

    auto kws = record.find("keywords");
    if (kws != record.end()) {
        if (!kws->is_array()) malformed(line, "'keywords' must be an array");
        for (const auto& kw : *kws) {
            if (!kw.is_object() || !kw.contains("label") || !kw["label"].is_string() ||
                !kw.contains("weight") || !kw["weight"].is_number())
                malformed(line, "keywords must be {label, weight} objects");
            double weight = kw["weight"].get<double>();
            if (!std::isfinite(weight) || weight < 0.0)
                malformed(line, "keyword weight must be finite and non-negative");
            std::string label = fold_case(kw["label"].get<std::string>());
            if (label.empty()) malformed(line, "empty keyword label");
            for (const auto& existing : s.keywords)
                if (existing.label == label) malformed(line, "keyword '" + label + "' repeated");
            s.keywords.push_back({std::move(label), weight});
        }
    }
    return s;
}

}  // namespace

double ScholarRecord::weight_of(std::string_view folded_label) const noexcept {
    for (const auto& kw : keywords)
        if (kw.label == folded_label) return kw.weight;
    return 0.0;
}

bool ranks_before(const ScoredScholar& a, const ScoredScholar& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    if (a.scholar->citations != b.scholar->citations)
        return a.scholar->citations > b.scholar->citations;
    if (a.scholar->name != b.scholar->name) return a.scholar->name < b.scholar->name;
    return a.scholar->id < b.scholar->id;
}

ScholarIndex ScholarIndex::load(std::istream& in) {
    ScholarIndex index;
    std::unordered_map<std::string, std::size_t> ids;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
            continue;
        ScholarRecord s = parse_scholar(text, line);
        if (!ids.emplace(s.id, index.scholars_.size()).second)
            throw Error(ErrorCode::DuplicateScholarId,
                        "line " + std::to_string(line) + ": duplicate scholar id '" + s.id + "'");
        const std::size_t pos = index.scholars_.size();
        for (const auto& kw : s.keywords) {
            auto [it, inserted] = index.postings_.try_emplace(kw.label);
            if (inserted) index.keyword_order_.push_back(kw.label);
            it->second.push_back({pos, kw.weight});
        }
        index.scholars_.push_back(std::move(s));
    }
    return index;
}

ScholarIndex ScholarIndex::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open scholars file '" + path + "'");
    return load(in);
}

ScholarIndex ScholarIndex::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load(in);
}

void ScholarIndex::write_jsonl(std::ostream& out) const { write_scholars_jsonl(scholars_, out); }

const std::vector<ScholarIndex::Posting>& ScholarIndex::postings(std::string_view label) const {
    static const std::vector<Posting> none;
    auto it = postings_.find(fold_case(label));
    return it == postings_.end() ? none : it->second;
}

SearchPage ScholarIndex::search(const ScholarQuery& query) const {
    if (query.keywords.empty())
        throw Error(ErrorCode::InvalidQuery, "scholar query needs at least one keyword");
    if (query.limit == 0) throw Error(ErrorCode::InvalidQuery, "scholar query limit must be >= 1");

    std::vector<double> score(scholars_.size(), 0.0);
    std::vector<std::size_t> hits(scholars_.size(), 0);
    std::vector<std::string> distinct;
    for (const auto& raw : query.keywords) {
        std::string label = fold_case(raw);
        auto it = postings_.find(label);
        if (it != postings_.end())
            for (const auto& p : it->second) score[p.scholar] += p.weight;
        if (std::find(distinct.begin(), distinct.end(), label) == distinct.end()) {
            distinct.push_back(label);
            if (it != postings_.end())
                for (const auto& p : it->second)
                    if (p.weight > 0.0) ++hits[p.scholar];
        }
    }

    std::vector<ScoredScholar> matched;
    for (std::size_t i = 0; i < scholars_.size(); ++i) {
        if (!(score[i] > 0.0)) continue;
        if (query.match == KeywordMatch::All && hits[i] != distinct.size()) continue;
        matched.push_back({&scholars_[i], score[i]});
    }
    std::sort(matched.begin(), matched.end(), ranks_before);

    SearchPage page;
    page.total = matched.size();
    if (query.offset < matched.size()) {
        auto first = matched.begin() + static_cast<std::ptrdiff_t>(query.offset);
        auto last = first + static_cast<std::ptrdiff_t>(
                                std::min(query.limit, matched.size() - query.offset));
        page.results.assign(first, last);
    }
    return page;
}

void write_scholars_jsonl(const std::vector<ScholarRecord>& scholars, std::ostream& out) {
    for (const auto& s : scholars) {
        nlohmann::ordered_json record;
        record["id"] = s.id;
        record["name"] = s.name;
        record["affiliation"] = s.affiliation;
        auto& kws = record["keywords"] = nlohmann::ordered_json::array();
        for (const auto& kw : s.keywords) kws.push_back({{"label", kw.label}, {"weight", kw.weight}});
        record["citations"] = s.citations;
        record["paper_count"] = s.paper_count;
        out << record.dump() << '\n';
    }
}

std::vector<ScholarRecord> generate_scholars(const std::vector<std::string>& keyword_labels,
                                             std::size_t count, std::uint64_t seed) {
    static constexpr const char* given[] = {"Wei",  "Li",    "Anna",  "Jun",   "Maria", "Omar",
                                            "Yuki", "Chen",  "Sofia", "Ravi",  "Elena", "Tom",
                                            "Hana", "Lukas", "Mei",   "Pedro"};
    static constexpr const char* family[] = {"Zhang", "Wang",   "Liu",    "Garcia", "Kim",
                                             "Tanaka", "Muller", "Rossi",  "Singh",  "Novak",
                                             "Chen",  "Silva"};
    static constexpr const char* places[] = {"Tsinghua University", "Peking University",
                                             "ETH Zurich",          "MIT",
                                             "University of Tokyo", "TU Munich",
                                             "Stanford University", "KAIST"};
    static constexpr double weights[] = {0.25, 0.5, 0.75, 1.0};

    std::vector<ScholarRecord> out;
    if (keyword_labels.empty()) return out;
    SplitMix64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.next() % n); };

    for (std::size_t i = 0; i < count; ++i) {
        ScholarRecord s;
        char id[32];
        std::snprintf(id, sizeof id, "s%04zu", i + 1);
        s.id = id;
        s.name = std::string(given[pick(std::size(given))]) + " " + family[pick(std::size(family))];
        s.affiliation = places[pick(std::size(places))];
        std::size_t n_keywords = 1 + pick(std::min<std::size_t>(4, keyword_labels.size()));
        while (s.keywords.size() < n_keywords) {
            std::string label = fold_case(keyword_labels[pick(keyword_labels.size())]);
            bool seen = std::any_of(s.keywords.begin(), s.keywords.end(),
                                    [&](const KeywordWeight& kw) { return kw.label == label; });
            if (!seen) s.keywords.push_back({label, weights[pick(std::size(weights))]});
        }
        // Coarse citation buckets so equal scores also tie on citations now and then.
        s.citations = 50 * pick(40);
        s.paper_count = 1 + pick(300);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace scholarviz
