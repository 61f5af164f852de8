#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scholarviz {

struct KeywordWeight {
    std::string label;  // case-folded
    double weight = 0.0;

    friend bool operator==(const KeywordWeight&, const KeywordWeight&) = default;
};

struct ScholarRecord {
    std::string id;
    std::string name;
    std::string affiliation;
    std::vector<KeywordWeight> keywords;
    std::uint64_t citations = 0;
    std::uint64_t paper_count = 0;

    /// Weight for a case-folded keyword, 0 when absent.
    double weight_of(std::string_view folded_label) const noexcept;

    friend bool operator==(const ScholarRecord&, const ScholarRecord&) = default;
};

enum class KeywordMatch { Any, All };

struct ScholarQuery {
    std::vector<std::string> keywords;
    std::size_t offset = 0;
    std::size_t limit = 20;
    KeywordMatch match = KeywordMatch::Any;
};

struct ScoredScholar {
    const ScholarRecord* scholar = nullptr;
    double score = 0.0;
};

struct SearchPage {
    std::vector<ScoredScholar> results;
    std::size_t total = 0;
};

/// Ranking order: score desc, citations desc, name asc, id asc.
bool ranks_before(const ScoredScholar& a, const ScoredScholar& b) noexcept;

/// Immutable keyword -> scholar inverted index.
class ScholarIndex {
public:
    ScholarIndex() = default;

    /// JSON-Lines scholar records. Throws MalformedRecord or DuplicateScholarId.
    static ScholarIndex load(std::istream& in);
    static ScholarIndex load_file(const std::string& path);
    static ScholarIndex parse(std::string_view text);

    void write_jsonl(std::ostream& out) const;

    const std::vector<ScholarRecord>& scholars() const noexcept { return scholars_; }
    std::size_t size() const noexcept { return scholars_.size(); }

    /// Distinct keyword labels in first-seen order.
    const std::vector<std::string>& keywords() const noexcept { return keyword_order_; }

    struct Posting {
        std::size_t scholar;
        double weight;
    };
    const std::vector<Posting>& postings(std::string_view label) const;

    /// Additive score over the query keywords; only positive scores match.
    /// Throws InvalidQuery when the query has no keywords or limit is 0.
    SearchPage search(const ScholarQuery& query) const;

private:
    std::vector<ScholarRecord> scholars_;
    std::vector<std::string> keyword_order_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

/// Deterministic synthetic corpus drawn from the given keyword labels.
std::vector<ScholarRecord> generate_scholars(const std::vector<std::string>& keyword_labels,
                                             std::size_t count, std::uint64_t seed);

void write_scholars_jsonl(const std::vector<ScholarRecord>& scholars, std::ostream& out);

}  // namespace scholarviz
