#include "scholarviz/fixtures.hpp"

namespace scholarviz::fixtures {

Taxonomy taxonomy() { return Taxonomy::parse(taxonomy_jsonl()); }

std::vector<std::string> keyword_labels(const Taxonomy& taxonomy) {
    std::vector<std::string> labels;
    for (const auto& c : taxonomy.concepts())
        if (c.expansions.empty()) labels.push_back(c.label);
    return labels;
}

std::vector<ScholarRecord> scholars(std::uint64_t seed, std::size_t count) {
    return generate_scholars(keyword_labels(taxonomy()), count, seed);
}

}  // namespace scholarviz::fixtures
