#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scholarviz/scholars.hpp"
#include "scholarviz/taxonomy.hpp"

namespace scholarviz::fixtures {

/// The shipped desk-scale taxonomy (data/taxonomy.jsonl), compiled in.
std::string_view taxonomy_jsonl() noexcept;
Taxonomy taxonomy();

/// Labels of every non-abbreviation concept, in file order.
std::vector<std::string> keyword_labels(const Taxonomy& taxonomy);

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultScholarCount = 200;

/// The synthetic scholar corpus shipped as data/scholars.jsonl.
std::vector<ScholarRecord> scholars(std::uint64_t seed = kDefaultSeed,
                                    std::size_t count = kDefaultScholarCount);

}  // namespace scholarviz::fixtures
