#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace props {

// Seed of the acceptance gate; suite i uses kSeed + i.
inline constexpr std::uint64_t kSeed = 0x5eed2024;

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::vector<std::string> examples;   // first few violations, for the log
    bool ok() const { return cases > 0 && violations == 0; }
};

// π via the submultiset table against all orderings; |S| ≤ 7 over groups of order ≤ 8.
SuiteResult product_set_vs_permutations(std::uint64_t seed, std::size_t cases);
// is_atom against every bipartition; |S| ≤ 7.
SuiteResult atom_vs_bipartitions(std::uint64_t seed, std::size_t cases);
// length_set against naive factorization; |S| ≤ 8.
SuiteResult lengths_vs_factorizations(std::uint64_t seed, std::size_t cases);
// S ~ S' implies S·T ~ S'·T, and the table agrees with direct comparison.
SuiteResult class_congruence(std::uint64_t seed, std::size_t cases);
// A pair never has both a separating witness and equal completion data; equal verdicts keep π.
SuiteResult witness_invariant_consistency(std::uint64_t seed, std::size_t cases);

}  // namespace props
