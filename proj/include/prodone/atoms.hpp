#pragma once

#include <optional>
#include <vector>

#include "prodone/budget.hpp"
#include "prodone/sequence.hpp"

namespace prodone {

struct AtomSet {
    GroupPtr group;
    std::size_t max_len = 0;
    ElementSet allowed;            // supports are restricted to this subset
    std::vector<Sequence> atoms;   // sorted by (length, lexicographic)

    std::size_t max_length() const { return atoms.empty() ? 0 : atoms.back().length(); }
    std::vector<Sequence> of_length(std::size_t len) const;
    bool contains(const Sequence& s) const;
};

struct DavenportReport {
    GroupPtr group;
    std::size_t large = 0;
    std::size_t small = 0;
    Sequence witness_atom;   // lexicographically least atom of length D(G)
    Sequence witness_free;   // lexicographically least product-one free sequence of length d(G)
};

bool is_atom(const Sequence& s, std::size_t max_states = kDefaultStates);
bool has_proper_product_one_subsequence(const Sequence& s, std::size_t max_states = kDefaultStates);

// Every atom with support in `allowed` (default: all of G) and length ≤ max_len.
AtomSet enumerate_atoms(const GroupPtr& g, std::size_t max_len, const Budget& budget = {},
                        std::optional<ElementSet> allowed = std::nullopt);

DavenportReport large_davenport(const GroupPtr& g, const Budget& budget = {});
DavenportReport small_davenport(const GroupPtr& g, const Budget& budget = {});
DavenportReport davenport(const GroupPtr& g, const Budget& budget = {});

// Depth-first search for a product-one free sequence of length `target`; nullopt if none
// exists or the node budget runs out first (`exhausted` tells which).
std::optional<Sequence> find_product_one_free(const GroupPtr& g, std::size_t target, std::size_t max_nodes,
                                              bool* exhausted = nullptr);

}  // namespace prodone
