#pragma once

#include <cstddef>

namespace prodone {

struct Budget {
    std::size_t max_group_order = 256;      // descriptor construction
    std::size_t max_states = 1u << 24;      // submultiset DP entries per table
    std::size_t max_nodes = 200'000'000;    // DFS nodes per enumeration
    std::size_t max_atom_order = 16;        // full non-abelian atom enumeration
    std::size_t max_free_order = 32;        // exhaustive d(G) search
    std::size_t max_subgroup_order = 64;
    std::size_t max_class_order = 10;       // exact class semigroup construction
    std::size_t max_basis = 4096;           // completion basis size per class
    std::size_t max_classes = 20000;
    std::size_t max_products = 2'000'000;   // distinct k-fold atom products
};

}  // namespace prodone
