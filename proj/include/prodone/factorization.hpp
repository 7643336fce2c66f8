#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prodone/atoms.hpp"

namespace prodone {

class LengthSet {
public:
    LengthSet() = default;
    explicit LengthSet(std::uint64_t mask) : mask_(mask) {}
    LengthSet(std::initializer_list<std::size_t> xs);

    bool contains(std::size_t k) const { return k < 64 && ((mask_ >> k) & 1u); }
    bool empty() const { return mask_ == 0; }
    std::size_t min() const;
    std::size_t max() const;
    std::vector<std::size_t> values() const;
    std::uint64_t mask() const { return mask_; }
    bool includes(const LengthSet& o) const { return (o.mask_ & ~mask_) == 0; }
    bool is_interval() const;
    // Successive differences, Δ(L).
    std::set<std::size_t> distances() const;
    std::string to_string() const;

    friend bool operator==(const LengthSet&, const LengthSet&) = default;
    friend bool operator<(const LengthSet& a, const LengthSet& b) { return a.mask_ < b.mask_; }

private:
    std::uint64_t mask_ = 0;
};

// L(S) for a product-one sequence of length below 64.
LengthSet length_set(const Sequence& s, std::size_t max_states = kDefaultStates);

// L(T) for every product-one submultiset T of s, sharing one table. Keyed by the table state.
class SubmultisetLengths {
public:
    SubmultisetLengths(const Sequence& s, std::size_t max_states = kDefaultStates);
    const SubmultisetTable& table() const { return table_; }
    const LengthSet& at(std::size_t state) const { return lengths_[state]; }
    bool atom(std::size_t state) const { return atom_[state]; }
    const LengthSet& full() const { return lengths_.back(); }

private:
    SubmultisetTable table_;
    std::vector<LengthSet> lengths_;
    std::vector<char> atom_;
};

struct ProductLengths {
    Sequence product;
    LengthSet lengths;
};

// L(U·V) for all unordered pairs of atoms, deduplicated by product and sorted.
std::vector<ProductLengths> two_atom_products(const AtomSet& atoms, std::size_t max_pairs = 5'000'000);

struct TwoDMembership {
    bool member = false;
    std::optional<Sequence> witness;   // S = U·V with L(S) = {2, D(G)}
    std::optional<std::pair<Sequence, Sequence>> factors;
    std::size_t checked = 0;           // products examined
};

// Decides {2, D(G)} ∈ L(G); `atoms` must be complete. Such an S is U·V with |U| = |V| = D(G).
// For abelian G an atom of length D(G) holds no pair g·g^{-1}, so V = U^{-1} and the
// D(G)-atom list suffices; otherwise every pair of those atoms is examined.
TwoDMembership check_2D_membership(const AtomSet& atoms, std::size_t max_pairs = 5'000'000);

struct Rho2 {
    std::size_t value = 0;
    bool exhaustive = false;   // false: value certified by a witness pair and the length bound
    std::optional<ProductLengths> witness;
};

// ρ_2(G) = max ∪{L : 2 ∈ L}; atoms must be complete.
Rho2 rho2(const AtomSet& atoms, std::size_t max_pairs = 5'000'000);

struct ArithmeticReport {
    GroupPtr group;
    std::size_t max_seq_len = 0;
    std::size_t max_k = 0;
    std::vector<ProductLengths> system;
    std::set<std::size_t> delta;
    std::map<std::size_t, LengthSet> unions;
    std::map<std::size_t, std::size_t> rho;
    std::map<std::size_t, bool> exact;   // U_k computed from every k-fold product
};

ArithmeticReport arithmetic_report(const GroupPtr& g, std::size_t max_seq_len, std::size_t max_k,
                                   const Budget& budget = {});

struct UniversalWitness {
    std::size_t y = 0, k = 0;
    LengthSet target;
    std::optional<Sequence> witness;
    std::string method;   // "cyclic", "klein", "search", or empty when none was found
};

// For every y + 2k + [0,k] with k ≥ 1 and max element ≤ bound, a witness S with exactly that
// length set, of length at most len_cap.
std::vector<UniversalWitness> universal_length_sets(const GroupPtr& g, std::size_t bound, std::size_t len_cap = 10);

// Finds a witness for one target set: constructive recipe first, then a shortest-first search.
UniversalWitness universal_witness(const GroupPtr& g, std::size_t y, std::size_t k, std::size_t len_cap);

// Product-one sequences of length exactly len, in lexicographic order.
void for_each_product_one(const GroupPtr& g, std::size_t len, const std::function<bool(const Sequence&)>& visit);

}  // namespace prodone
