#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "prodone/atoms.hpp"
#include "prodone/budget.hpp"
#include "prodone/sequence.hpp"

namespace prodone {

using ClassId = std::uint32_t;

inline constexpr std::size_t kMaxClassGroupOrder = 16;

// Dense multiset over a group of order at most 16.
struct Multiset {
    std::array<std::uint8_t, kMaxClassGroupOrder> c{};
    std::uint16_t len = 0;
    friend bool operator==(const Multiset&, const Multiset&) = default;
};

// Shorter first; equal lengths compare lexicographically on the sorted element list.
bool canonical_less(const Multiset& a, const Multiset& b);

// A completion basis: the ≤_H-minimal T with S·T product-one, where T ≤_H T' means
// T | T' and T'·T^{-1} is product-one. Two sequences are equivalent iff their bases agree.
using Basis = std::vector<Multiset>;

// Computes completion bases term by term. Holds the atoms of G and a product-one memo;
// not thread-safe.
class CompletionEngine {
public:
    CompletionEngine(GroupPtr g, const Budget& budget = {});

    const GroupPtr& group() const { return group_; }
    std::size_t davenport() const { return davenport_; }
    std::size_t atom_count() const { return atom_count_; }

    Multiset to_multiset(const Sequence& s) const;
    Sequence to_sequence(const Multiset& m) const;

    bool accepts(const Multiset& m);
    bool below(const Multiset& a, const Multiset& b);   // a ≤_H b
    Basis empty_basis() const { return {Multiset{}}; }
    // Basis of S·g from the basis of S.
    Basis step(const Basis& b, Element g);
    Basis basis(const Sequence& s);

    void set_max_basis(std::size_t n) { max_basis_ = n; }

private:
    Basis minimize(Basis cand);

    GroupPtr group_;
    std::size_t davenport_ = 0;
    std::size_t max_basis_;
    std::size_t atom_count_ = 0;
    std::vector<Basis> single_;   // basis of each one-term sequence
    // Open-addressing memo for accepts(): slot state 0 = empty, 1 = rejected, 2 = accepted.
    struct Slot {
        std::array<std::uint8_t, kMaxClassGroupOrder> key;
        std::uint8_t state;
    };
    std::vector<Slot> memo_;
    std::size_t memo_used_ = 0;
    std::vector<std::array<std::uint16_t, 256>> class_power_;   // abelianization class of g^k
    void grow_memo();
};

enum class Verdict { equal, distinct, unknown };
const char* to_string(Verdict v);

struct ClassComparison {
    Verdict verdict = Verdict::unknown;
    std::optional<Sequence> witness;   // exactly one of S·T, S'·T is product-one
    std::string method;                // "completion-basis", "witness-search", "cap-exhausted"
    std::size_t basis_size = 0;        // |basis(S)| when compared by basis
    std::size_t witness_bound = 0;     // a distinguishing T, if any, is at most this long
};

// Decides S ~ S'. Tries completion bases (doubling the basis budget on overflow), then a
// bounded witness search over supp(S) ∪ supp(S') ∪ G.
ClassComparison classes_equal(const Sequence& s, const Sequence& t, const Budget& budget = {});
ClassComparison classes_equal(CompletionEngine& engine, const Sequence& s, const Sequence& t,
                              std::size_t escalations = 3);

// S·T product-one for exactly one of the two.
bool separates(const Sequence& s, const Sequence& t, const Sequence& witness);

struct ClassResolution {
    std::string method;      // "completion-basis" or "abelian"
    std::size_t basis_size = 0;
};

struct ClassSemigroup {
    GroupPtr group;
    std::vector<Sequence> reps;                 // shortest, then lexicographically least
    std::vector<std::vector<ClassId>> add;
    ClassId identity = 0;
    std::vector<ClassId> generator_map;         // g ↦ [g]
    std::vector<char> accepting;                // class consists of product-one sequences
    std::vector<ClassResolution> resolution;

    std::size_t size() const { return reps.size(); }
    ClassId sum(ClassId a, ClassId b) const { return add[a][b]; }
    ClassId class_of(const Sequence& s) const;
};

// `general` skips the abelian fast path and runs the completion-basis closure.
enum class ClassBuild { automatic, general };

ClassSemigroup build_class_semigroup(const GroupPtr& g, const Budget& budget = {},
                                     ClassBuild mode = ClassBuild::automatic);

struct IdempotentLattice {
    std::vector<ClassId> idempotents;          // ascending ClassId
    std::vector<std::vector<char>> rees_leq;   // [i][j]: idempotents[i] ≤ idempotents[j]
    ClassId smallest = 0, greatest = 0;

    std::size_t index(ClassId e) const;
    bool leq(ClassId e, ClassId f) const { return rees_leq[index(e)][index(f)]; }
};

IdempotentLattice idempotent_lattice(const ClassSemigroup& c);

struct HClass {
    ClassId idempotent = 0;
    std::vector<ClassId> members;
    std::vector<std::vector<std::size_t>> table;   // indices into members
};

struct HClassPartition {
    std::vector<HClass> classes;
    std::vector<ClassId> unassigned;   // non-regular classes
};

HClassPartition h_classes(const ClassSemigroup& c);
bool is_clifford(const ClassSemigroup& c);

// A multiplication table, as the abstract group it forms (verified).
GroupPtr as_group(const HClass& h, const ClassSemigroup& c);

struct SeminormalityResult {
    bool pass = true;
    std::optional<Sequence> counterexample;   // T ∉ B(G) with T^[2], T^[3] ∈ B(G)
    std::size_t checked = 0;
};

bool is_seminormality_counterexample(const Sequence& t);
SeminormalityResult is_seminormal_bounded(const GroupPtr& g, std::size_t len_cap);

struct DivisorResult {
    bool pass = true;
    std::optional<std::pair<Sequence, Sequence>> counterexample;   // (S, T)
    std::size_t checked = 0;
};

// S, T product-one, S | T, T·S^{-1} not product-one.
bool is_divisor_counterexample(const Sequence& s, const Sequence& t);
DivisorResult divisor_homomorphism_check(const GroupPtr& g, std::size_t len_cap);

struct CosetMap {
    ClassId idempotent = 0;
    Sequence maximal_rep;                 // S_0 with [S_0] = e and maximal ⟨supp⟩
    ElementSet g0;                        // ⟨supp(S_0)⟩
    ElementSet g0_derived;                // G_0'
    std::vector<ClassId> members;         // H(e)
    std::vector<ElementSet> cosets;       // π(rep) per member, each a G_0'-coset
    bool injective = false;
    bool surjective = false;              // onto G_0/G_0'
};

CosetMap coset_map(const ClassSemigroup& c, const HClassPartition& h, ClassId e);

struct PonizovskyReport {
    std::vector<ClassId> idempotents;
    std::vector<std::vector<ClassId>> ideals;   // C_i = e_i + C
    bool injective = false;
    std::size_t checks = 0;
};

// Requires a Clifford table; throws VerificationFailure if an item fails.
PonizovskyReport ponizovsky_decomposition(const ClassSemigroup& c);

struct MembershipReport {
    std::size_t checked = 0;
    std::optional<Sequence> mismatch;
};

// B(G) = {S : [S] idempotent} over every S with |S| ≤ len_cap.
MembershipReport idempotent_membership(const ClassSemigroup& c, std::size_t len_cap);

struct ClassMapReport {
    std::size_t source_size = 0, target_size = 0;
    std::vector<ClassId> image;
    bool well_defined = false, homomorphic = false, surjective = false, injective = false;
};

ClassMapReport quotient_class_epimorphism(const ClassSemigroup& c, const Subgroup& n, const Budget& budget = {});
ClassMapReport product_class_isomorphism(const GroupPtr& g, const GroupPtr& h, const Budget& budget = {});

// Every multiset of length exactly len over G in lexicographic order; stop by returning false.
void for_each_multiset(std::size_t order, std::size_t len, const std::function<bool(const std::vector<Element>&)>& visit);

}  // namespace prodone
