#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prodone/group.hpp"

namespace prodone {

struct Term {
    Element element;
    std::uint32_t count;
    friend bool operator==(const Term&, const Term&) = default;
};

// An unordered multiset of group elements, stored as sorted (element, count) runs.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(GroupPtr g) : group_(std::move(g)) {}
    Sequence(GroupPtr g, std::span<const Element> terms);
    static Sequence from_terms(GroupPtr g, std::vector<Term> terms);
    // counts[e] = multiplicity of element e.
    static Sequence from_counts(GroupPtr g, std::span<const std::uint32_t> counts);
    static Sequence power_of(GroupPtr g, Element e, std::uint32_t k);

    const GroupPtr& group_ptr() const { return group_; }
    const FiniteGroup& group() const { return *group_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t length() const { return length_; }
    std::size_t distinct() const { return terms_.size(); }
    bool empty() const { return length_ == 0; }
    std::uint32_t count(Element e) const;
    ElementSet support() const;
    Element least() const { return terms_.front().element; }

    std::vector<Element> expanded() const;
    std::vector<std::uint32_t> dense() const;

    Sequence operator*(const Sequence& o) const;   // concatenation in F(G)
    Sequence power(std::uint32_t k) const;         // S^[k]
    Sequence inverse() const;                      // S^{-1}
    Sequence minus(const Sequence& t) const;       // S·T^{-1}; requires T | S
    Sequence with(Element e, std::uint32_t k = 1) const;
    bool divides(const Sequence& s) const;         // this | s
    Sequence mapped(const GroupHom& h) const;      // θ(S)
    // Literal form, e.g. "a^4,b,a2b"; the empty sequence prints as "1^0".
    std::string to_string() const;

    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.terms_ == b.terms_ && a.group_ == b.group_;
    }
    // Shorter first, then lexicographic on the expanded element list.
    friend bool operator<(const Sequence& a, const Sequence& b);

private:
    void normalize();

    GroupPtr group_;
    std::vector<Term> terms_;
    std::size_t length_ = 0;
};

struct SequenceHash {
    std::size_t operator()(const Sequence& s) const;
};

// Parses "a^4,b,a2b"; "" and "1^0" denote the empty sequence.
Sequence parse_sequence(const GroupPtr& g, std::string_view literal);

struct ProductSet {
    GroupPtr group;
    ElementSet members;
    bool contains(Element e) const { return members.contains(e); }
    std::size_t size() const { return members.size(); }
};

// π over every submultiset of a sequence, indexed in mixed radix: state = Σ v_i·stride_i
// where v_i ≤ m_i is the multiplicity of the i-th distinct term.
class SubmultisetTable {
public:
    SubmultisetTable(const Sequence& s, std::size_t max_states);

    std::size_t size() const { return size_; }
    std::size_t full() const { return size_ - 1; }
    ElementSet products(std::size_t state) const;
    bool has_identity(std::size_t state) const {
        return small_.empty() ? sets_[state].contains(0) : (small_[state] & 1u);
    }
    std::uint32_t digit(std::size_t state, std::size_t i) const {
        return static_cast<std::uint32_t>(state / strides_[i] % (radix_[i] + 1));
    }
    const std::vector<std::size_t>& strides() const { return strides_; }
    const Sequence& source() const { return source_; }
    Sequence subsequence(std::size_t state) const;
    // u ≤ v digitwise.
    bool below(std::size_t u, std::size_t v) const;
    ElementSet subsequence_products() const;

private:
    Sequence source_;
    std::vector<std::uint32_t> radix_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> small_;  // used when the group order is at most 64
    std::vector<ElementSet> sets_;
};

inline constexpr std::size_t kDefaultStates = 1u << 21;

ProductSet product_set(const Sequence& s, std::size_t max_states = kDefaultStates);
ProductSet subsequence_products(const Sequence& s, std::size_t max_states = kDefaultStates);
bool is_product_one(const Sequence& s, std::size_t max_states = kDefaultStates);
bool is_product_one_free(const Sequence& s, std::size_t max_states = kDefaultStates);

struct SplitInvariant {
    GroupPtr group;
    std::set<std::vector<Element>> tuples;
    std::size_t cap = 0;
    bool saturated = true;
    bool contains_empty() const { return tuples.count({}) > 0; }
    friend bool operator==(const SplitInvariant& a, const SplitInvariant& b) {
        return a.tuples == b.tuples && a.cap == b.cap && a.saturated == b.saturated;
    }
};

// Reduced block-product tuples over all orderings and ordered partitions of s, up to length cap.
SplitInvariant split_invariant(const Sequence& s, std::size_t cap, std::size_t max_states = 1u << 22);

}  // namespace prodone
