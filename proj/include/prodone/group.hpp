#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prodone/budget.hpp"
#include "prodone/element_set.hpp"

namespace prodone {

// A finite group given by its multiplication table. Element 0 is always the identity.
class FiniteGroup {
public:
    // Validates identity, inverses and (optionally) associativity, then derives structure.
    FiniteGroup(std::string name, std::size_t order, std::vector<Element> table,
                std::vector<std::string> element_names, bool check_associativity);

    const std::string& name() const { return name_; }
    std::size_t order() const { return order_; }
    Element identity() const { return 0; }

    Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
    Element inverse(Element a) const { return inverses_[a]; }
    Element power(Element a, std::size_t k) const;
    Element commutator(Element a, Element b) const {
        return mul(mul(a, b), mul(inverses_[a], inverses_[b]));
    }
    bool commute(Element a, Element b) const { return mul(a, b) == mul(b, a); }

    std::size_t element_order(Element a) const { return orders_[a]; }
    std::size_t exponent() const { return exponent_; }
    bool is_abelian() const { return abelian_; }

    const ElementSet& all() const { return all_; }
    const ElementSet& center() const { return center_; }
    const ElementSet& commutator_subgroup() const { return derived_; }

    const std::string& element_name(Element a) const { return names_[a]; }
    const std::vector<std::string>& element_names() const { return names_; }
    std::optional<Element> find(std::string_view element_name) const;

    // {s·g : s ∈ s}, {g·s : s ∈ s}, and the setwise product.
    ElementSet right_mul(const ElementSet& s, Element g) const;
    ElementSet left_mul(Element g, const ElementSet& s) const;
    ElementSet product(const ElementSet& a, const ElementSet& b) const;
    ElementSet generated(const ElementSet& gens) const;

    bool is_subgroup(const ElementSet& s) const;
    bool is_normal(const ElementSet& s) const;

    // Index of the coset of G' containing a; used by abelianization filters.
    std::size_t abelian_class(Element a) const { return ab_class_[a]; }
    std::size_t abelianization_order() const { return ab_order_; }
    Element abelian_mul_class(std::size_t x, std::size_t y) const {
        return ab_table_[x * ab_order_ + y];
    }

    const std::vector<Element>& table() const { return table_; }

private:
    std::string name_;
    std::size_t order_;
    std::vector<Element> table_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Element> by_name_;
    std::vector<Element> inverses_;
    std::vector<std::size_t> orders_;
    std::size_t exponent_ = 1;
    bool abelian_ = true;
    ElementSet all_, center_, derived_;
    std::vector<std::size_t> ab_class_;
    std::size_t ab_order_ = 1;
    std::vector<Element> ab_table_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

class Subgroup {
public:
    // Throws InputError unless members form a subgroup of parent.
    Subgroup(GroupPtr parent, ElementSet members);

    const GroupPtr& parent() const { return parent_; }
    const ElementSet& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Element e) const { return members_.contains(e); }
    bool is_normal() const { return parent_->is_normal(members_); }
    bool is_trivial() const { return size() == 1; }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }

private:
    GroupPtr parent_;
    ElementSet members_;
};

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<Element> image;

    Element operator()(Element g) const { return image[g]; }
    // Exhaustive homomorphism check.
    bool verify() const;
    bool is_surjective() const;
    bool is_injective() const;
};

struct Fingerprint {
    std::size_t order = 0, exponent = 0, derived = 0, center = 0, subgroups = 0;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// Descriptor grammar: C<n>, D<m>, Dic<m>, Q8, S<n>, A<n>, factors joined by 'x',
// an optional power suffix (C2^5), or cayley:<path>.
GroupPtr build_group(std::string_view descriptor, const Budget& budget = {});

// Z_p ⋊ Z_q where the generator b of Z_q acts on a by a ↦ a^r; needs r^q ≡ 1 (mod p).
GroupPtr metacyclic_group(std::size_t p, std::size_t q, std::size_t r);

// Builds a group from an arbitrary table; rows are reordered so that the identity comes first.
GroupPtr group_from_table(std::string name, std::vector<std::vector<std::size_t>> table,
                          std::vector<std::string> names = {}, std::size_t max_order = 256);

Subgroup commutator_subgroup(const GroupPtr& g);
Subgroup center(const GroupPtr& g);
Subgroup generated_subgroup(const GroupPtr& g, const ElementSet& gens);
std::vector<Subgroup> subgroups(const GroupPtr& g, std::size_t order_cap = 64);
std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n);
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t max_order = 256);
// The subgroup as a group in its own right, with its inclusion map.
std::pair<GroupPtr, GroupHom> subgroup_as_group(const Subgroup& s);

Fingerprint fingerprint(const GroupPtr& g, std::size_t subgroup_cap = 64);
// Cheap isomorphism test for small groups: brute-force search over generator images.
bool isomorphic(const GroupPtr& a, const GroupPtr& b);

}  // namespace prodone
