#include "prodone/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "prodone/errors.hpp"

namespace prodone {

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<Element> table,
                         std::vector<std::string> element_names, bool check_associativity)
    : name_(std::move(name)), order_(order), table_(std::move(table)), names_(std::move(element_names)) {
    const std::size_t n = order_;
    if (n == 0 || n > kMaxGroupOrder)
        throw InputError("group order must be between 1 and " + std::to_string(kMaxGroupOrder));
    if (table_.size() != n * n) throw InputError("multiplication table has the wrong size");
    if (names_.size() != n) throw InputError("need exactly one name per element");
    for (auto x : table_)
        if (x >= n) throw InputError("table entry out of range");

    for (std::size_t a = 0; a < n; ++a)
        if (mul(0, static_cast<Element>(a)) != a || mul(static_cast<Element>(a), 0) != a)
            throw InputError("element 0 is not a two-sided identity");

    // Every row and column must be a permutation; this also makes inverses two-sided.
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) seen[table_[a * n + b]] = 1;
        if (std::count(seen.begin(), seen.end(), 0)) throw InputError("table row is not a permutation");
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) seen[table_[b * n + a]] = 1;
        if (std::count(seen.begin(), seen.end(), 0)) throw InputError("table column is not a permutation");
    }

    if (check_associativity) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Element ab = table_[a * n + b];
                for (std::size_t c = 0; c < n; ++c)
                    if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
                        throw InputError("table is not associative");
            }
    }

    inverses_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a * n + b] == 0) {
                if (table_[b * n + a] != 0) throw InputError("inverse is not two-sided");
                inverses_[a] = static_cast<Element>(b);
                break;
            }

    orders_.assign(n, 1);
    for (std::size_t a = 0; a < n; ++a) {
        Element x = static_cast<Element>(a);
        std::size_t k = 1;
        while (x != 0) {
            x = mul(x, static_cast<Element>(a));
            ++k;
        }
        orders_[a] = k;
        exponent_ = std::lcm(exponent_, k);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!by_name_.emplace(names_[i], static_cast<Element>(i)).second)
            throw InputError("duplicate element name '" + names_[i] + "'");
    }

    all_ = ElementSet::range(n);
    ElementSet comms;
    for (std::size_t a = 0; a < n; ++a) {
        bool central = true;
        for (std::size_t b = 0; b < n; ++b) {
            const Element c = commutator(static_cast<Element>(a), static_cast<Element>(b));
            if (c != 0) central = false;
            comms.insert(c);
        }
        if (central) center_.insert(static_cast<Element>(a));
    }
    abelian_ = center_.size() == n;
    derived_ = generated(comms);

    ab_class_.assign(n, n);
    std::vector<Element> reps;
    for (std::size_t a = 0; a < n; ++a) {
        if (ab_class_[a] != n) continue;
        const std::size_t id = reps.size();
        reps.push_back(static_cast<Element>(a));
        derived_.for_each([&](Element d) { ab_class_[mul(static_cast<Element>(a), d)] = id; });
    }
    ab_order_ = reps.size();
    ab_table_.resize(ab_order_ * ab_order_);
    for (std::size_t x = 0; x < ab_order_; ++x)
        for (std::size_t y = 0; y < ab_order_; ++y)
            ab_table_[x * ab_order_ + y] = static_cast<Element>(ab_class_[mul(reps[x], reps[y])]);
}

Element FiniteGroup::power(Element a, std::size_t k) const {
    k %= orders_[a];
    Element x = 0;
    for (std::size_t i = 0; i < k; ++i) x = mul(x, a);
    return x;
}

std::optional<Element> FiniteGroup::find(std::string_view element_name) const {
    auto it = by_name_.find(std::string(element_name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

ElementSet FiniteGroup::right_mul(const ElementSet& s, Element g) const {
    ElementSet out;
    s.for_each([&](Element x) { out.insert(mul(x, g)); });
    return out;
}

ElementSet FiniteGroup::left_mul(Element g, const ElementSet& s) const {
    ElementSet out;
    s.for_each([&](Element x) { out.insert(mul(g, x)); });
    return out;
}

ElementSet FiniteGroup::product(const ElementSet& a, const ElementSet& b) const {
    ElementSet out;
    a.for_each([&](Element x) { b.for_each([&](Element y) { out.insert(mul(x, y)); }); });
    return out;
}

ElementSet FiniteGroup::generated(const ElementSet& gens) const {
    ElementSet out = ElementSet::single(0);
    const auto g = gens.members();
    std::vector<Element> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (Element s : g) {
            const Element y = mul(queue[i], s);
            if (!out.contains(y)) {
                out.insert(y);
                queue.push_back(y);
            }
        }
    return out;
}

bool FiniteGroup::is_subgroup(const ElementSet& s) const {
    if (!s.contains(0)) return false;
    bool ok = true;
    s.for_each([&](Element a) {
        if (!s.contains(inverse(a))) ok = false;
        s.for_each([&](Element b) {
            if (!s.contains(mul(a, b))) ok = false;
        });
    });
    return ok;
}

bool FiniteGroup::is_normal(const ElementSet& s) const {
    for (std::size_t g = 0; g < order_; ++g) {
        const Element x = static_cast<Element>(g);
        bool ok = true;
        s.for_each([&](Element h) {
            if (!s.contains(mul(mul(x, h), inverse(x)))) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

Subgroup::Subgroup(GroupPtr parent, ElementSet members) : parent_(std::move(parent)), members_(members) {
    if (!members_.is_subset_of(parent_->all()) || !parent_->is_subgroup(members_))
        throw InputError("element set is not a subgroup of " + parent_->name());
}

bool GroupHom::verify() const {
    const std::size_t n = source->order();
    if (image.size() != n) return false;
    for (auto x : image)
        if (x >= target->order()) return false;
    if (image[0] != target->identity()) return false;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (image[source->mul(static_cast<Element>(a), static_cast<Element>(b))] !=
                target->mul(image[a], image[b]))
                return false;
    return true;
}

bool GroupHom::is_surjective() const {
    ElementSet hit;
    for (auto x : image) hit.insert(x);
    return hit.size() == target->order();
}

bool GroupHom::is_injective() const {
    ElementSet hit;
    for (auto x : image) hit.insert(x);
    return hit.size() == source->order();
}

GroupPtr group_from_table(std::string name, std::vector<std::vector<std::size_t>> table,
                          std::vector<std::string> names, std::size_t max_order) {
    const std::size_t n = table.size();
    if (n == 0) throw InputError("empty multiplication table");
    if (n > max_order) throw BudgetExceeded("group order", max_order);
    for (const auto& row : table) {
        if (row.size() != n) throw InputError("multiplication table is not square");
        for (auto x : row)
            if (x >= n) throw InputError("table entry out of range");
    }
    if (names.empty())
        for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    if (names.size() != n) throw InputError("need exactly one name per element");

    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) id = e;
    }
    if (!id) throw InputError("table has no identity element");

    // Move the identity to index 0 and keep every other element in its original relative order.
    std::vector<std::size_t> perm{*id};  // new -> old
    for (std::size_t i = 0; i < n; ++i)
        if (i != *id) perm.push_back(i);
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;

    std::vector<Element> flat(n * n);
    std::vector<std::string> new_names(n);
    for (std::size_t i = 0; i < n; ++i) {
        new_names[i] = names[perm[i]];
        for (std::size_t j = 0; j < n; ++j)
            flat[i * n + j] = static_cast<Element>(inv[table[perm[i]][perm[j]]]);
    }
    return std::make_shared<FiniteGroup>(std::move(name), n, std::move(flat), std::move(new_names), true);
}

Subgroup commutator_subgroup(const GroupPtr& g) { return Subgroup(g, g->commutator_subgroup()); }
Subgroup center(const GroupPtr& g) { return Subgroup(g, g->center()); }
Subgroup generated_subgroup(const GroupPtr& g, const ElementSet& gens) { return Subgroup(g, g->generated(gens)); }

std::vector<Subgroup> subgroups(const GroupPtr& g, std::size_t order_cap) {
    if (g->order() > order_cap) throw BudgetExceeded("subgroup enumeration order", order_cap);
    const std::size_t n = g->order();
    // Each subgroup is reached from a smaller one by adjoining one element.
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<std::pair<ElementSet, std::vector<Element>>> queue;
    queue.push_back({ElementSet::single(0), {}});
    seen.insert(queue.back().first);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto cur = queue[i];
        for (std::size_t x = 0; x < n; ++x) {
            if (cur.first.contains(static_cast<Element>(x))) continue;
            auto gens = cur.second;
            gens.push_back(static_cast<Element>(x));
            ElementSet gs;
            for (auto e : gens) gs.insert(e);
            ElementSet h = g->generated(gs);
            if (seen.insert(h).second) queue.push_back({h, gens});
        }
    }
    std::vector<ElementSet> sets;
    for (auto& q : queue) sets.push_back(q.first);
    std::sort(sets.begin(), sets.end(), [](const ElementSet& a, const ElementSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.lex_less(b);
    });
    std::vector<Subgroup> out;
    out.reserve(sets.size());
    for (auto& s : sets) out.emplace_back(g, s);
    return out;
}

std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n) {
    if (n.parent() != g) throw InputError("subgroup belongs to a different group");
    if (!n.is_normal()) throw InputError("subgroup is not normal in " + g->name());
    const std::size_t order = g->order();
    std::vector<Element> coset(order, static_cast<Element>(order));
    std::vector<Element> reps;
    for (std::size_t a = 0; a < order; ++a) {
        if (coset[a] != order) continue;
        const auto id = static_cast<Element>(reps.size());
        reps.push_back(static_cast<Element>(a));
        n.members().for_each([&](Element h) { coset[g->mul(static_cast<Element>(a), h)] = id; });
    }
    const std::size_t q = reps.size();
    std::vector<Element> table(q * q);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < q; ++i) {
        names.push_back(g->element_name(reps[i]));
        for (std::size_t j = 0; j < q; ++j) table[i * q + j] = coset[g->mul(reps[i], reps[j])];
    }
    auto qg = std::make_shared<FiniteGroup>(g->name() + "/N" + std::to_string(n.size()), q, std::move(table),
                                            std::move(names), false);
    GroupHom proj{g, qg, coset};
    return {qg, proj};
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t max_order) {
    const std::size_t a = g->order(), b = h->order(), n = a * b;
    if (n > max_order || n > kMaxGroupOrder) throw BudgetExceeded("group order", std::min(max_order, kMaxGroupOrder));
    std::vector<Element> table(n * n);
    std::vector<std::string> names(n);
    for (std::size_t x = 0; x < n; ++x) {
        const auto gx = static_cast<Element>(x / b), hx = static_cast<Element>(x % b);
        names[x] = g->element_name(gx) + ":" + h->element_name(hx);
        for (std::size_t y = 0; y < n; ++y) {
            const auto gy = static_cast<Element>(y / b), hy = static_cast<Element>(y % b);
            table[x * n + y] = static_cast<Element>(g->mul(gx, gy) * b + h->mul(hx, hy));
        }
    }
    return std::make_shared<FiniteGroup>(g->name() + "x" + h->name(), n, std::move(table), std::move(names), false);
}

std::pair<GroupPtr, GroupHom> subgroup_as_group(const Subgroup& s) {
    const auto& g = s.parent();
    const auto members = s.members().members();
    const std::size_t k = members.size();
    std::vector<Element> local(g->order(), 0);
    for (std::size_t i = 0; i < k; ++i) local[members[i]] = static_cast<Element>(i);
    std::vector<Element> table(k * k);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        names.push_back(g->element_name(members[i]));
        for (std::size_t j = 0; j < k; ++j) table[i * k + j] = local[g->mul(members[i], members[j])];
    }
    auto sg = std::make_shared<FiniteGroup>(g->name() + "<" + std::to_string(k) + ">", k, std::move(table),
                                            std::move(names), false);
    return {sg, GroupHom{sg, g, members}};
}

Fingerprint fingerprint(const GroupPtr& g, std::size_t subgroup_cap) {
    Fingerprint f;
    f.order = g->order();
    f.exponent = g->exponent();
    f.derived = g->commutator_subgroup().size();
    f.center = g->center().size();
    f.subgroups = g->order() <= subgroup_cap ? subgroups(g, subgroup_cap).size() : 0;
    return f;
}

namespace {

std::vector<std::size_t> order_profile(const FiniteGroup& g) {
    std::vector<std::size_t> p;
    for (std::size_t a = 0; a < g.order(); ++a) p.push_back(g.element_order(static_cast<Element>(a)));
    std::sort(p.begin(), p.end());
    return p;
}

}  // namespace

bool isomorphic(const GroupPtr& a, const GroupPtr& b) {
    if (a->order() != b->order() || a->is_abelian() != b->is_abelian()) return false;
    if (a->center().size() != b->center().size()) return false;
    if (a->commutator_subgroup().size() != b->commutator_subgroup().size()) return false;
    if (order_profile(*a) != order_profile(*b)) return false;
    const std::size_t n = a->order();

    // Greedy generating set of a, preferring high-order elements.
    std::vector<Element> by_order(n);
    std::iota(by_order.begin(), by_order.end(), Element{0});
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](Element x, Element y) { return a->element_order(x) > a->element_order(y); });
    std::vector<Element> gens;
    ElementSet span = ElementSet::single(0);
    for (Element x : by_order) {
        if (span.contains(x)) continue;
        gens.push_back(x);
        ElementSet gs;
        for (auto e : gens) gs.insert(e);
        span = a->generated(gs);
    }

    // BFS tree: every element of a is parent·gen for a recorded (parent, gen index).
    std::vector<std::pair<Element, std::size_t>> via(n, {0, 0});
    std::vector<Element> bfs{0};
    std::vector<char> done(n, 0);
    done[0] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Element y = a->mul(bfs[i], gens[k]);
            if (!done[y]) {
                done[y] = 1;
                via[y] = {bfs[i], k};
                bfs.push_back(y);
            }
        }

    std::vector<Element> choice(gens.size());
    std::vector<Element> img(n);
    auto try_map = [&]() {
        img[0] = 0;
        ElementSet hit = ElementSet::single(0);
        for (std::size_t i = 1; i < bfs.size(); ++i) {
            const Element y = bfs[i];
            img[y] = b->mul(img[via[y].first], choice[via[y].second]);
            if (hit.contains(img[y])) return false;
            hit.insert(img[y]);
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (img[a->mul(static_cast<Element>(x), static_cast<Element>(y))] != b->mul(img[x], img[y]))
                    return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == gens.size()) return try_map();
        for (std::size_t t = 0; t < n; ++t) {
            if (b->element_order(static_cast<Element>(t)) != a->element_order(gens[k])) continue;
            choice[k] = static_cast<Element>(t);
            if (self(self, k + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace prodone
