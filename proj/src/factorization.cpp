#include "prodone/factorization.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

#include "prodone/errors.hpp"
#include "prodone/parallel.hpp"

namespace prodone {

LengthSet::LengthSet(std::initializer_list<std::size_t> xs) {
    for (auto x : xs) {
        if (x >= 64) throw InputError("lengths above 63 are not representable");
        mask_ |= std::uint64_t{1} << x;
    }
}

std::size_t LengthSet::min() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }
std::size_t LengthSet::max() const { return 63 - static_cast<std::size_t>(std::countl_zero(mask_)); }

std::vector<std::size_t> LengthSet::values() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
}

bool LengthSet::is_interval() const {
    if (empty()) return true;
    const std::uint64_t shifted = mask_ >> min();
    return (shifted & (shifted + 1)) == 0;
}

std::set<std::size_t> LengthSet::distances() const {
    std::set<std::size_t> d;
    const auto v = values();
    for (std::size_t i = 1; i < v.size(); ++i) d.insert(v[i] - v[i - 1]);
    return d;
}

std::string LengthSet::to_string() const {
    std::string s = "{";
    for (auto x : values()) s += (s.size() > 1 ? "," : "") + std::to_string(x);
    return s + "}";
}

SubmultisetLengths::SubmultisetLengths(const Sequence& s, std::size_t max_states) : table_(s, max_states) {
    if (s.length() >= 64) throw BudgetExceeded("sequence length for length sets", 63);
    const std::size_t k = s.distinct();
    std::vector<std::uint32_t> radix(k);
    for (std::size_t i = 0; i < k; ++i) radix[i] = s.terms()[i].count;

    // A product-one v is not an atom iff some atom u ≤ v containing v's least term leaves a
    // product-one remainder; those same atoms produce every factorization.
    struct AtomState {
        std::size_t state;
        std::vector<std::uint32_t> digits;
    };
    std::vector<std::vector<AtomState>> atoms_by_anchor(k);
    const std::size_t n = table_.size();
    lengths_.assign(n, LengthSet());
    atom_.assign(n, 0);
    lengths_[0] = LengthSet(1);
    std::vector<std::uint32_t> v(k, 0);
    for (std::size_t state = 1; state < n; ++state) {
        for (std::size_t i = 0; i < k; ++i) {  // odometer: v = digits of state
            if (v[i] < radix[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
        }
        if (!table_.has_identity(state)) continue;
        std::size_t anchor = 0;
        while (v[anchor] == 0) ++anchor;
        std::uint64_t acc = 0;
        for (const auto& a : atoms_by_anchor[anchor]) {
            bool below = true;
            for (std::size_t i = anchor; i < k && below; ++i) below = a.digits[i] <= v[i];
            if (!below) continue;
            const std::size_t rest = state - a.state;
            if (table_.has_identity(rest)) acc |= lengths_[rest].mask() << 1;
        }
        if (acc == 0) {
            atom_[state] = 1;
            acc = 2;
            atoms_by_anchor[anchor].push_back({state, v});
        }
        lengths_[state] = LengthSet(acc);
    }
}

LengthSet length_set(const Sequence& s, std::size_t max_states) {
    if (!is_product_one(s, max_states)) throw InputError("length sets need a product-one sequence");
    if (s.empty()) return LengthSet{0};
    return SubmultisetLengths(s, max_states).full();
}

namespace {

std::size_t pair_count(std::size_t n) { return n * (n + 1) / 2; }

}  // namespace

std::vector<ProductLengths> two_atom_products(const AtomSet& atoms, std::size_t max_pairs) {
    const auto& a = atoms.atoms;
    if (pair_count(a.size()) > max_pairs) throw BudgetExceeded("atom pairs", max_pairs);
    std::vector<std::vector<ProductLengths>> rows(a.size());
    parallel_for(a.size(), [&](std::size_t i) {
        std::unordered_set<Sequence, SequenceHash> seen;
        for (std::size_t j = i; j < a.size(); ++j) {
            Sequence p = a[i] * a[j];
            if (!seen.insert(p).second) continue;
            rows[i].push_back({p, SubmultisetLengths(p).full()});
        }
    });
    std::unordered_map<Sequence, LengthSet, SequenceHash> merged;
    for (auto& r : rows)
        for (auto& pl : r) merged.emplace(pl.product, pl.lengths);
    std::vector<ProductLengths> out;
    out.reserve(merged.size());
    for (auto& [p, l] : merged) out.push_back({p, l});
    std::sort(out.begin(), out.end(), [](const ProductLengths& x, const ProductLengths& y) { return x.product < y.product; });
    return out;
}

TwoDMembership check_2D_membership(const AtomSet& atoms, std::size_t max_pairs) {
    TwoDMembership r;
    const std::size_t d = atoms.max_length();
    const LengthSet target{2, d};
    const auto longest = atoms.of_length(d);
    auto test = [&](const Sequence& u, const Sequence& v) {
        ++r.checked;
        Sequence s = u * v;
        if (length_set(s) != target) return false;
        r.member = true;
        r.witness = std::move(s);
        r.factors = {u, v};
        return true;
    };
    if (atoms.group->is_abelian()) {
        for (const auto& u : longest)
            if (test(u, u.inverse())) break;
        return r;
    }
    if (pair_count(longest.size()) > max_pairs) throw BudgetExceeded("atom pairs", max_pairs);
    for (std::size_t i = 0; i < longest.size() && !r.member; ++i)
        for (std::size_t j = i; j < longest.size(); ++j)
            if (test(longest[i], longest[j])) break;
    return r;
}

Rho2 rho2(const AtomSet& atoms, std::size_t max_pairs) {
    Rho2 r;
    const std::size_t d = atoms.max_length();
    if (pair_count(atoms.atoms.size()) <= max_pairs) {
        r.exhaustive = true;
        for (auto& pl : two_atom_products(atoms, max_pairs))
            if (pl.lengths.max() > r.value) {
                r.value = pl.lengths.max();
                r.witness = pl;
            }
        return r;
    }
    // Every atom other than 1_G has length ≥ 2, so max L(U·V) ≤ |U·V|/2 ≤ D(G) (and
    // ≤ 1 + D(G)/2 when one factor is 1_G); a pair attaining D(G) settles the value.
    for (const auto& u : atoms.of_length(d)) {
        Sequence p = u * u.inverse();
        LengthSet l = length_set(p);
        if (l.contains(d)) {
            r.value = d;
            r.witness = ProductLengths{p, l};
            break;
        }
    }
    return r;
}

void for_each_product_one(const GroupPtr& gp, std::size_t len, const std::function<bool(const Sequence&)>& visit) {
    const auto& g = *gp;
    std::vector<Element> path;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t start, std::size_t cls) -> void {
        if (stop) return;
        if (path.size() == len) {
            if (cls != 0) return;
            Sequence s(gp, path);
            if (is_product_one(s) && !visit(s)) stop = true;
            return;
        }
        for (std::size_t x = start; x < g.order() && !stop; ++x) {
            path.push_back(static_cast<Element>(x));
            self(self, x, g.abelian_mul_class(cls, g.abelian_class(static_cast<Element>(x))));
            path.pop_back();
        }
    };
    rec(rec, 0, 0);
}

ArithmeticReport arithmetic_report(const GroupPtr& g, std::size_t max_seq_len, std::size_t max_k,
                                   const Budget& budget) {
    ArithmeticReport r;
    r.group = g;
    r.max_seq_len = max_seq_len;
    r.max_k = max_k;
    for (std::size_t len = 0; len <= max_seq_len; ++len)
        for_each_product_one(g, len, [&](const Sequence& s) {
            LengthSet l = length_set(s, budget.max_states);
            for (auto x : l.distances()) r.delta.insert(x);
            r.system.push_back({s, l});
            return true;
        });

    if (max_k == 0) return r;
    const AtomSet atoms = enumerate_atoms(g, g->order(), budget);
    std::vector<Sequence> level(atoms.atoms.begin(), atoms.atoms.end());
    bool exact = true;
    for (std::size_t k = 1; k <= max_k; ++k) {
        if (k > 1) {
            std::unordered_set<Sequence, SequenceHash> next;
            for (const auto& x : level) {
                for (const auto& a : atoms.atoms) {
                    next.insert(x * a);
                    if (next.size() > budget.max_products) break;
                }
                if (next.size() > budget.max_products) break;
            }
            if (next.size() > budget.max_products) exact = false;
            level.assign(next.begin(), next.end());
            std::sort(level.begin(), level.end());
        }
        std::uint64_t u = 0;
        for (const auto& s : level) {
            try {
                u |= SubmultisetLengths(s, budget.max_states).full().mask();
            } catch (const BudgetExceeded&) {
                exact = false;
            }
        }
        r.unions[k] = LengthSet(u);
        r.rho[k] = r.unions[k].empty() ? 0 : r.unions[k].max();
        r.exact[k] = exact;
        if (!exact) break;
    }
    return r;
}

UniversalWitness universal_witness(const GroupPtr& gp, std::size_t y, std::size_t k, std::size_t len_cap) {
    const auto& g = *gp;
    UniversalWitness w;
    w.y = y;
    w.k = k;
    std::uint64_t target = 0;
    for (std::size_t x = y + 2 * k; x <= y + 3 * k; ++x) target |= std::uint64_t{1} << x;
    w.target = LengthSet(target);

    auto accept = [&](const Sequence& s, const char* method) {
        if (s.length() > len_cap || s.length() >= 64) return false;
        if (length_set(s) != w.target) return false;
        w.witness = s;
        w.method = method;
        return true;
    };
    const Sequence ones = Sequence::power_of(gp, 0, static_cast<std::uint32_t>(y));

    // An element of order at least 3: U = g^[2]·g^{-2}, or g^[3] when ord(g) = 3.
    for (std::size_t x = 1; x < g.order(); ++x) {
        const auto e = static_cast<Element>(x);
        if (g.element_order(e) < 3) continue;
        Sequence u = g.element_order(e) == 3 ? Sequence::power_of(gp, e, 3)
                                             : Sequence::power_of(gp, e, 2).with(g.inverse(g.mul(e, e)));
        if (accept(ones * (u * u.inverse()).power(static_cast<std::uint32_t>(k)), "cyclic")) return w;
        break;
    }
    // Two distinct commuting involutions: U = e1·e2·(e1e2), and U^[2] has lengths {2,3}.
    for (std::size_t a = 1; a < g.order(); ++a)
        for (std::size_t b = a + 1; b < g.order(); ++b) {
            const auto e1 = static_cast<Element>(a), e2 = static_cast<Element>(b);
            if (g.element_order(e1) != 2 || g.element_order(e2) != 2 || !g.commute(e1, e2)) continue;
            Sequence u = Sequence(gp, std::vector<Element>{e1, e2, g.mul(e1, e2)});
            if (accept(ones * u.power(static_cast<std::uint32_t>(2 * k)), "klein")) return w;
            a = b = g.order();
        }
    for (std::size_t len = 1; len <= len_cap && !w.witness; ++len)
        for_each_product_one(gp, len, [&](const Sequence& s) { return !accept(s, "search"); });
    return w;
}

std::vector<UniversalWitness> universal_length_sets(const GroupPtr& g, std::size_t bound, std::size_t len_cap) {
    if (g->order() < 3) throw InputError("universal length sets need a group of order at least 3");
    std::vector<UniversalWitness> out;
    for (std::size_t k = 1; 3 * k <= bound; ++k)
        for (std::size_t y = 0; y + 3 * k <= bound; ++y) out.push_back(universal_witness(g, y, k, len_cap));
    return out;
}

}  // namespace prodone
