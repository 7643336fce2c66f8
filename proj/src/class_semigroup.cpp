#include "prodone/class_semigroup.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>

#include "prodone/errors.hpp"

namespace prodone {

namespace {

std::uint64_t word(const Multiset& m, std::size_t i) {
    std::uint64_t w;
    std::memcpy(&w, m.c.data() + 8 * i, 8);
    return __builtin_bswap64(w);   // big-endian, so integer order is byte order
}

}  // namespace

bool canonical_less(const Multiset& a, const Multiset& b) {
    if (a.len != b.len) return a.len < b.len;
    // more copies of a smaller element sorts first
    const std::uint64_t a0 = word(a, 0), b0 = word(b, 0);
    if (a0 != b0) return a0 > b0;
    return word(a, 1) > word(b, 1);
}

namespace {

std::size_t hash_counts(const std::uint8_t* c) {
    std::uint64_t lo, hi;
    std::memcpy(&lo, c, 8);
    std::memcpy(&hi, c + 8, 8);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
    return static_cast<std::size_t>(h ^ (h >> 31));
}

}  // namespace

CompletionEngine::CompletionEngine(GroupPtr g, const Budget& budget)
    : group_(std::move(g)), max_basis_(budget.max_basis) {
    if (group_->order() > kMaxClassGroupOrder)
        throw InputError("class computations support groups of order at most 16");
    const AtomSet atoms = enumerate_atoms(group_, group_->order(), budget);
    davenport_ = atoms.max_length();
    atom_count_ = atoms.atoms.size();
    const auto& gr = *group_;
    class_power_.resize(gr.order());
    for (std::size_t i = 0; i < gr.order(); ++i) {
        std::size_t cls = 0;
        for (std::size_t k = 0; k < 256; ++k) {
            class_power_[i][k] = static_cast<std::uint16_t>(cls);
            cls = gr.abelian_mul_class(cls, gr.abelian_class(static_cast<Element>(i)));
        }
    }
    memo_.assign(1u << 12, Slot{});
    // The basis of a single term g: minimal A·g^{-1} over atoms A containing g.
    std::vector<Basis> pieces(group_->order());
    for (const auto& a : atoms.atoms)
        for (const auto& t : a.terms()) pieces[t.element].push_back(to_multiset(a.minus(Sequence::power_of(group_, t.element, 1))));
    for (auto& p : pieces) single_.push_back(minimize(std::move(p)));
}

Basis CompletionEngine::minimize(Basis cand) {
    std::sort(cand.begin(), cand.end(), canonical_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    Basis kept;
    std::size_t last = 0;   // the previous dominator often dominates the next candidate too
    for (const auto& y : cand) {
        bool dominated = last < kept.size() && kept[last].len < y.len && below(kept[last], y);
        for (std::size_t i = 0; i < kept.size() && !dominated; ++i)
            if (kept[i].len < y.len && below(kept[i], y)) {
                dominated = true;
                last = i;
            }
        if (dominated) continue;
        kept.push_back(y);
        if (kept.size() > max_basis_) throw BudgetExceeded("completion basis", max_basis_);
    }
    return kept;
}

Multiset CompletionEngine::to_multiset(const Sequence& s) const {
    Multiset m;
    for (const auto& t : s.terms()) {
        if (t.count > 255) throw BudgetExceeded("multiplicity in class computations", 255);
        m.c[t.element] = static_cast<std::uint8_t>(t.count);
    }
    m.len = static_cast<std::uint16_t>(s.length());
    return m;
}

Sequence CompletionEngine::to_sequence(const Multiset& m) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < group_->order(); ++i)
        if (m.c[i]) terms.push_back({static_cast<Element>(i), m.c[i]});
    return Sequence::from_terms(group_, std::move(terms));
}

bool CompletionEngine::accepts(const Multiset& m) {
    if (m.len == 0) return true;
    const auto& g = *group_;
    std::size_t cls = 0;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (m.c[i]) cls = g.abelian_mul_class(cls, class_power_[i][m.c[i]]);
    if (cls != 0) return false;
    const std::size_t mask = memo_.size() - 1;
    std::size_t pos = hash_counts(m.c.data()) & mask;
    for (; memo_[pos].state; pos = (pos + 1) & mask)
        if (memo_[pos].key == m.c) return memo_[pos].state == 2;
    const bool r = is_product_one(to_sequence(m));
    memo_[pos] = Slot{m.c, static_cast<std::uint8_t>(r ? 2 : 1)};
    if (++memo_used_ * 2 > memo_.size()) grow_memo();
    return r;
}

void CompletionEngine::grow_memo() {
    std::vector<Slot> old(memo_.size() * 2, Slot{});
    old.swap(memo_);
    const std::size_t mask = memo_.size() - 1;
    for (const auto& s : old) {
        if (!s.state) continue;
        std::size_t pos = hash_counts(s.key.data()) & mask;
        while (memo_[pos].state) pos = (pos + 1) & mask;
        memo_[pos] = s;
    }
}

bool CompletionEngine::below(const Multiset& a, const Multiset& b) {
    using V = std::uint8_t __attribute__((vector_size(16)));
    V va, vb;
    std::memcpy(&va, a.c.data(), 16);
    std::memcpy(&vb, b.c.data(), 16);
    const V over = va > vb;
    std::uint64_t o[2];
    std::memcpy(o, &over, 16);
    if (o[0] | o[1]) return false;
    Multiset d;
    const V diff = vb - va;
    std::memcpy(d.c.data(), &diff, 16);
    d.len = static_cast<std::uint16_t>(b.len - a.len);
    return accepts(d);
}

Basis CompletionEngine::step(const Basis& b, Element g) {
    // A minimal completion of S·g is f·g^{-1} for f in the basis with g | f, or f·A·g^{-1} for
    // an atom A containing g. Since f·x ≤_H f·y whenever x ≤_H y, A·g^{-1} may be restricted to
    // the basis of g itself.
    Basis cand;
    cand.reserve(b.size() * single_[g].size());
    for (const auto& f : b) {
        if (f.c[g]) {
            Multiset x = f;
            --x.c[g];
            --x.len;
            cand.push_back(x);
            continue;
        }
        for (const auto& a : single_[g]) {
            Multiset x = f;
            for (std::size_t i = 0; i < kMaxClassGroupOrder; ++i) {
                if (f.c[i] + a.c[i] > 255) throw BudgetExceeded("multiplicity in class computations", 255);
                x.c[i] = static_cast<std::uint8_t>(f.c[i] + a.c[i]);
            }
            x.len = static_cast<std::uint16_t>(f.len + a.len);
            cand.push_back(x);
        }
    }
    return minimize(std::move(cand));
}

Basis CompletionEngine::basis(const Sequence& s) {
    Basis b = empty_basis();
    for (const auto& t : s.terms())
        for (std::uint32_t k = 0; k < t.count; ++k) b = step(b, t.element);
    return b;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::equal: return "equal";
        case Verdict::distinct: return "distinct";
        default: return "unknown";
    }
}

bool separates(const Sequence& s, const Sequence& t, const Sequence& witness) {
    return is_product_one(s * witness) != is_product_one(t * witness);
}

void for_each_multiset(std::size_t order, std::size_t len, const std::function<bool(const std::vector<Element>&)>& visit) {
    std::vector<Element> path;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (path.size() == len) {
            if (!visit(path)) stop = true;
            return;
        }
        for (std::size_t x = start; x < order && !stop; ++x) {
            path.push_back(static_cast<Element>(x));
            self(self, x);
            path.pop_back();
        }
    };
    rec(rec, 0);
}

ClassComparison classes_equal(CompletionEngine& engine, const Sequence& s, const Sequence& t, std::size_t escalations) {
    if (s.group_ptr() != t.group_ptr() || s.group_ptr() != engine.group())
        throw InputError("sequences over different groups");
    ClassComparison r;
    const std::size_t longest = std::max(s.length(), t.length());
    // Every basis element of S has length at most (D(G) - 1)·|S|.
    r.witness_bound = (engine.davenport() - 1) * longest;

    for (std::size_t round = 0; round <= escalations; ++round) {
        try {
            const Basis a = engine.basis(s), b = engine.basis(t);
            r.method = "completion-basis";
            r.basis_size = a.size();
            if (a == b) {
                r.verdict = Verdict::equal;
                return r;
            }
            // Some basis element of one side is not a completion of the other.
            Basis both = a;
            both.insert(both.end(), b.begin(), b.end());
            std::sort(both.begin(), both.end(), canonical_less);
            for (const auto& m : both) {
                Sequence w = engine.to_sequence(m);
                if (separates(s, t, w)) {
                    r.verdict = Verdict::distinct;
                    r.witness = w;
                    return r;
                }
            }
            throw VerificationFailure("completion bases differ but no basis element separates " + s.to_string() +
                                      " from " + t.to_string());
        } catch (const BudgetExceeded& e) {
            if (e.budget() != "completion basis") throw;
            engine.set_max_basis(e.limit() * 2);
        }
    }

    // Bases too large: search T over G directly, shortest first.
    const auto gp = engine.group();
    const std::size_t cap = std::min<std::size_t>(r.witness_bound, engine.davenport() + 2);
    for (std::size_t len = 0; len <= cap && r.verdict == Verdict::unknown; ++len)
        for_each_multiset(gp->order(), len, [&](const std::vector<Element>& w) {
            Sequence ws(gp, w);
            if (!separates(s, t, ws)) return true;
            r.verdict = Verdict::distinct;
            r.witness = ws;
            return false;
        });
    if (r.verdict == Verdict::distinct) {
        r.method = "witness-search";
    } else if (cap >= r.witness_bound) {
        r.verdict = Verdict::equal;
        r.method = "witness-search";
    } else {
        r.method = "cap-exhausted";
    }
    return r;
}

ClassComparison classes_equal(const Sequence& s, const Sequence& t, const Budget& budget) {
    if (s.group_ptr() != t.group_ptr()) throw InputError("sequences over different groups");
    CompletionEngine engine(s.group_ptr(), budget);
    return classes_equal(engine, s, t);
}

ClassId ClassSemigroup::class_of(const Sequence& s) const {
    ClassId c = identity;
    for (const auto& t : s.terms())
        for (std::uint32_t k = 0; k < t.count; ++k) c = add[c][generator_map[t.element]];
    return c;
}

namespace {

struct BasisHash {
    std::size_t operator()(const Basis& b) const {
        std::size_t h = b.size();
        for (const auto& m : b) {
            for (auto x : m.c) h = (h ^ x) * 1099511628211ull;
            h ^= h >> 29;
        }
        return h;
    }
};

ClassSemigroup abelian_classes(const GroupPtr& gp, const Budget& budget) {
    const auto& g = *gp;
    const std::size_t n = g.order();
    ClassSemigroup c;
    c.group = gp;
    c.add.assign(n, std::vector<ClassId>(n));
    for (std::size_t a = 0; a < n; ++a) {
        c.reps.push_back(a == 0 ? Sequence(gp) : Sequence::power_of(gp, static_cast<Element>(a), 1));
        c.generator_map.push_back(static_cast<ClassId>(a));
        c.accepting.push_back(a == 0);
        c.resolution.push_back({"abelian", 0});
        for (std::size_t b = 0; b < n; ++b)
            c.add[a][b] = g.mul(static_cast<Element>(a), static_cast<Element>(b));
    }
    // Cross-check the isomorphism with the general machinery: g ~ g·g·g^{-1}, and g ≁ g+1.
    CompletionEngine engine(gp, budget);
    for (std::size_t a = 1; a < n; ++a) {
        const auto e = static_cast<Element>(a);
        const Sequence one = Sequence::power_of(gp, e, 1);
        if (classes_equal(engine, one, Sequence::power_of(gp, e, 2).with(g.inverse(e))).verdict != Verdict::equal)
            throw VerificationFailure("abelian class table disagrees with completion bases at " + one.to_string());
        const Sequence other = a + 1 < n ? Sequence::power_of(gp, static_cast<Element>(a + 1), 1) : Sequence(gp);
        if (classes_equal(engine, one, other).verdict != Verdict::distinct)
            throw VerificationFailure("abelian class table disagrees with completion bases at " + one.to_string());
    }
    return c;
}

}  // namespace

ClassSemigroup build_class_semigroup(const GroupPtr& gp, const Budget& budget, ClassBuild mode) {
    const auto& g = *gp;
    const std::size_t n = g.order();
    if (n > budget.max_class_order) throw BudgetExceeded("class semigroup group order", budget.max_class_order);
    if (g.is_abelian() && mode == ClassBuild::automatic) return abelian_classes(gp, budget);

    CompletionEngine engine(gp, budget);
    std::vector<Basis> bases{engine.empty_basis()};
    std::unordered_map<Basis, ClassId, BasisHash> index{{bases[0], 0}};
    std::vector<std::vector<ClassId>> trans;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        trans.emplace_back(n);
        for (std::size_t x = 0; x < n; ++x) {
            Basis b = engine.step(bases[i], static_cast<Element>(x));
            auto [it, fresh] = index.emplace(b, static_cast<ClassId>(bases.size()));
            if (fresh) {
                if (bases.size() >= budget.max_classes) throw BudgetExceeded("classes", budget.max_classes);
                bases.push_back(std::move(b));
            }
            trans[i][x] = it->second;
        }
    }

    // Canonical representatives: walk multisets by length in lexicographic order.
    const std::size_t k = bases.size();
    std::vector<std::optional<std::vector<Element>>> rep(k);
    std::size_t found = 0;
    std::vector<Element> path;
    auto rec = [&](auto&& self, std::size_t left, std::size_t start, ClassId state) -> void {
        if (found == k) return;
        if (left == 0) {
            if (!rep[state]) {
                rep[state] = path;
                ++found;
            }
            return;
        }
        for (std::size_t x = start; x < n && found < k; ++x) {
            path.push_back(static_cast<Element>(x));
            self(self, left - 1, x, trans[state][x]);
            path.pop_back();
        }
    };
    for (std::size_t len = 0; found < k; ++len) rec(rec, len, 0, 0);

    std::vector<ClassId> order(k);
    for (ClassId i = 0; i < k; ++i) order[i] = i;
    std::vector<Sequence> seqs;
    for (auto& r : rep) seqs.emplace_back(gp, *r);
    std::sort(order.begin(), order.end(), [&](ClassId a, ClassId b) { return seqs[a] < seqs[b]; });
    std::vector<ClassId> renum(k);
    for (ClassId i = 0; i < k; ++i) renum[order[i]] = i;

    ClassSemigroup c;
    c.group = gp;
    for (ClassId i = 0; i < k; ++i) {
        c.reps.push_back(seqs[order[i]]);
        const Basis& b = bases[order[i]];
        c.accepting.push_back(b.front().len == 0);
        c.resolution.push_back({"completion-basis", b.size()});
    }
    c.identity = renum[0];
    for (std::size_t x = 0; x < n; ++x) c.generator_map.push_back(renum[trans[0][x]]);
    c.add.assign(k, std::vector<ClassId>(k));
    for (ClassId a = 0; a < k; ++a)
        for (ClassId b = 0; b < k; ++b) {
            ClassId s = order[a];
            for (auto x : *rep[order[b]]) s = trans[s][x];
            c.add[a][b] = renum[s];
        }
    return c;
}

std::size_t IdempotentLattice::index(ClassId e) const {
    auto it = std::lower_bound(idempotents.begin(), idempotents.end(), e);
    if (it == idempotents.end() || *it != e) throw InputError("class " + std::to_string(e) + " is not idempotent");
    return static_cast<std::size_t>(it - idempotents.begin());
}

IdempotentLattice idempotent_lattice(const ClassSemigroup& c) {
    IdempotentLattice l;
    for (ClassId a = 0; a < c.size(); ++a)
        if (c.sum(a, a) == a) l.idempotents.push_back(a);
    const std::size_t m = l.idempotents.size();
    l.rees_leq.assign(m, std::vector<char>(m, 0));
    ClassId smallest = c.identity;
    for (std::size_t i = 0; i < m; ++i) {
        smallest = c.sum(smallest, l.idempotents[i]);
        for (std::size_t j = 0; j < m; ++j)
            l.rees_leq[i][j] = c.sum(l.idempotents[i], l.idempotents[j]) == l.idempotents[i];
    }
    l.smallest = smallest;
    l.greatest = c.identity;
    for (auto e : l.idempotents)
        if (!l.leq(l.smallest, e) || !l.leq(e, l.greatest))
            throw VerificationFailure("idempotents have no smallest or greatest element");
    return l;
}

namespace {

using Ideal = std::vector<char>;

std::vector<Ideal> principal_ideals(const ClassSemigroup& c) {
    std::vector<Ideal> out(c.size(), Ideal(c.size(), 0));
    for (ClassId a = 0; a < c.size(); ++a)
        for (ClassId b = 0; b < c.size(); ++b) out[a][c.sum(a, b)] = 1;
    return out;
}

}  // namespace

HClassPartition h_classes(const ClassSemigroup& c) {
    const auto ideals = principal_ideals(c);
    const auto lat = idempotent_lattice(c);
    HClassPartition p;
    std::vector<char> assigned(c.size(), 0);
    for (auto e : lat.idempotents) {
        HClass h;
        h.idempotent = e;
        for (ClassId a = 0; a < c.size(); ++a)
            if (ideals[a] == ideals[e]) {
                if (assigned[a]) throw VerificationFailure("H-classes of two idempotents overlap");
                assigned[a] = 1;
                h.members.push_back(a);
            }
        std::map<ClassId, std::size_t> pos;
        for (std::size_t i = 0; i < h.members.size(); ++i) pos[h.members[i]] = i;
        h.table.assign(h.members.size(), std::vector<std::size_t>(h.members.size()));
        for (std::size_t i = 0; i < h.members.size(); ++i) {
            bool has_inverse = false;
            if (c.sum(h.members[i], e) != h.members[i]) throw VerificationFailure("idempotent is not neutral on its H-class");
            for (std::size_t j = 0; j < h.members.size(); ++j) {
                auto it = pos.find(c.sum(h.members[i], h.members[j]));
                if (it == pos.end()) throw VerificationFailure("H-class is not closed under addition");
                h.table[i][j] = it->second;
                has_inverse = has_inverse || it->first == e;
            }
            if (!has_inverse) throw VerificationFailure("H-class member without inverse");
        }
        p.classes.push_back(std::move(h));
    }
    for (ClassId a = 0; a < c.size(); ++a)
        if (!assigned[a]) p.unassigned.push_back(a);
    return p;
}

bool is_clifford(const ClassSemigroup& c) {
    for (ClassId a = 0; a < c.size(); ++a) {
        const ClassId twice = c.sum(a, a);
        bool regular = false;
        for (ClassId x = 0; x < c.size() && !regular; ++x) regular = c.sum(twice, x) == a;
        if (!regular) return false;
    }
    return true;
}

GroupPtr as_group(const HClass& h, const ClassSemigroup& c) {
    std::vector<std::string> names;
    for (auto m : h.members) names.push_back(c.reps[m].to_string());
    return group_from_table("H(" + c.reps[h.idempotent].to_string() + ")", h.table, names);
}

bool is_seminormality_counterexample(const Sequence& t) {
    return !is_product_one(t) && is_product_one(t.power(2)) && is_product_one(t.power(3));
}

SeminormalityResult is_seminormal_bounded(const GroupPtr& gp, std::size_t len_cap) {
    SeminormalityResult r;
    for (std::size_t len = 1; len <= len_cap && r.pass; ++len)
        for_each_multiset(gp->order(), len, [&](const std::vector<Element>& w) {
            ++r.checked;
            Sequence t(gp, w);
            if (!is_seminormality_counterexample(t)) return true;
            r.pass = false;
            r.counterexample = t;
            return false;
        });
    return r;
}

bool is_divisor_counterexample(const Sequence& s, const Sequence& t) {
    return s.divides(t) && is_product_one(s) && is_product_one(t) && !is_product_one(t.minus(s));
}

DivisorResult divisor_homomorphism_check(const GroupPtr& gp, std::size_t len_cap) {
    DivisorResult r;
    for (std::size_t len = 2; len <= len_cap && r.pass; ++len)
        for_each_multiset(gp->order(), len, [&](const std::vector<Element>& w) {
            Sequence t(gp, w);
            if (!is_product_one(t)) return true;
            ++r.checked;
            SubmultisetTable tab(t, kDefaultStates);
            for (std::size_t state = 1; state < tab.full(); ++state)
                if (tab.has_identity(state) && !tab.has_identity(tab.full() - state)) {
                    r.pass = false;
                    r.counterexample = std::make_pair(tab.subsequence(state), t);
                    return false;
                }
            return true;
        });
    return r;
}

CosetMap coset_map(const ClassSemigroup& c, const HClassPartition& hp, ClassId e) {
    const auto& g = *c.group;
    const HClass* h = nullptr;
    for (const auto& x : hp.classes)
        if (x.idempotent == e) h = &x;
    if (!h) throw InputError("class " + std::to_string(e) + " is not idempotent");

    CosetMap m;
    m.idempotent = e;
    m.members = h->members;
    // Every g occurring in a member of the class e, each with a completion into e.
    Sequence s0(c.group);
    ElementSet x;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (ClassId d = 0; d < c.size(); ++d)
            if (c.sum(c.generator_map[a], d) == e) {
                x.insert(static_cast<Element>(a));
                s0 = s0 * c.reps[d].with(static_cast<Element>(a));
                break;
            }
    if (c.class_of(s0) != e) throw VerificationFailure("maximal representative left its class");
    m.maximal_rep = s0;
    m.g0 = g.generated(x);
    ElementSet comms;
    m.g0.for_each([&](Element a) { m.g0.for_each([&](Element b) { comms.insert(g.commutator(a, b)); }); });
    m.g0_derived = g.generated(comms);

    std::set<ElementSet, decltype([](const ElementSet& a, const ElementSet& b) { return a.lex_less(b); })> seen;
    for (auto a : m.members) {
        const ElementSet p = product_set(c.reps[a]).members;
        Element first = 0;
        for (std::size_t i = 0; i < g.order(); ++i)
            if (p.contains(static_cast<Element>(i))) {
                first = static_cast<Element>(i);
                break;
            }
        if (p.empty() || !p.is_subset_of(m.g0) || g.left_mul(first, m.g0_derived) != p)
            throw VerificationFailure("π(" + c.reps[a].to_string() + ") is not a coset of G_0'");
        m.cosets.push_back(p);
        seen.insert(p);
    }
    for (std::size_t i = 0; i < m.members.size(); ++i)
        for (std::size_t j = 0; j < m.members.size(); ++j) {
            const ClassId s = c.sum(m.members[i], m.members[j]);
            const auto k = static_cast<std::size_t>(std::find(m.members.begin(), m.members.end(), s) - m.members.begin());
            if (k == m.members.size() || m.cosets[k] != g.product(m.cosets[i], m.cosets[j]))
                throw VerificationFailure("coset map is not a homomorphism");
        }
    m.injective = seen.size() == m.members.size();
    m.surjective = seen.size() * m.g0_derived.size() == m.g0.size();
    return m;
}

PonizovskyReport ponizovsky_decomposition(const ClassSemigroup& c) {
    if (!is_clifford(c)) throw InputError("the decomposition needs a Clifford class semigroup");
    const auto lat = idempotent_lattice(c);
    const auto hp = h_classes(c);
    const std::size_t n = lat.idempotents.size(), k = c.size();
    PonizovskyReport r;
    r.idempotents = lat.idempotents;
    auto fail = [](const std::string& what) { throw VerificationFailure("decomposition check failed: " + what); };

    std::vector<std::vector<char>> in_h(n, std::vector<char>(k, 0)), in_c(n, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (auto a : hp.classes[i].members) in_h[i][a] = 1;
        for (ClassId a = 0; a < k; ++a) in_c[i][c.sum(lat.idempotents[i], a)] = 1;
        std::vector<ClassId> ideal;
        for (ClassId a = 0; a < k; ++a)
            if (in_c[i][a]) ideal.push_back(a);
        r.ideals.push_back(std::move(ideal));
    }

    std::set<std::vector<ClassId>> images;
    for (ClassId a = 0; a < k; ++a) {
        std::vector<ClassId> t;
        for (auto e : lat.idempotents) t.push_back(c.sum(a, e));
        images.insert(std::move(t));
    }
    r.injective = images.size() == k;
    if (!r.injective) fail("the product map is not injective");
    ++r.checks;

    for (std::size_t i = 0; i < n; ++i) {
        const ClassId ei = lat.idempotents[i];
        // item 1
        for (auto t : hp.classes[i].members)
            for (std::size_t j = 0; j < n; ++j)
                if (lat.rees_leq[j][i] != in_h[j][c.sum(t, lat.idempotents[j])]) fail("Rees order versus H-class membership");
        ++r.checks;
        // item 2
        std::vector<char> u(k, 0);
        for (std::size_t j = 0; j < n; ++j)
            if (lat.rees_leq[j][i])
                for (auto a : hp.classes[j].members) u[a] = 1;
        if (u != in_c[i]) fail("C_i is not the union of the H-classes below e_i");
        ++r.checks;
        // units of C_i are H(e_i)
        std::vector<char> units(k, 0);
        for (auto a : r.ideals[i])
            for (auto b : r.ideals[i])
                if (c.sum(a, b) == ei) units[a] = 1;
        if (units != in_h[i]) fail("units of C_i differ from H(e_i)");
        ++r.checks;
        // non-units are the ideals of the strictly smaller idempotents
        std::vector<char> lower(k, 0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && lat.rees_leq[j][i])
                for (auto a : r.ideals[j]) lower[a] = 1;
        for (ClassId a = 0; a < k; ++a)
            if (lower[a] != (in_c[i][a] && !in_h[i][a])) fail("non-units of C_i");
        ++r.checks;
        // item 3: every element of H(e_i), and the zero when present, is some [T]+e_i
        std::vector<char> hit(k, 0);
        bool zero = false, has_zero = false;
        for (ClassId a = 0; a < k; ++a) {
            const ClassId s = c.sum(a, ei);
            if (in_h[i][s]) hit[s] = 1;
            else zero = true;
            has_zero = has_zero || (in_c[i][a] && !in_h[i][a]);
        }
        for (auto a : hp.classes[i].members)
            if (!hit[a]) fail("projection misses a unit");
        if (has_zero != zero) fail("projection misses the zero");
        ++r.checks;
    }
    // B(G) is the union of the kernels of the coset maps.
    for (std::size_t i = 0; i < n; ++i) {
        const auto m = coset_map(c, hp, lat.idempotents[i]);
        for (std::size_t j = 0; j < m.members.size(); ++j)
            if (static_cast<bool>(c.accepting[m.members[j]]) != m.cosets[j].contains(0))
                fail("product-one classes versus coset-map kernels");
    }
    ++r.checks;
    return r;
}

MembershipReport idempotent_membership(const ClassSemigroup& c, std::size_t len_cap) {
    MembershipReport r;
    for (std::size_t len = 0; len <= len_cap && !r.mismatch; ++len)
        for_each_multiset(c.group->order(), len, [&](const std::vector<Element>& w) {
            ++r.checked;
            Sequence s(c.group, w);
            const ClassId a = c.class_of(s);
            if (is_product_one(s) == (c.sum(a, a) == a)) return true;
            r.mismatch = s;
            return false;
        });
    return r;
}

namespace {

// Checks a map defined on representatives: well-defined on every rep·g, homomorphic, and
// surjective onto a target of the given size.
void check_class_map(const ClassSemigroup& c, ClassMapReport& r, const std::function<ClassId(const Sequence&)>& f,
                     const std::function<ClassId(ClassId, ClassId)>& target_sum) {
    r.source_size = c.size();
    for (ClassId a = 0; a < c.size(); ++a) r.image.push_back(f(c.reps[a]));
    r.well_defined = true;
    for (ClassId a = 0; a < c.size() && r.well_defined; ++a)
        for (std::size_t x = 0; x < c.group->order(); ++x)
            if (f(c.reps[a].with(static_cast<Element>(x))) != r.image[c.sum(a, c.generator_map[x])]) {
                r.well_defined = false;
                break;
            }
    r.homomorphic = true;
    for (ClassId a = 0; a < c.size() && r.homomorphic; ++a)
        for (ClassId b = 0; b < c.size(); ++b)
            if (r.image[c.sum(a, b)] != target_sum(r.image[a], r.image[b])) {
                r.homomorphic = false;
                break;
            }
    std::set<ClassId> covered(r.image.begin(), r.image.end());
    r.surjective = covered.size() == r.target_size;
    r.injective = covered.size() == c.size();
}

}  // namespace

ClassMapReport quotient_class_epimorphism(const ClassSemigroup& c, const Subgroup& n, const Budget& budget) {
    if (n.parent() != c.group) throw InputError("subgroup of a different group");
    if (!n.is_normal()) throw InputError("quotients need a normal subgroup");
    auto [q, theta] = quotient(c.group, n);
    const ClassSemigroup cq = build_class_semigroup(q, budget);
    ClassMapReport r;
    r.target_size = cq.size();
    check_class_map(
        c, r, [&](const Sequence& s) { return cq.class_of(s.mapped(theta)); },
        [&](ClassId a, ClassId b) { return cq.sum(a, b); });
    return r;
}

ClassMapReport product_class_isomorphism(const GroupPtr& g, const GroupPtr& h, const Budget& budget) {
    if (!h->is_abelian()) throw InputError("the second factor must be abelian");
    const GroupPtr gh = direct_product(g, h, budget.max_group_order);
    const ClassSemigroup cg = build_class_semigroup(g, budget);
    const ClassSemigroup ch = build_class_semigroup(h, budget);
    const ClassSemigroup cgh = build_class_semigroup(gh, budget);
    const std::size_t m = h->order();
    GroupHom p1{gh, g, {}}, p2{gh, h, {}};
    for (std::size_t x = 0; x < gh->order(); ++x) {
        p1.image.push_back(static_cast<Element>(x / m));
        p2.image.push_back(static_cast<Element>(x % m));
    }
    if (!p1.verify() || !p2.verify()) throw VerificationFailure("product projections are not homomorphisms");
    ClassMapReport r;
    r.target_size = cg.size() * ch.size();
    check_class_map(
        cgh, r,
        [&](const Sequence& s) {
            return static_cast<ClassId>(cg.class_of(s.mapped(p1)) * ch.size() + ch.class_of(s.mapped(p2)));
        },
        [&](ClassId a, ClassId b) {
            return static_cast<ClassId>(cg.sum(a / ch.size(), b / ch.size()) * ch.size() +
                                        ch.sum(a % ch.size(), b % ch.size()));
        });
    return r;
}

}  // namespace prodone
