#include "prodone/claims.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <set>

#include "prodone/errors.hpp"
#include "prodone/version.hpp"

namespace prodone {

using nlohmann::json;

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::unknown: return "unknown";
    }
    return "?";
}

GroupPtr ClaimContext::group(const std::string& descriptor, const Budget& budget) {
    auto it = groups_.find(descriptor);
    if (it != groups_.end()) return it->second;
    return groups_.emplace(descriptor, build_group(descriptor, budget)).first->second;
}

const AtomSet& ClaimContext::atoms(const std::string& descriptor, const Budget& budget) {
    auto it = atoms_.find(descriptor);
    if (it != atoms_.end()) return it->second;
    const GroupPtr g = group(descriptor, budget);
    if (auto cached = cache_.load_atoms(descriptor, g); cached && cached->max_len >= g->order())
        return atoms_.emplace(descriptor, std::move(*cached)).first->second;
    AtomSet a = enumerate_atoms(g, g->order(), budget);
    cache_.store_atoms(descriptor, a);
    return atoms_.emplace(descriptor, std::move(a)).first->second;
}

const ClassSemigroup& ClaimContext::classes(const std::string& descriptor, const Budget& budget) {
    auto it = classes_.find(descriptor);
    if (it != classes_.end()) return it->second;
    const GroupPtr g = group(descriptor, budget);
    if (auto cached = cache_.load_classes(descriptor, g)) return classes_.emplace(descriptor, std::move(*cached)).first->second;
    ClassSemigroup c = build_class_semigroup(g, budget);
    cache_.store_classes(descriptor, c, budget);
    return classes_.emplace(descriptor, std::move(c)).first->second;
}

namespace {

using Evidence = json;

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

json lens(const LengthSet& l) { return l.values(); }

json seq_list(const std::vector<Sequence>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(s.to_string());
    return out;
}

std::vector<Sequence> sorted_unique(std::vector<Sequence> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Element el(const GroupPtr& g, const std::string& name) {
    auto e = g->find(name);
    if (!e) throw InputError("no element " + name + " in " + g->name());
    return *e;
}

std::size_t large_d(ClaimContext& ctx, const std::string& desc, const Budget& b) {
    return ctx.atoms(desc, b).max_length();
}

const std::vector<std::string> kCriterionGroups = {"C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10",
                                                   "C2xC2xC4", "C2^5", "D6", "Q8", "D8", "D10"};
const std::vector<std::string> kSixGroups = {"C6", "C2xC2xC4", "C2^5", "D6", "Q8", "D8"};
const std::vector<std::string> kAbelianClassGroups = {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4"};

// ---- Davenport constants -------------------------------------------------------------------

Status cyclic_davenport(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (std::size_t n = 3; n <= 10; ++n) {
        const std::string desc = "C" + std::to_string(n);
        const auto g = ctx.group(desc, b);
        const std::size_t big = large_d(ctx, desc, b);
        const DavenportReport small = small_davenport(g, b);
        const bool pi_full = subsequence_products(small.witness_free).size() == n - 1;
        ok = ok && big == n && small.small == n - 1 && pi_full;
        ev["groups"].push_back({{"group", desc}, {"D", big}, {"d", small.small},
                                {"free_witness", small.witness_free.to_string()}, {"witness_covers_G_minus_1", pi_full}});
    }
    return verdict(ok);
}

struct MatrixEntry {
    const char* desc;
    const char* method;   // "exact", "element-order" or "product-one-free"
};

// Exact D where the atom enumeration is cheap; otherwise a certified atom of length ≥ 7.
const std::vector<MatrixEntry> kMatrix = {
    {"C2", "exact"}, {"C3", "exact"}, {"C4", "exact"}, {"C5", "exact"}, {"C6", "exact"}, {"C7", "exact"},
    {"C8", "exact"}, {"C9", "exact"}, {"C10", "exact"}, {"C2xC2", "exact"}, {"C2xC4", "exact"}, {"C2^3", "exact"},
    {"C3xC3", "exact"}, {"C2xC6", "exact"}, {"C2xC8", "exact"}, {"C4xC4", "exact"}, {"C2xC2xC4", "exact"},
    {"C2^4", "exact"}, {"C2^5", "exact"}, {"D6", "exact"}, {"D8", "exact"}, {"Q8", "exact"}, {"D10", "exact"},
    {"A4", "exact"},
    {"C11", "element-order"}, {"C12", "element-order"}, {"C13", "element-order"}, {"C14", "element-order"},
    {"C15", "element-order"}, {"C16", "element-order"}, {"C17", "element-order"}, {"C18", "element-order"},
    {"C19", "element-order"}, {"C20", "element-order"}, {"C21", "element-order"}, {"C22", "element-order"},
    {"C23", "element-order"}, {"C24", "element-order"}, {"C25", "element-order"}, {"C26", "element-order"},
    {"C27", "element-order"}, {"C28", "element-order"}, {"C29", "element-order"}, {"C30", "element-order"},
    {"C31", "element-order"}, {"C32", "element-order"}, {"C2xC10", "element-order"}, {"C2xC12", "element-order"},
    {"C2xC14", "element-order"}, {"C2xC16", "element-order"}, {"C4xC8", "element-order"},
    {"C2xC2xC8", "element-order"}, {"C3xC9", "element-order"}, {"D14", "element-order"}, {"D16", "element-order"},
    {"D18", "element-order"}, {"D20", "element-order"}, {"D22", "element-order"}, {"D24", "element-order"},
    {"D26", "element-order"}, {"D28", "element-order"}, {"D30", "element-order"}, {"D32", "element-order"},
    {"Dic16", "element-order"}, {"Dic20", "element-order"}, {"Dic24", "element-order"}, {"Dic28", "element-order"},
    {"Dic32", "element-order"},
    {"C3xC6", "product-one-free"}, {"C2xC2xC6", "product-one-free"}, {"C5xC5", "product-one-free"},
    {"C3^3", "product-one-free"}, {"C2xC4xC4", "product-one-free"}, {"C2xC2xC2xC4", "product-one-free"},
    {"D12", "product-one-free"}, {"Dic12", "product-one-free"}, {"S3xC3", "product-one-free"},
    {"S4", "product-one-free"}, {"A4xC2", "product-one-free"}, {"Q8xC3", "product-one-free"},
    {"D8xC3", "product-one-free"}, {"S3xC4", "product-one-free"}, {"C2xC2xS3", "product-one-free"},
    {"Q8xC4", "product-one-free"}, {"D8xC4", "product-one-free"}, {"C2xC2xD8", "product-one-free"},
    {"C2xC2xQ8", "product-one-free"},
};

// An atom of length ≥ 7, verified; nullopt if the method does not produce one.
std::optional<Sequence> long_atom(const GroupPtr& g, const std::string& method, const Budget& b) {
    if (method == "element-order") {
        for (std::size_t x = 1; x < g->order(); ++x)
            if (g->element_order(static_cast<Element>(x)) >= 7) {
                Sequence s = Sequence::power_of(g, static_cast<Element>(x),
                                                static_cast<std::uint32_t>(g->element_order(static_cast<Element>(x))));
                return is_atom(s, b.max_states) ? std::optional(s) : std::nullopt;
            }
        return std::nullopt;
    }
    // P product-one free of length 6 and p ∈ π(P): any split of P·p^{-1} into two product-one
    // parts leaves one inside P, so P·p^{-1} is an atom of length 7.
    auto p = find_product_one_free(g, 6, b.max_nodes);
    if (!p) return std::nullopt;
    ElementSet prods = product_set(*p, b.max_states).members;
    Element first = 0;
    prods.for_each([&](Element e) {
        if (first == 0) first = e;
    });
    Sequence s = p->with(g->inverse(first));
    return is_atom(s, b.max_states) ? std::optional(s) : std::nullopt;
}

Status davenport_six(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    std::set<std::string> six, expected(kSixGroups.begin(), kSixGroups.end());
    bool resolved = true, small_abelian = true;
    for (const auto& [desc, method] : kMatrix) {
        json row = {{"group", desc}, {"method", method}};
        if (std::string(method) == "exact") {
            const auto g = ctx.group(desc, b);
            const std::size_t d = large_d(ctx, desc, b);
            row["D"] = d;
            if (d == 6) six.insert(desc);
            if (d <= 5 && !g->is_abelian()) small_abelian = false;
        } else {
            const auto g = ctx.group(desc, b);
            auto a = long_atom(g, method, b);
            if (a) {
                row["D_at_least"] = a->length();
                row["atom"] = a->to_string();
            } else {
                resolved = false;
                row["D_at_least"] = nullptr;
            }
        }
        ev["matrix"].push_back(row);
    }
    ev["D_equals_6"] = std::vector<std::string>(six.begin(), six.end());
    ev["all_resolved"] = resolved;
    ev["D_at_most_5_only_abelian"] = small_abelian;
    return verdict(resolved && small_abelian && six == expected);
}

Status small_davenport_c2_5(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto g = ctx.group("C2^5", b);
    const auto r = small_davenport(g, b);
    ev["d"] = r.small;
    ev["free_witness"] = r.witness_free.to_string();
    // Registered instances of order ≥ 32 other than C2^5 carry d ≥ 6 certificates.
    bool ok = r.small == 5;
    for (const char* desc : {"C32", "C2xC16", "C4xC8", "C2xC2xC8", "C2xC4xC4", "C2xC2xC2xC4", "D32", "Dic32",
                             "Q8xC4", "D8xC4", "C2xC2xD8", "C2xC2xQ8", "S3xS3", "A4xC3"}) {
        const auto h = ctx.group(desc, b);
        auto p = find_product_one_free(h, 6, b.max_nodes);
        const bool free = p && p->length() == 6 && is_product_one_free(*p, b.max_states);
        ok = ok && free;
        ev["order_at_least_32"].push_back({{"group", desc}, {"free_of_length_6", p ? json(p->to_string()) : json(nullptr)}});
    }
    return verdict(ok);
}

Status full_sweep(ClaimContext&, const Budget&, Evidence& ev) {
    ev["reason"] = "needs a catalogue of all groups of order at least 32; only registered instances are checked";
    ev["see"] = "lemma-4.6.1";
    return Status::unknown;
}

Status small_davenport_d10(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto r = small_davenport(ctx.group("D10", b), b);
    ev["d"] = r.small;
    ev["free_witness"] = r.witness_free.to_string();
    return verdict(r.small == 5);
}

// ---- Dihedral groups -----------------------------------------------------------------------

Status dihedral(std::size_t n, ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const std::string desc = "D" + std::to_string(2 * n);
    const auto g = ctx.group(desc, b);
    const std::size_t d = large_d(ctx, desc, b);
    ev["D"] = d;

    ElementSet g0;
    g0.insert(el(g, "b"));
    g0.insert(el(g, "ab"));
    const auto restricted = enumerate_atoms(g, 2 * n, b, g0);
    const auto n32 = static_cast<std::uint32_t>(n);
    const Sequence s = Sequence::power_of(g, el(g, "b"), n32).with(el(g, "ab"), n32);
    const std::vector<Sequence> expected = sorted_unique(
        {Sequence::power_of(g, el(g, "b"), 2), Sequence::power_of(g, el(g, "ab"), 2), s});
    ev["restricted_atoms"] = seq_list(restricted.atoms);
    const bool census = restricted.atoms == expected;

    const LengthSet ls_inv = length_set(s * s.inverse(), b.max_states);
    const LengthSet ls_sq = length_set(s * s, b.max_states);
    ev["L(S*S^-1)"] = lens(ls_inv);
    ev["L(S*S)"] = lens(ls_sq);
    const LengthSet two_d{2, 2 * n};

    const Sequence t = Sequence::power_of(g, el(g, "a"), static_cast<std::uint32_t>(2 * n - 2)).with(el(g, "b"), 2);
    const bool t_atom = is_atom(t, b.max_states);
    const LengthSet lt = length_set(t * t.inverse(), b.max_states);
    ev["T"] = t.to_string();
    ev["T_is_atom"] = t_atom;
    ev["L(T*T^-1)"] = lens(lt);
    const bool strict = lt.includes(LengthSet{2, n + 2, 2 * n}) && lt != two_d;

    bool ok = d == 2 * n && census && ls_inv == two_d && ls_sq == two_d && t_atom && strict;
    if (n == 3) {
        // Item 4 for D6: an abelian G* with L(G*) = L(D6) has D(G*) = ρ_2 = 6, so G* is C6,
        // C2xC2xC4 or C2^5. Sets containing {2, 6} in L(G*) are exactly L(U·U^{-1}), |U| = 6.
        for (const char* other : {"C6", "C2xC2xC4", "C2^5"}) {
            const auto& atoms = ctx.atoms(other, b);
            std::set<std::uint64_t> sets;
            for (const auto& u : atoms.of_length(6)) sets.insert(length_set(u * u.inverse(), b.max_states).mask());
            const bool absent = !sets.count(lt.mask());
            json found = json::array();
            for (auto m : sets) found.push_back(lens(LengthSet(m)));
            ev["abelian_comparison"].push_back(
                {{"group", other}, {"D", atoms.max_length()}, {"sets_containing_2_and_6", found}, {"L(T*T^-1)_absent", absent}});
            ok = ok && absent && atoms.max_length() == 6;
        }
    }
    return verdict(ok);
}

Status odd_order_21(ClaimContext&, const Budget& b, Evidence& ev) {
    const auto g = metacyclic_group(7, 3, 2);
    ev["group"] = g->name();
    const AtomSet atoms = enumerate_atoms(g, g->order(), b);
    const auto m = check_2D_membership(atoms);
    ev["D"] = atoms.max_length();
    ev["two_D_member"] = m.member;
    return verdict(!m.member);
}

// ---- Lemma 4.2 -----------------------------------------------------------------------------

Status proper_subsequence(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"D6", "Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        const std::size_t d = large_d(ctx, desc, b);
        std::size_t checked = 0;
        std::optional<Sequence> bad;
        for_each_multiset(g->order(), d, [&](const std::vector<Element>& v) {
            ++checked;
            Sequence s(g, v);
            if (!has_proper_product_one_subsequence(s, b.max_states)) {
                bad = s;
                return false;
            }
            return true;
        });
        ok = ok && !bad;
        ev["non_abelian"].push_back({{"group", desc}, {"D", d}, {"sequences", checked},
                                     {"counterexample", bad ? json(bad->to_string()) : json(nullptr)}});
    }
    for (const char* desc : {"C6", "C2xC2xC4", "C2^5"}) {
        const auto& atoms = ctx.atoms(desc, b);
        const Sequence& u = atoms.atoms.back();
        const bool clean = !has_proper_product_one_subsequence(u, b.max_states);
        ok = ok && clean;
        ev["abelian"].push_back({{"group", desc}, {"atom", u.to_string()}, {"no_proper_product_one", clean}});
    }
    return verdict(ok);
}

Status abelianization_bound(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const auto& desc : kCriterionGroups) {
        const auto g = ctx.group(desc, b);
        const std::size_t d = large_d(ctx, desc, b);
        auto [q, proj] = quotient(g, commutator_subgroup(g));
        const std::size_t dq = enumerate_atoms(q, q->order(), b).max_length();
        ok = ok && dq <= d;
        ev["groups"].push_back({{"group", desc}, {"D", d}, {"D_abelianization", dq}, {"abelianization_order", q->order()}});
    }
    return verdict(ok);
}

// S = W·W^{-1} for some W: terms pair off as g·g^{-1} with no identity term.
bool inverse_paired(const Sequence& s) {
    const auto& g = s.group();
    for (const auto& t : s.terms()) {
        if (t.element == g.identity()) return false;
        const Element inv = g.inverse(t.element);
        if (inv == t.element ? t.count % 2 != 0 : s.count(inv) != t.count) return false;
    }
    return true;
}

// {2, D} ⊆ L(S) against the two forms of S: U·U^{-1} with U an atom of length D (as stated), and
// U·V with U, V atoms of length D and S = W·W^{-1} (what the length count forces).
Status two_d_reduction(bool literal, ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const std::map<std::string, bool> expected = {{"C6", true}, {"C2xC2xC4", false}, {"C2^5", true},
                                                  {"D6", true}, {"Q8", false}, {"D8", false}};
    bool ok = true;
    for (const auto& desc : kSixGroups) {
        const auto& atoms = ctx.atoms(desc, b);
        const std::size_t d = atoms.max_length();
        json row = {{"group", desc}, {"D", d}};
        bool good = true;
        const auto longest = atoms.of_length(d);
        row["length_D_atoms"] = longest.size();
        // U·U^{-1} always has 2 and D among its lengths.
        for (const auto& u : longest) good = good && length_set(u * u.inverse(), b.max_states).includes(LengthSet{2, d});
        if (!literal) {
            const auto m = check_2D_membership(atoms, b.max_products);
            row["two_D_member"] = m.member;
            row["witness"] = m.witness ? json(m.witness->to_string()) : json(nullptr);
            good = good && m.member == expected.at(desc);
        }
        if (atoms.atoms.size() <= 800) {
            std::set<Sequence> squares;
            for (const auto& u : longest) squares.insert(u * u.inverse());
            std::size_t hits = 0;
            for (const auto& pl : two_atom_products(atoms, b.max_products)) {
                if (!pl.lengths.includes(LengthSet{2, d})) continue;
                ++hits;
                const bool shaped = literal ? squares.count(pl.product) > 0
                                            : pl.product.length() == 2 * d && inverse_paired(pl.product);
                if (!shaped) {
                    good = false;
                    if (!row.contains("counterexample")) {
                        row["counterexample"] = pl.product.to_string();
                        row["counterexample_lengths"] = lens(pl.lengths);
                    }
                }
            }
            row["products_with_2_and_D"] = hits;
        }
        row["holds"] = good;
        ok = ok && good;
        ev["groups"].push_back(row);
    }
    return verdict(ok);
}

Status abelian_two_d(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2^3", "C2^4", "C2xC4", "C3xC3", "C2xC6",
                             "C2xC2xC4"}) {
        const auto g = ctx.group(desc, b);
        const auto& atoms = ctx.atoms(desc, b);
        const std::size_t d = atoms.max_length();
        bool only = true;   // every L ⊇ {2, D} equals {2, D}
        for (const auto& u : atoms.of_length(d)) only = only && length_set(u * u.inverse(), b.max_states) == LengthSet{2, d};
        const bool member = check_2D_membership(atoms).member;
        const bool shape = g->exponent() == g->order() || g->exponent() == 2;
        ok = ok && only == member && member == shape;
        ev["groups"].push_back({{"group", desc}, {"D", d}, {"a_only_2_D", only}, {"b_member", member},
                                {"c_cyclic_or_elementary_2", shape}});
    }
    return verdict(ok);
}

Status counting_bound(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const auto& desc : kCriterionGroups) {
        const auto g = ctx.group(desc, b);
        const std::size_t big = large_d(ctx, desc, b);
        const std::size_t d = small_davenport(g, b).small;
        std::size_t bound = 1, binom = 1, fact = 1;
        for (std::size_t k = 1; k <= d; ++k) {
            binom = binom * (d - k + 1) / k;
            fact *= k;
            bound += binom * fact;
        }
        ok = ok && big <= g->order() && g->order() <= bound;
        ev["groups"].push_back({{"group", desc}, {"D", big}, {"d", d}, {"order", g->order()}, {"bound", bound}});
    }
    return verdict(ok);
}

Status universal_sets(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"C6", "S3", "Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        for (auto [k, y] : {std::pair<std::size_t, std::size_t>{1, 0}, {1, 1}, {2, 0}}) {
            const auto w = universal_witness(g, y, k, 10);
            const bool good = w.witness && w.witness->length() <= 10 && length_set(*w.witness, b.max_states) == w.target;
            ok = ok && good;
            ev["witnesses"].push_back({{"group", desc}, {"target", lens(w.target)}, {"method", w.method},
                                       {"witness", w.witness ? json(w.witness->to_string()) : json(nullptr)}});
        }
    }
    return verdict(ok);
}

// ---- Davenport constant six ----------------------------------------------------------------

std::vector<Sequence> parse_all(const GroupPtr& g, std::initializer_list<const char*> lits) {
    std::vector<Sequence> out;
    for (auto l : lits) out.push_back(parse_sequence(g, l));
    return sorted_unique(out);
}

const std::vector<std::string> kQuaternionUnits = {"I", "J", "K", "-I", "-J", "-K"};

std::string negate(const std::string& q) { return q[0] == '-' ? q.substr(1) : "-" + q; }

Status length_six_atoms(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto d8 = ctx.group("D8", b);
    const auto d8_six = ctx.atoms("D8", b).of_length(6);
    const auto d8_expected = parse_all(d8, {"a^4,b,a2b", "a3^4,b,a2b", "a^4,ab,a3b", "a3^4,ab,a3b"});
    ev["D8_length_6"] = seq_list(d8_six);

    const auto q8 = ctx.group("Q8", b);
    std::vector<Sequence> fam;
    for (const auto& g1 : kQuaternionUnits)
        for (const auto& g2 : kQuaternionUnits)
            if (g2 != g1 && g2 != negate(g1))
                fam.push_back(Sequence::power_of(q8, el(q8, g1), 4).with(el(q8, g2), 2));
    fam = sorted_unique(fam);
    const auto q8_six = ctx.atoms("Q8", b).of_length(6);
    ev["Q8_length_6_count"] = q8_six.size();
    ev["Q8_family_count"] = fam.size();

    const auto m_d8 = check_2D_membership(ctx.atoms("D8", b));
    const auto m_q8 = check_2D_membership(ctx.atoms("Q8", b));
    const auto m_d6 = check_2D_membership(ctx.atoms("D6", b));
    ev["two_6_in_L(D8)"] = m_d8.member;
    ev["two_6_in_L(Q8)"] = m_q8.member;
    ev["two_6_in_L(D6)"] = m_d6.member;
    if (m_d6.witness) ev["D6_witness"] = m_d6.witness->to_string();
    return verdict(d8_six == d8_expected && q8_six == fam && fam.size() == 24 && !m_d8.member && !m_q8.member &&
                   m_d6.member);
}

Status two_five(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto q8 = ctx.group("Q8", b);
    const Element me = el(q8, "-E");
    std::vector<Sequence> f1, f2, f3;
    for (const auto& g1 : kQuaternionUnits)
        for (const auto& g2 : kQuaternionUnits) {
            if (g2 == g1 || g2 == negate(g1)) continue;
            f2.push_back(Sequence::power_of(q8, el(q8, g1), 2).with(el(q8, g2), 2).with(me));
            for (const auto& g3 : kQuaternionUnits)
                if (g3 != g2 && g3 != g1 && g3 != negate(g1))
                    f1.push_back(Sequence::power_of(q8, el(q8, g1), 3).with(el(q8, g2)).with(el(q8, g3)));
        }
    for (const char* g1 : {"I", "J", "K"})
        for (const char* g2 : {"I", "J", "K"})
            if (std::string(g1) != g2)
                f3.push_back(Sequence(q8, std::vector<Element>{el(q8, g1), el(q8, negate(g1)), el(q8, g2),
                                                               el(q8, negate(g2)), me}));
    f1 = sorted_unique(f1);
    f2 = sorted_unique(f2);
    f3 = sorted_unique(f3);
    std::vector<Sequence> all = f1;
    all.insert(all.end(), f2.begin(), f2.end());
    all.insert(all.end(), f3.begin(), f3.end());
    const std::size_t family_total = all.size();
    all = sorted_unique(all);
    const auto five = ctx.atoms("Q8", b).of_length(5);
    ev["Q8_length_5_count"] = five.size();
    ev["family_sizes"] = {f1.size(), f2.size(), f3.size()};
    // The families describe the shape of an atom; some members (g1^[3]·g2·(-g2)) are not atoms.
    auto met = [&](const std::vector<Sequence>& f) {
        std::size_t k = 0;
        for (const auto& s : f) k += std::binary_search(five.begin(), five.end(), s);
        return k;
    };
    ev["atoms_per_family"] = {met(f1), met(f2), met(f3)};
    std::vector<Sequence> outside;
    for (const auto& s : five)
        if (!std::binary_search(all.begin(), all.end(), s)) outside.push_back(s);
    ev["atoms_outside_families"] = seq_list(outside);
    const bool families = outside.empty() && family_total == all.size() && met(f1) && met(f2) && met(f3) &&
                          met(f1) + met(f2) + met(f3) == five.size();

    // 2 ∈ L(S) forces S to be a product of two atoms, so these lists decide {2,5} ∈ L(G).
    const LengthSet target{2, 5};
    std::size_t q8_pairs = 0;
    bool q8_has = false;
    for (const auto& pl : two_atom_products(ctx.atoms("Q8", b), b.max_products)) {
        ++q8_pairs;
        q8_has = q8_has || pl.lengths == target;
    }
    ev["Q8_two_atom_products"] = q8_pairs;
    ev["two_5_in_L(Q8)"] = q8_has;

    std::optional<Sequence> abelian;
    for (const auto& pl : two_atom_products(ctx.atoms("C2xC2xC4", b), b.max_products))
        if (pl.lengths == target) {
            abelian = pl.product;
            break;
        }
    ev["C2xC2xC4_witness"] = abelian ? json(abelian->to_string()) : json(nullptr);

    const auto d8 = ctx.group("D8", b);
    const Sequence s = parse_sequence(d8, "a2,b^2,ab^2");
    const bool s_atom = is_atom(s, b.max_states);
    const LengthSet ls = length_set(s * s.inverse(), b.max_states);
    ev["D8_S"] = s.to_string();
    ev["D8_S_is_atom"] = s_atom;
    ev["L(S*S^-1)"] = lens(ls);
    return verdict(families && !q8_has && abelian && s_atom && ls == target);
}

Status two_three_six(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto d8 = ctx.group("D8", b);
    const Sequence s = parse_sequence(d8, "a^4,b,a2b");
    const bool s_atom = is_atom(s, b.max_states);
    const LengthSet ls = length_set(s * s.inverse(), b.max_states);
    ev["S_is_atom"] = s_atom;
    ev["L(S*S^-1)"] = lens(ls);
    const LengthSet target{2, 3, 6};
    std::size_t pairs = 0;
    std::optional<Sequence> hit;
    for (const auto& pl : two_atom_products(ctx.atoms("C2xC2xC4", b), b.max_products)) {
        ++pairs;
        if (pl.lengths.includes(target) && !hit) hit = pl.product;
    }
    ev["C2xC2xC4_two_atom_products"] = pairs;
    ev["C2xC2xC4_counterexample"] = hit ? json(hit->to_string()) : json(nullptr);
    return verdict(s_atom && ls.includes(target) && !hit);
}

Status rho_two(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const auto& desc : kCriterionGroups) {
        const auto& atoms = ctx.atoms(desc, b);
        // Exhaustive over pairs when cheap; otherwise a pair attaining the bound ρ_2 ≤ D.
        const std::size_t pairs = atoms.atoms.size() <= 800 ? b.max_products : 0;
        const Rho2 r = rho2(atoms, pairs);
        ok = ok && r.value == atoms.max_length();
        ev["groups"].push_back({{"group", desc}, {"D", atoms.max_length()}, {"rho2", r.value}, {"exhaustive", r.exhaustive},
                                {"witness", r.witness ? json(r.witness->product.to_string()) : json(nullptr)}});
    }
    return verdict(ok);
}

// ---- Class semigroups ----------------------------------------------------------------------

GroupPtr table_group(const ClassSemigroup& c) {
    std::vector<std::vector<std::size_t>> t(c.size(), std::vector<std::size_t>(c.size()));
    for (ClassId a = 0; a < c.size(); ++a)
        for (ClassId x = 0; x < c.size(); ++x) t[a][x] = c.sum(a, x);
    return group_from_table("classes", std::move(t));
}

bool is_group_table(const ClassSemigroup& c) {
    for (ClassId a = 0; a < c.size(); ++a) {
        bool inv = false;
        for (ClassId x = 0; x < c.size() && !inv; ++x) inv = c.sum(a, x) == c.identity;
        if (!inv) return false;
    }
    return true;
}

Status abelian_class_groups(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const auto& desc : kAbelianClassGroups) {
        const auto g = ctx.group(desc, b);
        const ClassSemigroup c = build_class_semigroup(g, b, ClassBuild::general);
        const bool group = is_group_table(c);
        bool iso = false, by_product = true;
        if (group) {
            iso = isomorphic(table_group(c), g);
            // [S] is determined by σ(S).
            for (ClassId i = 0; i < c.size(); ++i) {
                const Element p = product_set(c.reps[i]).members.members().front();
                by_product = by_product && c.generator_map[p] == i;
            }
        }
        ok = ok && group && iso && by_product && c.size() == g->order();
        ev["abelian"].push_back({{"group", desc}, {"classes", c.size()}, {"is_group", group}, {"isomorphic", iso},
                                 {"class_is_product", by_product}});
    }
    for (const char* desc : {"S3", "Q8", "D8"}) {
        const auto& c = ctx.classes(desc, b);
        const bool group = is_group_table(c);
        ok = ok && !group;
        ev["non_abelian"].push_back({{"group", desc}, {"classes", c.size()}, {"is_group", group}});
    }
    return verdict(ok);
}

Status divisor_hom(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const auto& desc : kAbelianClassGroups) {
        const auto r = divisor_homomorphism_check(ctx.group(desc, b), 8);
        ok = ok && r.pass;
        ev["abelian"].push_back({{"group", desc}, {"cap", 8}, {"pass", r.pass}, {"checked", r.checked}});
    }
    const auto q8 = ctx.group("Q8", b);
    const Sequence s = parse_sequence(q8, "I^4"), t = parse_sequence(q8, "I^4,J^2");
    const bool paper_pair = is_divisor_counterexample(s, t);
    ev["Q8_pair"] = {s.to_string(), t.to_string()};
    ev["Q8_pair_is_counterexample"] = paper_pair;
    ok = ok && paper_pair;
    for (const char* desc : {"Q8", "D8"}) {
        const auto r = divisor_homomorphism_check(ctx.group(desc, b), 6);
        const bool found = !r.pass && r.counterexample && is_divisor_counterexample(r.counterexample->first, r.counterexample->second);
        ok = ok && found;
        ev["non_abelian"].push_back({{"group", desc},
                                     {"counterexample", found ? json({r.counterexample->first.to_string(),
                                                                      r.counterexample->second.to_string()})
                                                              : json(nullptr)}});
    }
    return verdict(ok);
}

Status clifford_seminormal(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    std::vector<std::string> groups(kAbelianClassGroups);
    for (const char* d : {"S3", "Q8", "D8"}) groups.push_back(d);
    for (const auto& desc : groups) {
        const auto& c = ctx.classes(desc, b);
        const bool cl = is_clifford(c);
        const auto r = is_seminormal_bounded(ctx.group(desc, b), 6);
        // A counterexample disproves seminormality outright; passing is evidence up to the cap.
        const bool agree = cl == r.pass && (r.pass || is_seminormality_counterexample(*r.counterexample));
        ok = ok && agree;
        ev["groups"].push_back({{"group", desc}, {"clifford", cl}, {"seminormal_to_cap_6", r.pass},
                                {"counterexample", r.counterexample ? json(r.counterexample->to_string()) : json(nullptr)}});
    }
    return verdict(ok);
}

Status ponizovsky(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    for (const char* desc : {"Q8", "D8"}) {
        const auto r = ponizovsky_decomposition(ctx.classes(desc, b));
        json ideals = json::array();
        for (const auto& i : r.ideals) ideals.push_back(i.size());
        ev["groups"].push_back({{"group", desc}, {"idempotents", r.idempotents}, {"ideal_sizes", ideals},
                                {"injective", r.injective}, {"checks", r.checks}});
        if (!r.injective) return Status::fail;
    }
    return Status::pass;
}

std::size_t derived_size(const GroupPtr& g) { return g->commutator_subgroup().size(); }

Status clifford_derived(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    std::vector<std::string> groups(kAbelianClassGroups);
    for (const char* d : {"S3", "Q8", "D8", "D10"}) groups.push_back(d);
    for (const auto& desc : groups) {
        const auto& c = ctx.classes(desc, b);
        const std::size_t dsz = derived_size(ctx.group(desc, b));
        const bool cl = is_clifford(c);
        ok = ok && cl == (dsz <= 2);
        ev["groups"].push_back({{"group", desc}, {"derived_order", dsz}, {"classes", c.size()}, {"clifford", cl}});
    }
    return verdict(ok);
}

Status cor_clifford(const char* desc, ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto g = ctx.group(desc, b);
    const auto& c = ctx.classes(desc, b);
    const bool cl = is_clifford(c);
    const auto sn = is_seminormal_bounded(g, 6);
    const auto mem = idempotent_membership(c, 6);
    ev["derived_order"] = derived_size(g);
    ev["clifford"] = cl;
    ev["seminormal_to_cap_6"] = sn.pass;
    ev["membership_checked"] = mem.checked;
    ev["membership_mismatch"] = mem.mismatch ? json(mem.mismatch->to_string()) : json(nullptr);
    return verdict(derived_size(g) <= 2 && cl && sn.pass && !mem.mismatch);
}

Status cor_not_clifford(const char* desc, const char* known, ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto g = ctx.group(desc, b);
    const auto& c = ctx.classes(desc, b);
    const bool cl = is_clifford(c);
    const auto sn = is_seminormal_bounded(g, 4);
    ev["derived_order"] = derived_size(g);
    ev["classes"] = c.size();
    ev["clifford"] = cl;
    ev["search_counterexample"] = sn.counterexample ? json(sn.counterexample->to_string()) : json(nullptr);
    bool ok = derived_size(g) > 2 && !cl && sn.counterexample && is_seminormality_counterexample(*sn.counterexample);
    if (known) {
        const Sequence t = parse_sequence(g, known);
        const bool k = is_seminormality_counterexample(t);
        ev["counterexample"] = t.to_string();
        ev["counterexample_verified"] = k;
        ok = ok && k;
    }
    return verdict(ok);
}

Status idempotent_products(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"S3", "Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        const auto& c = ctx.classes(desc, b);
        const auto lat = idempotent_lattice(c);
        auto less = [](const ElementSet& x, const ElementSet& y) { return x.lex_less(y); };
        std::set<ElementSet, decltype(less)> from_idempotents(less), from_subgroups(less);
        bool generated = true;
        for (auto e : lat.idempotents) {
            const ElementSet p = product_set(c.reps[e]).members;
            from_idempotents.insert(p);
            // The recipe subgroup ⟨supp S⟩ has p as its commutator subgroup.
            const auto h = generated_subgroup(g, c.reps[e].support());
            generated = generated && commutator_subgroup(subgroup_as_group(h).first).size() == p.size() &&
                        p.is_subset_of(g->commutator_subgroup());
        }
        for (const auto& h : subgroups(g, b.max_subgroup_order)) {
            auto [hg, inc] = subgroup_as_group(h);
            ElementSet image;
            commutator_subgroup(hg).members().for_each([&](Element x) { image.insert(inc(x)); });
            from_subgroups.insert(image);
        }
        const bool same = std::equal(from_idempotents.begin(), from_idempotents.end(), from_subgroups.begin(),
                                     from_subgroups.end());
        ok = ok && same && generated && from_idempotents.size() == from_subgroups.size();
        ev["groups"].push_back({{"group", desc}, {"idempotents", lat.idempotents.size()},
                                {"distinct_products", from_idempotents.size()},
                                {"distinct_subgroup_commutators", from_subgroups.size()}, {"support_recipe", generated}});
    }
    return verdict(ok);
}

Status coset_maps(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"S3", "Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        const auto& c = ctx.classes(desc, b);
        const auto lat = idempotent_lattice(c);
        const auto hp = h_classes(c);
        json rows = json::array();
        for (auto e : lat.idempotents) {
            const CosetMap m = coset_map(c, hp, e);
            json row = {{"idempotent", c.reps[e].to_string()}, {"G0_order", m.g0.size()},
                        {"G0_derived_order", m.g0_derived.size()}, {"H_order", m.members.size()},
                        {"injective", m.injective}, {"surjective", m.surjective}};
            if (e == lat.smallest) {
                const bool good = m.g0 == g->all() && m.injective && m.surjective;
                row["smallest"] = good;
                ok = ok && good;
            }
            if (e == lat.greatest) {
                const bool good = m.g0 == g->center() && m.injective && m.surjective;
                row["greatest"] = good;
                ok = ok && good;
            }
            rows.push_back(row);
        }
        ev["groups"].push_back({{"group", desc}, {"idempotents", rows}});
    }
    // The two named cases for Q8.
    const auto& c = ctx.classes("Q8", b);
    const auto lat = idempotent_lattice(c);
    const auto hp = h_classes(c);
    auto h_of = [&](ClassId e) -> const HClass& {
        return *std::find_if(hp.classes.begin(), hp.classes.end(), [&](const HClass& h) { return h.idempotent == e; });
    };
    const bool small_klein = isomorphic(as_group(h_of(lat.smallest), c), build_group("C2xC2"));
    const bool identity_c2 = lat.greatest == c.identity && isomorphic(as_group(h_of(c.identity), c), build_group("C2"));
    ev["Q8_H_smallest_is_C2xC2"] = small_klein;
    ev["Q8_H_identity_is_C2"] = identity_c2;
    return verdict(ok && small_klein && identity_c2);
}

Status h_class_cases(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        const auto& c = ctx.classes(desc, b);
        const auto hp = h_classes(c);
        const auto lat = idempotent_lattice(c);
        const Subgroup gd = commutator_subgroup(g);
        const auto ab = quotient(g, gd).first;
        const auto z = subgroup_as_group(center(g)).first;
        json rows = json::array();
        for (auto e : lat.idempotents) {
            const CosetMap m = coset_map(c, hp, e);
            const auto& h = *std::find_if(hp.classes.begin(), hp.classes.end(), [&](const HClass& x) { return x.idempotent == e; });
            const GroupPtr hg = as_group(h, c);
            const auto [g0, inc] = subgroup_as_group(Subgroup(g, m.g0));
            const ElementSet pi = product_set(m.maximal_rep).members;
            json row = {{"idempotent", c.reps[e].to_string()}, {"maximal_rep", m.maximal_rep.to_string()},
                        {"H_order", h.members.size()}};
            bool good = m.injective && m.surjective;
            if (pi == g->commutator_subgroup()) {
                row["case"] = "pi-is-derived";
                good = good && isomorphic(hg, ab);
            } else if (e == c.identity) {
                row["case"] = "identity";
                good = good && isomorphic(hg, z);
            } else if (pi.size() == 1) {
                row["case"] = "pi-trivial";
                good = good && g0->is_abelian() && isomorphic(hg, g0);
                // Maximality among abelian subgroups, under the stated side condition.
                const ElementSet supp = m.maximal_rep.support();
                bool condition = true;
                for (std::size_t x = 0; x < g->order(); ++x) {
                    bool commutes = true, off_center = true;
                    supp.for_each([&](Element s) {
                        commutes = commutes && g->commute(static_cast<Element>(x), s);
                        off_center = off_center && !g->center().contains(g->mul(static_cast<Element>(x), s));
                    });
                    if (commutes && off_center) condition = false;
                }
                if (condition) {
                    bool maximal = true;
                    for (const auto& s : subgroups(g, b.max_subgroup_order))
                        if (s.size() > m.g0.size() && m.g0.is_subset_of(s.members()) &&
                            subgroup_as_group(s).first->is_abelian())
                            maximal = false;
                    row["maximal_abelian"] = maximal;
                    good = good && maximal;
                }
            } else {
                row["case"] = "other";
            }
            row["holds"] = good;
            ok = ok && good;
            rows.push_back(row);
        }
        ev["groups"].push_back({{"group", desc}, {"idempotents", rows}});
    }
    return verdict(ok);
}

Status derived_two_lemma(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    for (const char* desc : {"Q8", "D8"}) {
        const auto g = ctx.group(desc, b);
        const auto& c = ctx.classes(desc, b);
        const auto lat = idempotent_lattice(c);
        bool odd_central = true, inverse_pair = true, comparable = true, equivalent = true;
        auto power_class = [&](Element x) {
            return c.class_of(Sequence::power_of(g, x, static_cast<std::uint32_t>(g->element_order(x))));
        };
        for (std::size_t i = 0; i < g->order(); ++i) {
            const auto x = static_cast<Element>(i);
            if (g->element_order(x) % 2 == 1) odd_central = odd_central && g->center().contains(x);
            inverse_pair = inverse_pair && c.class_of(Sequence(g, std::vector<Element>{x, g->inverse(x)})) == power_class(x);
        }
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < g->order(); ++i)
            for (std::size_t j = 0; j < g->order(); ++j) {
                const auto x = static_cast<Element>(i), y = static_cast<Element>(j);
                if (!g->commute(x, y)) continue;
                ++pairs;
                const ClassId ex = power_class(x), ey = power_class(y);
                comparable = comparable && (lat.leq(ex, ey) || lat.leq(ey, ex));
                bool same_centralizer = true;
                for (std::size_t k = 0; k < g->order(); ++k)
                    same_centralizer = same_centralizer &&
                                       g->commute(static_cast<Element>(k), x) == g->commute(static_cast<Element>(k), y);
                const bool a = ex == ey, c_ = g->center().contains(g->mul(x, y));
                equivalent = equivalent && a == same_centralizer && a == c_;
            }
        ok = ok && odd_central && inverse_pair && comparable && equivalent && derived_size(g) == 2;
        ev["groups"].push_back({{"group", desc}, {"odd_order_central", odd_central}, {"g_ginv_equals_power", inverse_pair},
                                {"commuting_pairs", pairs}, {"comparable", comparable}, {"abc_equivalent", equivalent}});
    }
    return verdict(ok);
}

Status quotient_maps(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    bool ok = true;
    struct Case {
        const char* desc;
        const char* normal;
    };
    for (auto [desc, normal] : {Case{"Q8", "center"}, Case{"S3", "A3"}, Case{"D8", "derived"}}) {
        const auto g = ctx.group(desc, b);
        const Subgroup n = std::string(normal) == "center" ? center(g) : commutator_subgroup(g);
        const auto& c = ctx.classes(desc, b);
        const auto r = quotient_class_epimorphism(c, n, b);
        bool good = r.well_defined && r.homomorphic && r.surjective;
        json row = {{"group", desc}, {"normal", normal}, {"normal_order", n.size()}, {"source_classes", r.source_size},
                    {"target_classes", r.target_size}, {"well_defined", r.well_defined}, {"homomorphic", r.homomorphic},
                    {"surjective", r.surjective}};
        // Seminormal source: the quotient's and the subgroup's class semigroups are Clifford.
        if (is_clifford(c)) {
            const auto q = quotient(g, n).first;
            const auto sub = subgroup_as_group(n).first;
            const bool qc = is_clifford(build_class_semigroup(q, b)), sc = is_clifford(build_class_semigroup(sub, b));
            row["quotient_clifford"] = qc;
            row["subgroup_clifford"] = sc;
            good = good && qc && sc;
        }
        ok = ok && good;
        ev["cases"].push_back(row);
    }
    return verdict(ok);
}

Status product_map(ClaimContext& ctx, const Budget& b, Evidence& ev) {
    const auto g = ctx.group("S3", b), h = ctx.group("C2", b);
    const auto r = product_class_isomorphism(g, h, b);
    const std::size_t s3 = ctx.classes("S3", b).size();
    ev["source_classes"] = r.source_size;
    ev["target_classes"] = r.target_size;
    ev["S3_classes"] = s3;
    ev["well_defined"] = r.well_defined;
    ev["homomorphic"] = r.homomorphic;
    ev["bijective"] = r.surjective && r.injective;
    return verdict(r.well_defined && r.homomorphic && r.surjective && r.injective && r.source_size == 2 * s3);
}

Budget with_class_order(std::size_t n) {
    Budget b;
    b.max_class_order = n;
    return b;
}

std::vector<Claim> make_registry() {
    std::vector<Claim> r;
    auto add = [&](std::string id, std::string desc, std::vector<std::string> inst, ClaimCheck f, Budget b = {},
                   bool optional = false) {
        r.push_back({std::move(id), std::move(desc), std::move(inst), b, optional, std::move(f)});
    };
    add("lemma-2.2.3", "d(C_n) + 1 = D(C_n) = n for n in [3,10]", {"C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"},
        cyclic_davenport);
    add("lemma-4.6.2", "D(G) = 6 for exactly C6, C2xC2xC4, C2^5, D6, Q8, D8 in the order-32 matrix", {"matrix"},
        davenport_six);
    add("lemma-4.6.1", "d(C2^5) = 5 and registered groups of order >= 32 have d(G) >= 6", {"C2^5", "order>=32"},
        small_davenport_c2_5);
    add("lemma-4.6.1-sweep", "every group of order >= 32 other than C2^5 has d(G) >= 6", {"all groups"}, full_sweep, {},
        true);
    add("lemma-4.6-case2", "d(D10) = 5", {"D10"}, small_davenport_d10);
    add("thm-4.4-n3", "D6: D = 6, A({b,ab}), L(S*S^-1) = {2,6}, {2,5,6} in L(T*T^-1), L(D6) differs from abelian L",
        {"D6", "C6", "C2xC2xC4", "C2^5"}, [](ClaimContext& c, const Budget& b, Evidence& e) { return dihedral(3, c, b, e); });
    add("thm-4.4-n5", "D10: D = 10, A({b,ab}), L(S*S^-1) = {2,10}, {2,7,10} in L(T*T^-1)", {"D10"},
        [](ClaimContext& c, const Budget& b, Evidence& e) { return dihedral(5, c, b, e); });
    add("thm-4.4.1-order21", "{2, D(G)} not in L(G) for the non-abelian group of order 21", {"C7:C3"}, odd_order_21, {},
        true);
    add("lemma-4.2.1", "length-D sequences have proper product-one subsequences iff G is non-abelian",
        {"D6", "Q8", "D8", "C6", "C2xC2xC4", "C2^5"}, proper_subsequence);
    add("lemma-4.2.2", "D(G/G') <= D(G)", kCriterionGroups, abelianization_bound);
    add("lemma-4.2.3", "{2, D} in L(S) iff S = U*V, atoms of length D, S = W*W^-1; decides {2, D} in L(G)", kSixGroups,
        [](ClaimContext& c, const Budget& b, Evidence& e) { return two_d_reduction(false, c, b, e); });
    add("lemma-4.2.3-as-stated", "{2, D} in L(S) iff S = U*U^-1 for an atom U of length D", kSixGroups,
        [](ClaimContext& c, const Budget& b, Evidence& e) { return two_d_reduction(true, c, b, e); }, {}, true);
    add("lemma-4.3", "abelian: L with {2,D} equal {2,D} iff {2,D} in L(G) iff cyclic or elementary 2-group",
        {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2^3", "C2^4", "C2xC4", "C3xC3", "C2xC6", "C2xC2xC4"}, abelian_two_d);
    add("lemma-4.5.1", "D(G) <= |G| <= 1 + sum C(d,k) k!", kCriterionGroups, counting_bound);
    add("lemma-4.1", "{2,3}, {3,4}, {4,5,6} realized as sets of lengths within length 10", {"C6", "S3", "Q8", "D8"},
        universal_sets);
    add("thm-4.7-case1", "length-6 atoms of D8 and Q8; {2,6} in L(D6) but not in L(D8), L(Q8)", {"D6", "Q8", "D8"},
        length_six_atoms);
    add("thm-4.7-case2", "Q8 length-5 atoms in three families; {2,5} not in L(Q8), in L(C2xC2xC4) and L(D8)",
        {"Q8", "D8", "C2xC2xC4"}, two_five);
    add("thm-4.7-case3", "{2,3,6} within L(S*S^-1) in D8, within no two-atom L over C2xC2xC4", {"D8", "C2xC2xC4"},
        two_three_six);
    add("thm-4.7-rho2", "rho_2(G) = D(G)", kCriterionGroups, rho_two);
    add("thm-3.1", "C(B(G)) is a group isomorphic to G exactly for abelian G",
        {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "S3", "Q8", "D8"}, abelian_class_groups);
    add("thm-3.1-divisor", "B(G) in F(G) is a divisor homomorphism for abelian G, not for Q8, D8",
        {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "Q8", "D8"}, divisor_hom);
    add("thm-3.6", "C(B(G)) Clifford iff B(G) seminormal (to length 6)",
        {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "S3", "Q8", "D8"}, clifford_seminormal);
    add("thm-3.6-ponizovsky", "Clifford decomposition items 1-3 on the full class table", {"Q8", "D8"}, ponizovsky);
    add("thm-3.11", "C(B(G)) Clifford iff |G'| <= 2",
        {"C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4", "S3", "Q8", "D8", "D10"}, clifford_derived);
    add("cor-3.12-q8", "Q8: Clifford, seminormal, B(G) = idempotent classes", {"Q8"},
        [](ClaimContext& c, const Budget& b, Evidence& e) { return cor_clifford("Q8", c, b, e); });
    add("cor-3.12-d8", "D8: Clifford, seminormal, B(G) = idempotent classes", {"D8"},
        [](ClaimContext& c, const Budget& b, Evidence& e) { return cor_clifford("D8", c, b, e); });
    add("cor-3.12-s3", "S3: not Clifford, (12)*(13) breaks seminormality", {"S3"},
        [](ClaimContext& c, const Budget& b, Evidence& e) { return cor_not_clifford("S3", "(12),(13)", c, b, e); });
    add("cor-3.12-d10", "D10: not Clifford, seminormality fails", {"D10"},
        [](ClaimContext& c, const Budget& b, Evidence& e) { return cor_not_clifford("D10", nullptr, c, b, e); });
    add("prop-3.3", "products of idempotent classes are exactly the G0' of subgroups G0", {"S3", "Q8", "D8"},
        idempotent_products);
    add("prop-3.5", "coset maps; smallest and greatest idempotents; Q8 H-classes C2xC2 and C2", {"S3", "Q8", "D8"},
        coset_maps);
    add("prop-3.15", "|G'| = 2: H([S]) is G0/G0', G/G', Z(G) or an abelian G0", {"Q8", "D8"}, h_class_cases);
    add("lemma-3.14", "|G'| = 2: odd elements central, g*g^-1 ~ g^[n], commuting powers comparable", {"Q8", "D8"},
        derived_two_lemma);
    add("cor-3.8", "C(B(G)) -> C(B(G/N)) is an epimorphism", {"Q8/Z", "S3/A3", "D8/D8'"}, quotient_maps);
    add("thm-3.9", "C(B(S3 x C2)) = C(B(S3)) x C(B(C2))", {"S3xC2"}, product_map, with_class_order(12));
    std::sort(r.begin(), r.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return r;
}

}  // namespace

const std::vector<Claim>& claim_registry() {
    static const std::vector<Claim> registry = make_registry();
    return registry;
}

const Claim* find_claim(const std::string& id) {
    for (const auto& c : claim_registry())
        if (c.id == id) return &c;
    return nullptr;
}

json budget_json(const Budget& b) {
    return {{"max_group_order", b.max_group_order}, {"max_states", b.max_states}, {"max_nodes", b.max_nodes},
            {"max_atom_order", b.max_atom_order}, {"max_free_order", b.max_free_order},
            {"max_subgroup_order", b.max_subgroup_order}, {"max_class_order", b.max_class_order},
            {"max_basis", b.max_basis}, {"max_classes", b.max_classes}, {"max_products", b.max_products}};
}

ClaimReport run_claim(const std::string& id, ClaimContext& ctx, const RunOptions& opts) {
    const Claim* c = find_claim(id);
    if (!c) throw InputError("unknown claim id: " + id);
    const Budget b = opts.budget.value_or(c->budget);
    ClaimReport r;
    r.id = c->id;
    r.description = c->description;
    r.optional = c->optional;
    r.budget = budget_json(b);
    r.evidence = json::object();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.status = c->check(ctx, b, r.evidence);
    } catch (const BudgetExceeded& e) {
        r.status = Status::unknown;
        r.evidence["exhausted"] = {{"budget", e.budget()}, {"limit", e.limit()}};
    } catch (const VerificationFailure& e) {
        r.status = Status::fail;
        r.evidence["error"] = e.what();
    } catch (const InputError& e) {
        r.status = Status::fail;
        r.evidence["error"] = e.what();
    }
    if (opts.timing) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<ClaimReport> run_all(const std::string& filter, ClaimContext& ctx, const RunOptions& opts) {
    std::vector<ClaimReport> out;
    for (const auto& c : claim_registry()) {
        if (fnmatch(filter.c_str(), c.id.c_str(), 0) != 0) continue;
        if (c.optional && !opts.include_optional && filter != c.id) continue;
        out.push_back(run_claim(c.id, ctx, opts));
    }
    return out;
}

int exit_status(const std::vector<ClaimReport>& reports) {
    bool unknown = false;
    for (const auto& r : reports) {
        if (r.status == Status::fail) return 1;
        if (r.status == Status::unknown && !r.optional) unknown = true;
    }
    return unknown ? 2 : 0;
}

json report_json(const ClaimReport& r) {
    json j = {{"id", r.id}, {"description", r.description}, {"optional", r.optional},
              {"status", to_string(r.status)}, {"evidence", r.evidence}, {"budget", r.budget}};
    if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
    return j;
}

json reports_json(const std::vector<ClaimReport>& reports) {
    json list = json::array();
    std::size_t pass = 0, fail = 0, unknown = 0;
    for (const auto& r : reports) {
        list.push_back(report_json(r));
        (r.status == Status::pass ? pass : r.status == Status::fail ? fail : unknown)++;
    }
    return {{"schema", "prodone/claims@1"}, {"version", kVersion}, {"claims", std::move(list)},
            {"summary", {{"pass", pass}, {"fail", fail}, {"unknown", unknown}, {"exit", exit_status(reports)}}}};
}

}  // namespace prodone
