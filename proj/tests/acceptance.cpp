// One line per acceptance criterion. Exit status is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "prodone/claims.hpp"
#include "prodone/errors.hpp"
#include "support/properties.hpp"

using namespace prodone;

namespace {

class Criterion {
public:
    Criterion(int n, std::string title, ClaimContext& ctx) : n_(n), title_(std::move(title)), ctx_(ctx) {}

    void claim(const std::string& id) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run_claim(id, ctx_);
        timed(id, t0);
        if (r.status != Status::pass) fail(id + " " + to_string(r.status));
    }

    // Runs a direct check, turning exceptions into failures.
    void expect(const std::string& what, const std::function<bool()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = f();
        } catch (const std::exception& e) {
            fail(what + ": " + e.what());
            return;
        }
        timed(what, t0);
        if (!ok) fail(what);
    }

    void note(const std::string& s) { notes_.push_back(s); }

    // Per-item ceiling from the criterion text.
    void limit(double seconds) { limit_ = seconds; }

    bool finish() {
        const bool ok = failures_.empty();
        std::printf("criterion %d: %s  %s", n_, ok ? "PASS" : "FAIL", title_.c_str());
        std::printf("  [%zu checks, slowest %s %.1fs]", checks_, slowest_.c_str(), slowest_s_);
        for (const auto& f : failures_) std::printf("\n    failed: %s", f.c_str());
        for (const auto& s : notes_) std::printf("\n    %s", s.c_str());
        std::printf("\n");
        std::fflush(stdout);
        return ok;
    }

private:
    void fail(const std::string& s) { failures_.push_back(s); }
    void timed(const std::string& what, std::chrono::steady_clock::time_point t0) {
        ++checks_;
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > slowest_s_) {
            slowest_s_ = s;
            slowest_ = what;
        }
        if (limit_ > 0 && s > limit_) fail(what + " took " + std::to_string(s) + "s");
    }

    int n_;
    std::string title_;
    ClaimContext& ctx_;
    std::vector<std::string> failures_, notes_;
    std::size_t checks_ = 0;
    std::string slowest_ = "-";
    double slowest_s_ = 0, limit_ = 0;
};

Sequence lit(ClaimContext& ctx, const char* g, const char* s) { return parse_sequence(ctx.group(g), s); }

std::vector<Sequence> lits(ClaimContext& ctx, const char* g, std::initializer_list<const char*> xs) {
    std::vector<Sequence> out;
    for (auto x : xs) out.push_back(lit(ctx, g, x));
    std::sort(out.begin(), out.end());
    return out;
}

bool davenport_constants(Criterion& c, ClaimContext& ctx) {
    c.limit(60);
    for (const char* d : {"C6", "C2xC2xC4", "C2^5", "D6", "Q8", "D8"})
        c.expect(std::string("D(") + d + ") = 6", [&] { return ctx.atoms(d).max_length() == 6; });
    c.expect("D(D10) = 10", [&] { return ctx.atoms("D10").max_length() == 10; });
    c.expect("d(C2^5) = 5", [&] { return small_davenport(ctx.group("C2^5")).small == 5; });
    c.expect("d(D10) = 5", [&] { return small_davenport(ctx.group("D10")).small == 5; });
    for (std::size_t n = 3; n <= 10; ++n) {
        const std::string d = "C" + std::to_string(n);
        c.expect("d, D of " + d, [&] {
            const auto r = davenport(ctx.group(d));
            return r.small == n - 1 && r.large == n;
        });
    }
    for (const char* id : {"lemma-2.2.3", "lemma-4.6.2", "lemma-4.6.1", "lemma-4.6-case2", "thm-4.4-n5"}) c.claim(id);
    return c.finish();
}

bool atom_censuses(Criterion& c, ClaimContext& ctx) {
    c.limit(120);
    c.expect("D8 length-6 atoms", [&] {
        return ctx.atoms("D8").of_length(6) ==
               lits(ctx, "D8", {"a^4,b,a2b", "a3^4,b,a2b", "a^4,ab,a3b", "a3^4,ab,a3b"});
    });
    c.expect("Q8 length-6 atoms = g1^[4] g2^[2]", [&] {
        const auto g = ctx.group("Q8");
        std::vector<Sequence> family;
        for (Element x = 0; x < 8; ++x)
            for (Element y = 0; y < 8; ++y)
                if (g->element_order(x) == 4 && g->element_order(y) == 4 && x != y && x != g->inverse(y))
                    family.push_back(Sequence::power_of(g, x, 4).with(y, 2));
        std::sort(family.begin(), family.end());
        return family.size() == 24 && ctx.atoms("Q8").of_length(6) == family;
    });
    for (std::uint32_t n : {3u, 5u}) {
        const std::string d = "D" + std::to_string(2 * n);
        c.expect("A({b,ab}) in " + d, [&] {
            const auto g = ctx.group(d);
            const Element b = *g->find("b"), ab = *g->find("ab");
            ElementSet g0;
            g0.insert(b);
            g0.insert(ab);
            std::vector<Sequence> expect = {Sequence::power_of(g, b, 2), Sequence::power_of(g, ab, 2),
                                            Sequence::power_of(g, b, n).with(ab, n)};
            std::sort(expect.begin(), expect.end());
            return enumerate_atoms(g, g->order(), {}, g0).atoms == expect;
        });
    }
    for (const char* id : {"thm-4.7-case1", "thm-4.7-case2", "thm-4.4-n3", "thm-4.4-n5"}) c.claim(id);
    return c.finish();
}

bool length_facts(Criterion& c, ClaimContext& ctx) {
    c.limit(300);
    c.expect("{2,6} not in L(D8)", [&] { return !check_2D_membership(ctx.atoms("D8")).member; });
    c.expect("{2,6} not in L(Q8)", [&] { return !check_2D_membership(ctx.atoms("Q8")).member; });
    c.expect("{2,5} not in L(Q8)", [&] {
        for (const auto& p : two_atom_products(ctx.atoms("Q8")))
            if (p.lengths == LengthSet{2, 5}) return false;
        return true;
    });
    c.expect("{2,5} in L(C2xC2xC4)", [&] {
        for (const auto& p : two_atom_products(ctx.atoms("C2xC2xC4")))
            if (p.lengths == LengthSet{2, 5}) return true;
        return false;
    });
    c.expect("L(S S^-1) = {2,5} in D8", [&] {
        const auto s = lit(ctx, "D8", "a2,b^2,ab^2");
        return length_set(s * s.inverse()) == LengthSet{2, 5};
    });
    c.expect("{2,3,6} within L(S S^-1) in D8", [&] {
        const auto s = lit(ctx, "D8", "a^4,b,a2b");
        return length_set(s * s.inverse()).includes(LengthSet{2, 3, 6});
    });
    c.expect("no {2,3,6} over C2xC2xC4", [&] {
        for (const auto& p : two_atom_products(ctx.atoms("C2xC2xC4")))
            if (p.lengths.includes(LengthSet{2, 3, 6})) return false;
        return true;
    });
    for (std::uint32_t n : {3u, 5u}) {
        const std::string d = "D" + std::to_string(2 * n);
        c.expect("{2,n+2,2n} in " + d, [&] {
            const auto g = ctx.group(d);
            const auto t = Sequence::power_of(g, *g->find("a"), 2 * n - 2).with(*g->find("b"), 2);
            return length_set(t * t.inverse()).includes(LengthSet{2, n + 2, 2 * n});
        });
    }
    for (const char* id : {"lemma-4.2.3", "thm-4.7-case2", "thm-4.7-case3", "thm-4.7-rho2"}) c.claim(id);
    return c.finish();
}

bool class_structure(Criterion& c, ClaimContext& ctx) {
    c.limit(300);
    c.expect("Q8, D8 Clifford; S3, D10 not", [&] {
        return is_clifford(ctx.classes("Q8")) && is_clifford(ctx.classes("D8")) && !is_clifford(ctx.classes("S3")) &&
               !is_clifford(ctx.classes("D10"));
    });
    c.expect("B(G) = idempotent classes to length 6", [&] {
        return !idempotent_membership(ctx.classes("Q8"), 6).mismatch && !idempotent_membership(ctx.classes("D8"), 6).mismatch;
    });
    for (const char* id : {"thm-3.1", "thm-3.11", "cor-3.12-q8", "cor-3.12-d8", "cor-3.12-s3", "cor-3.12-d10", "prop-3.3",
                           "prop-3.5", "thm-3.6-ponizovsky"})
        c.claim(id);
    return c.finish();
}

bool seminormality(Criterion& c, ClaimContext& ctx) {
    c.expect("S3 counterexample (12)(13)", [&] { return is_seminormality_counterexample(lit(ctx, "S3", "(12),(13)")); });
    c.expect("Q8 divisor counterexample", [&] {
        return is_divisor_counterexample(lit(ctx, "Q8", "I^4"), lit(ctx, "Q8", "I^4,J^2"));
    });
    c.expect("Q8, D8 seminormal to 6", [&] {
        return is_seminormal_bounded(ctx.group("Q8"), 6).pass && is_seminormal_bounded(ctx.group("D8"), 6).pass;
    });
    c.expect("D8 divisor counterexample", [&] { return !divisor_homomorphism_check(ctx.group("D8"), 6).pass; });
    for (const char* id : {"thm-3.6", "thm-3.1-divisor", "cor-3.12-s3"}) c.claim(id);
    return c.finish();
}

bool structural_maps(Criterion& c, ClaimContext& ctx) {
    for (const char* id : {"cor-3.8", "thm-3.9", "lemma-4.2.2", "lemma-4.5.1"}) c.claim(id);
    return c.finish();
}

bool universal_sets(Criterion& c, ClaimContext& ctx) {
    for (const char* d : {"C6", "S3", "Q8", "D8"})
        for (auto [y, k] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 1}, {0, 2}})
            c.expect(std::string(d) + " y=" + std::to_string(y) + " k=" + std::to_string(k), [&] {
                const auto w = universal_witness(ctx.group(d), y, k, 10);
                return w.witness && w.witness->length() <= 10 && length_set(*w.witness) == w.target;
            });
    c.claim("lemma-4.1");
    return c.finish();
}

bool property_suites(Criterion& c) {
    using Suite = props::SuiteResult (*)(std::uint64_t, std::size_t);
    const std::tuple<Suite, std::uint64_t, std::size_t> suites[] = {
        {props::product_set_vs_permutations, props::kSeed, 500},
        {props::atom_vs_bipartitions, props::kSeed + 1, 500},
        {props::lengths_vs_factorizations, props::kSeed + 2, 200},
        {props::class_congruence, props::kSeed + 3, 200},
        {props::witness_invariant_consistency, props::kSeed + 4, 200},
    };
    for (const auto& [run, seed, cases] : suites) {
        props::SuiteResult r;
        c.expect("suite seed " + std::to_string(seed), [&] {
            r = run(seed, cases);
            return r.ok();
        });
        c.note(r.name + ": " + std::to_string(r.cases) + " cases, " + std::to_string(r.violations) + " violations");
        for (const auto& e : r.examples) c.note("  " + e);
    }
    return c.finish();
}

}  // namespace

int main() {
    ClaimContext ctx(default_cache_dir());
    int failed = 0;
    const std::vector<std::pair<const char*, std::function<bool(Criterion&)>>> criteria = {
        {"Davenport constants", [&](Criterion& c) { return davenport_constants(c, ctx); }},
        {"atom censuses", [&](Criterion& c) { return atom_censuses(c, ctx); }},
        {"length-set facts", [&](Criterion& c) { return length_facts(c, ctx); }},
        {"class semigroup structure", [&](Criterion& c) { return class_structure(c, ctx); }},
        {"seminormality and divisor homomorphism", [&](Criterion& c) { return seminormality(c, ctx); }},
        {"structural maps", [&](Criterion& c) { return structural_maps(c, ctx); }},
        {"universal length sets", [&](Criterion& c) { return universal_sets(c, ctx); }},
        {"property suites", [&](Criterion& c) { return property_suites(c); }},
    };
    int n = 0;
    for (const auto& [title, run] : criteria) {
        Criterion c(++n, title, ctx);
        if (!run(c)) ++failed;
    }
    std::printf("%d of %d criteria passed\n", n - failed, n);
    return failed;
}
