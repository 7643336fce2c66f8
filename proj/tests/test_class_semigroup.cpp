#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "prodone/class_semigroup.hpp"
#include "prodone/errors.hpp"

using namespace prodone;
using testing::G;
using testing::seq;

namespace {

const ClassSemigroup& table(const std::string& d) {
    static std::map<std::string, ClassSemigroup> tables;
    auto it = tables.find(d);
    if (it == tables.end()) it = tables.emplace(d, build_class_semigroup(G(d))).first;
    return it->second;
}

// Which completions T with |T| ≤ len make S·T product-one.
std::vector<char> signature(const Sequence& s, std::size_t len) {
    std::vector<char> sig;
    for (std::size_t l = 0; l <= len; ++l)
        for_each_multiset(s.group().order(), l, [&](const std::vector<Element>& t) {
            sig.push_back(is_product_one(s * Sequence(s.group_ptr(), t)));
            return true;
        });
    return sig;
}

const HClass& h_of(const HClassPartition& p, ClassId e) {
    for (const auto& h : p.classes)
        if (h.idempotent == e) return h;
    throw std::logic_error("no H-class");
}

}  // namespace

TEST_SUITE("classes") {
    TEST_CASE("class counts") {
        CHECK(table("C6").size() == 6);
        CHECK(table("S3").size() == 26);
        CHECK(table("Q8").size() == 18);
        CHECK(table("D8").size() == 18);
    }

    TEST_CASE("abelian groups give the group back") {
        for (const char* d : {"C3", "C4", "C5", "C6", "C2xC2", "C2xC4"}) {
            CAPTURE(d);
            auto g = G(d);
            const auto c = build_class_semigroup(g, {}, ClassBuild::general);
            CHECK(c.size() == g->order());
            const auto h = h_classes(c);
            REQUIRE(h.classes.size() == 1);
            CHECK(h.unassigned.empty());
            CHECK(isomorphic(as_group(h.classes[0], c), g));
            CHECK(is_clifford(c));
            CHECK(idempotent_lattice(c).idempotents.size() == 1);
            CHECK(build_class_semigroup(g).size() == c.size());
        }
    }

    TEST_CASE("tables are commutative monoids") {
        for (const char* d : {"C6", "S3", "Q8", "D8"}) {
            const auto& c = table(d);
            const auto n = static_cast<ClassId>(c.size());
            CHECK(c.reps[c.identity].empty());
            for (ClassId a = 0; a < n; ++a) {
                CHECK(c.sum(a, c.identity) == a);
                CHECK(c.class_of(c.reps[a]) == a);
                for (ClassId b = 0; b < n; ++b) {
                    CHECK(c.sum(a, b) == c.sum(b, a));
                    for (ClassId x = 0; x < n; ++x) CHECK(c.sum(c.sum(a, b), x) == c.sum(a, c.sum(b, x)));
                }
                CHECK(static_cast<bool>(c.accepting[a]) == is_product_one(c.reps[a]));
            }
            // Representatives are shortest.
            for (ClassId a = 0; a < n; ++a)
                for (std::size_t len = 0; len < c.reps[a].length(); ++len)
                    for_each_multiset(c.group->order(), len, [&](const std::vector<Element>& t) {
                        CHECK(c.class_of(Sequence(c.group, t)) != a);
                        return true;
                    });
        }
    }

    TEST_CASE("class equality examples") {
        auto q8 = G("Q8");
        auto s = seq(q8, "I,J^2");
        CHECK(classes_equal(s, s.with(0)).verdict == Verdict::equal);
        CHECK(classes_equal(seq(q8, "I,-I"), seq(q8, "I^4")).verdict == Verdict::equal);
        const auto r = classes_equal(seq(q8, "I^2"), seq(q8, "J^2"));
        CHECK(r.verdict == Verdict::distinct);
        REQUIRE(r.witness);
        CHECK(separates(seq(q8, "I^2"), seq(q8, "J^2"), *r.witness));
    }

    TEST_CASE("classes against bounded signatures") {
        for (const char* d : {"C4", "S3", "Q8"}) {
            CAPTURE(d);
            const auto& c = table(d);
            std::map<ClassId, std::vector<char>> by_class;
            std::map<std::vector<char>, ClassId> by_signature;
            for (std::size_t len = 0; len <= 3; ++len)
                for_each_multiset(c.group->order(), len, [&](const std::vector<Element>& t) {
                    const Sequence s(c.group, t);
                    const ClassId k = c.class_of(s);
                    const auto sig = signature(s, 3);
                    // One class, one signature.
                    const auto [ci, fresh] = by_class.emplace(k, sig);
                    if (!fresh) CHECK(ci->second == sig);
                    // Two classes may share a short signature only if a longer T tells them apart.
                    const auto [si, new_sig] = by_signature.emplace(sig, k);
                    if (!new_sig && si->second != k) {
                        const auto r = classes_equal(c.reps[si->second], s);
                        CHECK(r.verdict == Verdict::distinct);
                        REQUIRE(r.witness);
                        CHECK(r.witness->length() > 3);
                    }
                    return true;
                });
        }
    }

    TEST_CASE("idempotents") {
        for (const char* d : {"S3", "Q8", "D8"}) {
            const auto& c = table(d);
            const auto lat = idempotent_lattice(c);
            CHECK(lat.greatest == c.identity);
            for (auto e : lat.idempotents) {
                CHECK(c.sum(e, e) == e);
                CHECK(lat.leq(lat.smallest, e));
                CHECK(lat.leq(e, lat.greatest));
                for (auto f : lat.idempotents) {
                    CHECK(std::find(lat.idempotents.begin(), lat.idempotents.end(), c.sum(e, f)) != lat.idempotents.end());
                    if (lat.leq(e, f) && lat.leq(f, e)) CHECK(e == f);
                }
            }
        }
    }

    TEST_CASE("idempotent products are commutator subgroups") {
        for (const char* d : {"S3", "Q8", "D8"}) {
            CAPTURE(d);
            const auto& c = table(d);
            std::set<std::set<Element>> from_idempotents, from_subgroups;
            for (auto e : idempotent_lattice(c).idempotents)
                from_idempotents.insert(testing::as_set(product_set(c.reps[e]).members));
            for (const auto& s : subgroups(c.group)) {
                auto [h, incl] = subgroup_as_group(s);
                std::set<Element> img;
                h->commutator_subgroup().for_each([&](Element x) { img.insert(incl(x)); });
                from_subgroups.insert(img);
            }
            CHECK(from_idempotents == from_subgroups);
        }
    }

    TEST_CASE("Clifford") {
        CHECK(is_clifford(table("Q8")));
        CHECK(is_clifford(table("D8")));
        CHECK_FALSE(is_clifford(table("S3")));
        for (const char* d : {"S3", "Q8", "D8"}) {
            const auto& c = table(d);
            const auto p = h_classes(c);
            std::set<ClassId> seen;
            std::size_t total = p.unassigned.size();
            for (const auto& h : p.classes) {
                for (auto m : h.members) CHECK(seen.insert(m).second);
                total += h.members.size();
                as_group(h, c);
            }
            CHECK(total == c.size());
            CHECK(p.unassigned.empty() == is_clifford(c));
        }
    }

    TEST_CASE("Q8 maximal subgroups") {
        const auto& c = table("Q8");
        const auto lat = idempotent_lattice(c);
        const auto p = h_classes(c);
        CHECK(isomorphic(as_group(h_of(p, lat.smallest), c), G("C2xC2")));
        CHECK(isomorphic(as_group(h_of(p, lat.greatest), c), G("C2")));
    }

    TEST_CASE("coset maps") {
        for (const char* d : {"Q8", "D8", "S3"}) {
            CAPTURE(d);
            const auto& c = table(d);
            const auto lat = idempotent_lattice(c);
            const auto p = h_classes(c);
            const auto top = coset_map(c, p, lat.greatest);
            CHECK(top.injective);
            CHECK(top.members.size() == c.group->center().size());
            const auto bottom = coset_map(c, p, lat.smallest);
            CHECK(bottom.injective);
            CHECK(bottom.surjective);
            CHECK(bottom.g0 == c.group->all());
            CHECK(bottom.members.size() == c.group->abelianization_order());
        }
        // An idempotent other than [1] with π = {E} in Q8: H(e) is an abelian G_0.
        const auto& c = table("Q8");
        const auto p = h_classes(c);
        bool found = false;
        for (auto e : idempotent_lattice(c).idempotents) {
            if (e == c.identity || product_set(c.reps[e]).size() != 1) continue;
            const auto m = coset_map(c, p, e);
            CHECK(m.g0_derived.size() == 1);
            CHECK(m.members.size() == m.g0.size());
            found = true;
        }
        CHECK(found);
    }

    TEST_CASE("commuting powers") {
        for (const char* d : {"Q8", "D8"}) {
            const auto& c = table(d);
            const auto lat = idempotent_lattice(c);
            const auto& g = *c.group;
            for (Element x = 1; x < g.order(); ++x)
                for (Element y = 1; y < g.order(); ++y) {
                    if (!g.commute(x, y)) continue;
                    const auto ex = c.class_of(Sequence::power_of(c.group, x, static_cast<std::uint32_t>(g.element_order(x))));
                    const auto ey = c.class_of(Sequence::power_of(c.group, y, static_cast<std::uint32_t>(g.element_order(y))));
                    CHECK((lat.leq(ex, ey) || lat.leq(ey, ex)));
                    CHECK((ex == ey) == g.center().contains(g.mul(x, y)));
                }
        }
    }

    TEST_CASE("seminormality") {
        CHECK(is_seminormal_bounded(G("Q8"), 6).pass);
        CHECK(is_seminormal_bounded(G("C5"), 6).pass);
        auto s3 = G("S3");
        CHECK(is_seminormality_counterexample(seq(s3, "(12),(13)")));
        const auto r = is_seminormal_bounded(s3, 4);
        CHECK_FALSE(r.pass);
        REQUIRE(r.counterexample);
        CHECK(is_seminormality_counterexample(*r.counterexample));
    }

    TEST_CASE("divisor homomorphism") {
        CHECK(divisor_homomorphism_check(G("C4"), 8).pass);
        CHECK(divisor_homomorphism_check(G("C2xC2"), 8).pass);
        auto q8 = G("Q8");
        CHECK(is_divisor_counterexample(seq(q8, "I^4"), seq(q8, "I^4,J^2")));
        const auto r = divisor_homomorphism_check(G("D8"), 6);
        CHECK_FALSE(r.pass);
        REQUIRE(r.counterexample);
        CHECK(is_divisor_counterexample(r.counterexample->first, r.counterexample->second));
    }

    TEST_CASE("Ponizovsky decomposition") {
        for (const char* d : {"Q8", "D8"}) {
            const auto r = ponizovsky_decomposition(table(d));
            CHECK(r.injective);
            CHECK(r.checks > 0);
            CHECK(idempotent_membership(table(d), 6).mismatch == std::nullopt);
        }
        const auto c4 = ponizovsky_decomposition(table("C4"));
        CHECK(c4.idempotents.size() == 1);
        CHECK_THROWS_AS(ponizovsky_decomposition(table("S3")), InputError);
    }

    TEST_CASE("quotient maps") {
        const auto z = quotient_class_epimorphism(table("Q8"), center(table("Q8").group));
        CHECK(z.target_size == 4);
        CHECK((z.well_defined && z.homomorphic && z.surjective));
        const auto a3 = quotient_class_epimorphism(table("S3"), commutator_subgroup(table("S3").group));
        CHECK(a3.target_size == 2);
        CHECK((a3.well_defined && a3.homomorphic && a3.surjective));
        const auto all = quotient_class_epimorphism(table("D8"), Subgroup(table("D8").group, table("D8").group->all()));
        CHECK(all.target_size == 1);
        CHECK(all.surjective);
    }

    TEST_CASE("product with a trivial factor") {
        const auto r = product_class_isomorphism(G("Q8"), G("C1"));
        CHECK(r.source_size == 18);
        CHECK((r.well_defined && r.homomorphic && r.surjective && r.injective));
    }

    TEST_CASE("budgets") {
        CHECK_THROWS_AS(build_class_semigroup(G("A4")), BudgetExceeded);
    }
}
