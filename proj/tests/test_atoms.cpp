#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "prodone/atoms.hpp"
#include "prodone/class_semigroup.hpp"
#include "prodone/errors.hpp"
#include "support/oracles.hpp"

using namespace prodone;
using testing::G;
using testing::seq;

namespace {

std::vector<Sequence> parse_all(const GroupPtr& g, std::initializer_list<const char*> lits) {
    std::vector<Sequence> out;
    for (auto l : lits) out.push_back(seq(g, l));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("atoms") {
    TEST_CASE("is_atom examples") {
        auto q8 = G("Q8");
        CHECK(is_atom(seq(q8, "E")));
        CHECK(is_atom(seq(q8, "I^4,J^2")));
        CHECK_FALSE(is_atom(Sequence(q8)));
        CHECK_FALSE(is_atom(seq(q8, "J^2")));
        CHECK_FALSE(is_atom(seq(q8, "I^4,-E^2")));
        for (const char* d : {"D6", "D10"}) {
            auto g = G(d);
            const std::uint32_t n = static_cast<std::uint32_t>(g->order() / 2);
            CHECK(is_atom(Sequence::power_of(g, testing::el(g, "a"), 2 * n - 2).with(testing::el(g, "b"), 2)));
        }
        // A non-abelian atom may hold a product-one subsequence.
        auto d6 = G("D6");
        CHECK(is_atom(seq(d6, "a^4,b^2")));
        CHECK(has_proper_product_one_subsequence(seq(d6, "a^4,b^2")));
    }

    TEST_CASE("proper product-one subsequences") {
        auto q8 = G("Q8");
        CHECK(has_proper_product_one_subsequence(seq(q8, "I^4,J^2")));
        for (std::size_t n = 3; n <= 8; ++n) {
            auto c = G("C" + std::to_string(n));
            CHECK_FALSE(has_proper_product_one_subsequence(Sequence::power_of(c, 1, static_cast<std::uint32_t>(n))));
        }
        // Every sequence of length D(G) over a non-abelian group has one.
        for (const char* d : {"D6", "Q8", "D8"}) {
            auto g = G(d);
            for_each_multiset(g->order(), 6, [&](const std::vector<Element>& t) {
                CHECK(has_proper_product_one_subsequence(Sequence(g, t)));
                return true;
            });
        }
    }

    TEST_CASE("enumeration is complete on small groups") {
        for (const char* d : {"C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"}) {
            CAPTURE(d);
            auto g = G(d);
            const auto atoms = enumerate_atoms(g, g->order());
            std::vector<Sequence> naive;
            for (std::size_t len = 1; len <= g->order(); ++len)
                for_each_multiset(g->order(), len, [&](const std::vector<Element>& t) {
                    if (oracle::is_atom(*g, t)) naive.push_back(Sequence(g, t));
                    return true;
                });
            std::sort(naive.begin(), naive.end());
            CHECK(atoms.atoms == naive);
            CHECK(std::is_sorted(atoms.atoms.begin(), atoms.atoms.end()));
        }
    }

    TEST_CASE("restricted supports") {
        for (std::uint32_t n : {3u, 5u}) {
            auto g = G("D" + std::to_string(2 * n));
            const auto b = testing::el(g, "b"), ab = testing::el(g, "ab");
            ElementSet g0;
            g0.insert(b);
            g0.insert(ab);
            const auto a = enumerate_atoms(g, g->order(), {}, g0);
            std::vector<Sequence> expect = {Sequence::power_of(g, b, 2), Sequence::power_of(g, ab, 2),
                                            Sequence::power_of(g, b, n).with(ab, n)};
            std::sort(expect.begin(), expect.end());
            CHECK(a.atoms == expect);
        }
    }

    TEST_CASE("length-6 atoms of D8 and Q8") {
        auto d8 = G("D8");
        const auto a = enumerate_atoms(d8, 8);
        CHECK(a.max_length() == 6);
        CHECK(a.of_length(6) == parse_all(d8, {"a^4,b,a2b", "a3^4,b,a2b", "a^4,ab,a3b", "a3^4,ab,a3b"}));

        auto q8 = G("Q8");
        const auto q = enumerate_atoms(q8, 8);
        const auto six = q.of_length(6);
        CHECK(six.size() == 24);
        const char* gens[] = {"I", "-I", "J", "-J", "K", "-K"};
        std::vector<Sequence> family;
        for (auto g1 : gens)
            for (auto g2 : gens) {
                const auto x = testing::el(q8, g1), y = testing::el(q8, g2);
                if (x == y || x == q8->inverse(y)) continue;
                family.push_back(Sequence::power_of(q8, x, 4).with(y, 2));
            }
        std::sort(family.begin(), family.end());
        CHECK(six == family);
        CHECK(q.of_length(5).size() == 39);
    }

    TEST_CASE("Davenport constants") {
        CHECK(davenport(G("C6")).large == 6);
        CHECK(davenport(G("D6")).large == 6);
        CHECK(davenport(G("Q8")).large == 6);
        CHECK(davenport(G("D8")).large == 6);
        CHECK(small_davenport(G("C2^5")).small == 5);
        CHECK(small_davenport(G("D10")).small == 5);
        for (std::size_t n = 3; n <= 10; ++n) {
            const auto r = davenport(G("C" + std::to_string(n)));
            CHECK(r.large == n);
            CHECK(r.small == n - 1);
        }
        const auto q = davenport(G("Q8"));
        CHECK(is_atom(q.witness_atom));
        CHECK(q.witness_atom.length() == 6);
        CHECK(is_product_one_free(q.witness_free));
        CHECK(q.witness_free.length() == q.small);
    }

    TEST_CASE("Davenport bounds and maximal free sequences") {
        for (const char* d : {"C2", "C4", "C2xC2", "C2xC4", "C2^3", "C3xC3", "S3", "D8", "Q8", "Dic12", "A4"}) {
            CAPTURE(d);
            auto g = G(d);
            const auto r = davenport(g);
            CHECK(r.small + 1 <= r.large);
            CHECK(r.large <= g->order());
            // Π(S) = G \ {1} for a product-one free S of length d(G).
            auto rest = g->all();
            rest.erase(0);
            CHECK(subsequence_products(r.witness_free).members == rest);
            // |G| ≤ 1 + Σ C(d,k) k!.
            double bound = 1;
            for (std::size_t k = 1; k <= r.small; ++k) bound += std::tgamma(r.small + 1.0) / std::tgamma(r.small - k + 1.0);
            CHECK(static_cast<double>(g->order()) <= bound);
        }
    }

    TEST_CASE("product-one free search") {
        auto g = G("C2^5");
        CHECK(find_product_one_free(g, 5, 1'000'000).has_value());
        bool exhausted = true;
        CHECK_FALSE(find_product_one_free(g, 6, 100'000'000, &exhausted).has_value());
        CHECK_FALSE(exhausted);
        CHECK_FALSE(find_product_one_free(G("C8"), 7, 3, &exhausted).has_value());
        CHECK(exhausted);
    }

    TEST_CASE("budgets") {
        Budget b;
        b.max_atom_order = 8;
        CHECK_THROWS_AS(enumerate_atoms(G("D10"), 10, b), BudgetExceeded);
    }
}
