#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "prodone/errors.hpp"
#include "support/oracles.hpp"

using namespace prodone;
using testing::G;

namespace {

const char* const kMatrix[] = {"C1", "C2",  "C6",   "C8",     "C2xC2", "C2^3", "C3xC3", "S3",    "D6",
                               "D8", "D10", "Q8",   "Dic12",  "A4",    "S4",   "Q8xC2", "D6xC2", "C2xC2xC4"};

bool same(const ElementSet& a, const std::set<Element>& b) { return testing::as_set(a) == b; }

}  // namespace

TEST_SUITE("group") {
    TEST_CASE("descriptor examples") {
        auto c6 = G("C6");
        CHECK(c6->order() == 6);
        CHECK(c6->is_abelian());

        auto q8 = G("Q8");
        CHECK(q8->order() == 8);
        CHECK_FALSE(q8->is_abelian());
        CHECK(q8->exponent() == 4);

        // a^{2n} = 1, b^2 = a^n, ba = a^{-1} b with n = 3.
        auto dic = G("Dic12");
        CHECK(dic->order() == 12);
        const auto a = testing::el(dic, "a"), b = testing::el(dic, "b");
        CHECK(dic->power(a, 6) == 0);
        CHECK(dic->element_order(a) == 6);
        CHECK(dic->mul(b, b) == dic->power(a, 3));
        CHECK(dic->mul(b, a) == dic->mul(dic->inverse(a), b));

        CHECK(G("C2^5")->order() == 32);
        CHECK(G("C2^5")->exponent() == 2);
        CHECK(G("S3")->order() == 6);
        CHECK(G("A4")->order() == 12);
        CHECK(G("D6xC2")->order() == 12);
    }

    TEST_CASE("descriptor errors") {
        for (const char* bad : {"", "C0", "X5", "D5", "Dic6", "C2x", "Q9", "C2^0", "C2^x", "cayley:/nonexistent/table"})
            CHECK_THROWS_AS(build_group(bad), InputError);
        Budget tight;
        tight.max_group_order = 16;
        CHECK_THROWS(build_group("C32", tight));
    }

    TEST_CASE("element numbering is stable") {
        auto a = G("D8"), b = G("D8");
        CHECK(a->table() == b->table());
        CHECK(a->element_names() == b->element_names());
        CHECK(a->identity() == 0);
    }

    TEST_CASE("commutator subgroup and center match brute force") {
        for (const char* d : kMatrix) {
            CAPTURE(d);
            auto g = G(d);
            CHECK(same(g->commutator_subgroup(), oracle::commutator_subgroup(*g)));
            CHECK(same(g->center(), oracle::center(*g)));
            CHECK(commutator_subgroup(g).is_normal());
        }
        CHECK(G("D8")->commutator_subgroup().size() == 2);
        CHECK(G("D6")->commutator_subgroup().size() == 3);
        CHECK(G("C6")->commutator_subgroup().size() == 1);
        CHECK(G("Q8")->center() == testing::names(G("Q8"), {"E", "-E"}));
        CHECK(G("D8")->center().size() == 2);
        CHECK(G("C6")->center().size() == 6);
    }

    TEST_CASE("subgroup lattices") {
        CHECK(subgroups(G("C6")).size() == 4);
        CHECK(subgroups(G("Q8")).size() == 6);
        CHECK(subgroups(G("C1")).size() == 1);
        for (const char* d : {"C6", "C2xC2", "S3", "D8", "Q8", "A4", "C2^3"}) {
            CAPTURE(d);
            auto g = G(d);
            const auto subs = subgroups(g);
            std::set<std::set<Element>> got;
            for (const auto& s : subs) got.insert(testing::as_set(s.members()));
            CHECK(got == oracle::subgroups(*g));
            // Closed under intersection.
            for (const auto& x : subs)
                for (const auto& y : subs) CHECK(g->is_subgroup(x.members() & y.members()));
        }
    }

    TEST_CASE("Lagrange") {
        for (const char* d : kMatrix) {
            auto g = G(d);
            for (std::size_t x = 0; x < g->order(); ++x) CHECK(g->order() % g->element_order(static_cast<Element>(x)) == 0);
        }
    }

    TEST_CASE("quotients") {
        auto g = G("D8");
        auto [q, theta] = quotient(g, commutator_subgroup(g));
        CHECK(q->order() == 4);
        CHECK(q->exponent() == 2);
        CHECK(theta.verify());
        CHECK(theta.is_surjective());

        auto q8 = G("Q8");
        auto [z, zeta] = quotient(q8, center(q8));
        CHECK(z->order() == 4);
        CHECK(z->exponent() == 2);

        auto [t, tau] = quotient(g, Subgroup(g, g->all()));
        CHECK(t->order() == 1);

        for (const char* d : kMatrix) {
            auto h = G(d);
            auto [ab, pi] = quotient(h, commutator_subgroup(h));
            CHECK(ab->is_abelian());
            CHECK(ab->order() * h->commutator_subgroup().size() == h->order());
        }

        // A non-normal subgroup is refused.
        auto s3 = G("S3");
        CHECK_THROWS_AS(quotient(s3, generated_subgroup(s3, testing::names(s3, {"(12)"}))), InputError);
    }

    TEST_CASE("direct products") {
        auto k = direct_product(G("C2"), G("C2"));
        CHECK(k->order() == 4);
        CHECK(k->exponent() == 2);
        auto d = direct_product(G("D6"), G("C2"));
        CHECK(d->order() == 12);
        CHECK(d->commutator_subgroup().size() == 3);
        CHECK(direct_product(G("Q8"), G("C2"))->order() == 16);
        // (G x H)' = G' x H'.
        for (auto [a, b] : {std::pair{"S3", "Q8"}, std::pair{"D8", "C3"}, std::pair{"A4", "C2"}}) {
            auto p = direct_product(G(a), G(b));
            CHECK(p->commutator_subgroup().size() == G(a)->commutator_subgroup().size() * G(b)->commutator_subgroup().size());
            CHECK(same(p->commutator_subgroup(), oracle::commutator_subgroup(*p)));
        }
    }

    TEST_CASE("isomorphism and fingerprints") {
        CHECK(isomorphic(G("S3"), G("D6")));
        CHECK_FALSE(isomorphic(G("Q8"), G("D8")));
        CHECK_FALSE(isomorphic(G("C4"), G("C2xC2")));
        CHECK(isomorphic(G("C6"), G("C2xC3")));
        CHECK(fingerprint(G("D6")) == fingerprint(G("S3")));
        auto [z, incl] = subgroup_as_group(center(G("Q8")));
        CHECK(isomorphic(z, G("C2")));
        CHECK(incl.verify());
        CHECK(incl.is_injective());
    }

    TEST_CASE("tables from files") {
        const auto dir = std::filesystem::temp_directory_path() / "prodone-group-test";
        std::filesystem::create_directories(dir);
        const auto good = dir / "c3.txt";
        // Identity placed last on purpose; rows are reordered.
        std::ofstream(good) << R"({"schema": "prodone/cayley@1", "order": 3, "table": [[1,2,0],[2,0,1],[0,1,2]]})";
        auto g = build_group("cayley:" + good.string());
        CHECK(g->order() == 3);
        CHECK(isomorphic(g, G("C3")));

        const auto bad = dir / "bad.txt";
        for (const char* text : {"0 1\n0 1\n", "{not json", R"({"schema": "prodone/cayley@1", "order": 2, "table": [[0,1],[0,1]]})",
                                 R"({"schema": "prodone/cayley@1", "order": 3, "table": [[0,1],[1,0]]})",
                                 R"({"schema": "prodone/cayley@1", "order": "two", "table": []})", R"({"order": 1, "table": [[0]]})"}) {
            CAPTURE(text);
            std::ofstream(bad) << text;
            CHECK_THROWS_AS(build_group("cayley:" + bad.string()), InputError);
        }

        // Not associative: a Latin square with identity 0 that is no group table.
        CHECK_THROWS_AS(group_from_table("loop", {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                        InputError);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("metacyclic groups") {
        auto g = metacyclic_group(7, 3, 2);
        CHECK(g->order() == 21);
        CHECK_FALSE(g->is_abelian());
        CHECK(g->commutator_subgroup().size() == 7);
        CHECK(isomorphic(metacyclic_group(3, 2, 2), G("S3")));
        CHECK_THROWS_AS(metacyclic_group(7, 3, 3), InputError);
    }
}
