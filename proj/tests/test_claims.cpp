#include <fnmatch.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "prodone/claims.hpp"
#include "prodone/errors.hpp"
#include "prodone/version.hpp"

using namespace prodone;
using testing::G;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

ClaimReport fake(Status s, bool optional = false) {
    ClaimReport r;
    r.status = s;
    r.optional = optional;
    return r;
}

}  // namespace

TEST_SUITE("claims") {
    TEST_CASE("registry") {
        const auto& reg = claim_registry();
        CHECK(reg.size() >= 30);
        std::set<std::string> optional;
        for (std::size_t i = 0; i < reg.size(); ++i) {
            if (i) CHECK(reg[i - 1].id < reg[i].id);
            CHECK_FALSE(reg[i].description.empty());
            CHECK_FALSE(reg[i].instances.empty());
            CHECK(find_claim(reg[i].id) == &reg[i]);
            if (reg[i].optional) optional.insert(reg[i].id);
        }
        CHECK(optional == std::set<std::string>{"lemma-4.2.3-as-stated", "lemma-4.6.1-sweep", "thm-4.4.1-order21"});
        CHECK(find_claim("thm-9.9") == nullptr);
        ClaimContext ctx;
        CHECK_THROWS_AS(run_claim("thm-9.9", ctx), InputError);
    }

    TEST_CASE("exit status") {
        CHECK(exit_status({}) == 0);
        CHECK(exit_status({fake(Status::pass), fake(Status::pass)}) == 0);
        CHECK(exit_status({fake(Status::pass), fake(Status::unknown)}) == 2);
        CHECK(exit_status({fake(Status::unknown), fake(Status::fail)}) == 1);
        CHECK(exit_status({fake(Status::pass), fake(Status::unknown, true)}) == 0);
        CHECK(exit_status({fake(Status::fail, true)}) == 1);
    }

    TEST_CASE("reports are deterministic") {
        ClaimContext a, b;
        const auto ra = run_all("lemma-2.2.3", a), rb = run_all("lemma-2.2.3", b);
        REQUIRE(ra.size() == 1);
        CHECK(ra[0].status == Status::pass);
        CHECK(reports_json(ra).dump() == reports_json(rb).dump());
        CHECK_FALSE(report_json(ra[0]).contains("wall_seconds"));
        const auto j = reports_json(ra);
        CHECK(j["schema"] == "prodone/claims@1");
        CHECK(j["version"] == kVersion);
        CHECK(j["summary"]["pass"] == 1);

        RunOptions timed;
        timed.timing = true;
        CHECK(report_json(run_claim("lemma-2.2.3", a, timed)).contains("wall_seconds"));
    }

    TEST_CASE("globs") {
        // Only the ids are compared; the claims are not run.
        std::vector<std::string> ids;
        for (const auto& c : claim_registry())
            if (fnmatch("thm-4.4-*", c.id.c_str(), 0) == 0) ids.push_back(c.id);
        CHECK(ids == std::vector<std::string>{"thm-4.4-n3", "thm-4.4-n5"});
    }

    TEST_CASE("budgets turn into unknown") {
        ClaimContext ctx;
        RunOptions opts;
        Budget tiny;
        tiny.max_nodes = 10;
        opts.budget = tiny;
        const auto r = run_claim("lemma-4.6-case2", ctx, opts);
        CHECK(r.status == Status::unknown);
        CHECK(r.evidence.contains("exhausted"));
        CHECK(r.budget["max_nodes"] == 10);

        Budget small_order;
        small_order.max_atom_order = 8;
        opts.budget = small_order;
        CHECK(run_claim("thm-4.4.1-order21", ctx, opts).status == Status::unknown);
    }

    TEST_CASE("the literal two-atom criterion fails on D6") {
        ClaimContext ctx(default_cache_dir());
        const auto r = run_claim("lemma-4.2.3-as-stated", ctx);
        CHECK(r.status == Status::fail);
        CHECK(run_claim("lemma-4.2.3", ctx).status == Status::pass);
    }

    TEST_CASE("atom cache round trip") {
        auto g = G("Q8");
        const auto atoms = enumerate_atoms(g, 8);
        const auto j = atoms_to_json("Q8", atoms);
        CHECK(j["schema"] == "prodone/atoms@1");
        const auto back = atoms_from_json(j, "Q8", g);
        REQUIRE(back);
        CHECK(back->atoms == atoms.atoms);
        CHECK(back->max_len == 8);
        CHECK_FALSE(atoms_from_json(j, "D8", G("D8")));
        auto stale = j;
        stale["version"] = "0.0.0";
        CHECK_FALSE(atoms_from_json(stale, "Q8", g));
    }

    TEST_CASE("class cache round trip") {
        auto g = G("S3");
        const auto c = build_class_semigroup(g);
        const auto j = classes_to_json("S3", c, {});
        const auto back = classes_from_json(j, "S3", g);
        REQUIRE(back);
        CHECK(back->reps == c.reps);
        CHECK(back->add == c.add);
        CHECK(back->identity == c.identity);
        CHECK(back->generator_map == c.generator_map);
        // A tampered table is refused.
        auto bad = j;
        bad["reps"][1] = bad["reps"][2];
        CHECK_FALSE(classes_from_json(bad, "S3", g));
    }

    TEST_CASE("disk cache") {
        TempDir tmp("prodone-cache-test");
        DiskCache cache(tmp.path);
        auto g = G("D8");
        CHECK_FALSE(cache.load_atoms("D8", g));
        cache.store_atoms("D8", enumerate_atoms(g, 8));
        const auto loaded = cache.load_atoms("D8", g);
        REQUIRE(loaded);
        CHECK(loaded->of_length(6).size() == 4);

        // Unreadable files are ignored rather than fatal.
        for (const auto& f : std::filesystem::directory_iterator(tmp.path)) std::ofstream(f.path()) << "{not json";
        CHECK_FALSE(cache.load_atoms("D8", g));

        DiskCache off(std::nullopt);
        CHECK_FALSE(off.enabled());
        off.store_atoms("D8", enumerate_atoms(g, 4));
        CHECK_FALSE(off.load_atoms("D8", g));

        ClaimContext ctx(tmp.path);
        CHECK(ctx.atoms("C6").max_length() == 6);
        ClaimContext warm(tmp.path);
        // Different contexts hold different group objects, so compare literals.
        auto literals = [](const AtomSet& a) {
            std::vector<std::string> out;
            for (const auto& s : a.atoms) out.push_back(s.to_string());
            return out;
        };
        CHECK(literals(warm.atoms("C6")) == literals(ctx.atoms("C6")));
        CHECK(warm.classes("Q8").size() == 18);
    }

    TEST_CASE("README claim ids exist") {
        std::ifstream in(PRODONE_SOURCE_DIR "/README.md");
        REQUIRE(in);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        const std::regex id(R"(\b(?:lemma|thm|cor|prop)-[0-9][0-9a-z.\-]*[0-9a-z])");
        std::size_t found = 0;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), id); it != std::sregex_iterator(); ++it) {
            const std::string s = it->str();
            CAPTURE(s);
            // Globs such as thm-4.4-* match their prefix.
            const bool glob = it->suffix().str().starts_with("-*") || it->suffix().str().starts_with("*");
            bool known = find_claim(s) != nullptr;
            if (glob)
                for (const auto& c : claim_registry()) known = known || c.id.starts_with(s);
            CHECK(known);
            ++found;
        }
        CHECK(found > 5);
    }
}
