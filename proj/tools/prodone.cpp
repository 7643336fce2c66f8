#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "prodone/claims.hpp"
#include "prodone/errors.hpp"
#include "prodone/parallel.hpp"
#include "prodone/version.hpp"

using namespace prodone;
using nlohmann::json;

namespace {

// "key=value,key=value" over the Budget fields.
void apply_budget(const std::string& spec, Budget& b) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("budget entries look like key=value: " + item);
        const std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("budget value is not a number: " + item);
        }
        std::size_t* field = key == "max_group_order"      ? &b.max_group_order
                             : key == "max_states"         ? &b.max_states
                             : key == "max_nodes"          ? &b.max_nodes
                             : key == "max_atom_order"     ? &b.max_atom_order
                             : key == "max_free_order"     ? &b.max_free_order
                             : key == "max_subgroup_order" ? &b.max_subgroup_order
                             : key == "max_class_order"    ? &b.max_class_order
                             : key == "max_basis"          ? &b.max_basis
                             : key == "max_classes"        ? &b.max_classes
                             : key == "max_products"       ? &b.max_products
                                                           : nullptr;
        if (!field) throw InputError("unknown budget key: " + key);
        *field = value;
    }
}

std::string element_list(const FiniteGroup& g, const ElementSet& s) {
    std::string out = "{";
    s.for_each([&](Element e) { out += (out.size() > 1 ? "," : "") + g.element_name(e); });
    return out + "}";
}

void print_group(const GroupPtr& g) {
    std::cout << "group      " << g->name() << "\n"
              << "order      " << g->order() << "\n"
              << "abelian    " << (g->is_abelian() ? "yes" : "no") << "\n"
              << "exponent   " << g->exponent() << "\n"
              << "center     " << element_list(*g, g->center()) << "\n"
              << "derived    " << element_list(*g, g->commutator_subgroup()) << "\n";
    if (g->order() <= 64) std::cout << "subgroups  " << subgroups(g).size() << "\n";
    std::cout << "elements  ";
    for (std::size_t x = 0; x < g->order(); ++x)
        std::cout << " " << g->element_name(static_cast<Element>(x)) << ":" << g->element_order(static_cast<Element>(x));
    std::cout << "\n";
}

// Idempotents by level in the Rees order (greatest first), each with the idempotents it
// covers directly below it.
void print_hasse(const ClassSemigroup& c, const IdempotentLattice& lat) {
    const std::size_t n = lat.idempotents.size();
    std::vector<std::size_t> depth(n, 0);
    // Longest chain down from the greatest element; the lattice is small.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    auto above = [&](std::size_t i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) k += lat.rees_leq[i][j] && i != j;
        return k;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return above(a) < above(b); });
    for (auto i : order)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && lat.rees_leq[i][j]) depth[i] = std::max(depth[i], depth[j] + 1);
    const std::size_t levels = n ? *std::max_element(depth.begin(), depth.end()) + 1 : 0;
    for (std::size_t lv = 0; lv < levels; ++lv) {
        std::cout << "  level " << lv << ":";
        for (std::size_t i = 0; i < n; ++i)
            if (depth[i] == lv) std::cout << "  [" << c.reps[lat.idempotents[i]].to_string() << "]";
        std::cout << "\n";
        for (std::size_t i = 0; i < n; ++i) {
            if (depth[i] != lv) continue;
            std::vector<std::string> covers;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || !lat.rees_leq[j][i]) continue;
                bool direct = true;
                for (std::size_t k = 0; k < n && direct; ++k)
                    direct = !(k != i && k != j && lat.rees_leq[j][k] && lat.rees_leq[k][i]);
                if (direct) covers.push_back(c.reps[lat.idempotents[j]].to_string());
            }
            if (covers.empty()) continue;
            std::cout << "    [" << c.reps[lat.idempotents[i]].to_string() << "]";
            for (std::size_t k = 0; k < covers.size(); ++k) std::cout << (k ? "\n     " + std::string(c.reps[lat.idempotents[i]].to_string().size() + 1, ' ') : "") << " \\-- [" << covers[k] << "]";
            std::cout << "\n";
        }
    }
}

Sequence random_sequence(const GroupPtr& g, std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len), el(0, g->order() - 1);
    std::vector<Element> v(len(rng));
    for (auto& x : v) x = static_cast<Element>(el(rng));
    return Sequence(g, v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prodone: product-one sequences over finite groups"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    std::size_t threads = 0, states = 0;
    std::uint64_t seed = 1;
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--seed", seed, "seed for randomized sampling");
    app.add_option("--budget-states", states, "submultiset DP entries per table");

    std::string desc, literal, budget_spec, out_file, cache_dir, claim_id, filter = "*";
    std::size_t max_len = 0, sample = 0;
    bool as_json = false, all = false, optional = false, timing = false;

    auto* group_cmd = app.add_subcommand("group", "group queries");
    group_cmd->require_subcommand(1);
    auto* info = group_cmd->add_subcommand("info", "order, center, commutator subgroup, element orders");
    info->add_option("descriptor", desc)->required();

    auto* pi = app.add_subcommand("pi", "products pi(S) and subsequence products Pi(S)");
    pi->add_option("descriptor", desc)->required();
    pi->add_option("sequence", literal)->required();

    auto* atoms_cmd = app.add_subcommand("atoms", "enumerate atoms of B(G)");
    atoms_cmd->add_option("descriptor", desc)->required();
    atoms_cmd->add_option("--max-len", max_len, "length bound (default |G|)");
    atoms_cmd->add_option("--cache", cache_dir, "cache directory");
    atoms_cmd->add_flag("--json", as_json);

    auto* dav = app.add_subcommand("davenport", "large and small Davenport constants");
    dav->add_option("descriptor", desc)->required();

    auto* lengths = app.add_subcommand("lengths", "set of lengths L(S)");
    lengths->add_option("descriptor", desc)->required();
    lengths->add_option("sequence", literal)->required();

    auto* classes = app.add_subcommand("classes", "class semigroup C(B(G), F(G))");
    classes->add_option("descriptor", desc)->required();
    classes->add_option("--caps", budget_spec, "budget overrides, e.g. max_class_order=12,max_basis=8192");
    classes->add_option("--cache", cache_dir, "cache directory");
    classes->add_option("--verify-sample", sample, "cross-check N random pairs against the completion engine");
    classes->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "run claim checks");
    verify->add_option("claim", claim_id, "claim id or glob");
    verify->add_flag("--all", all, "every non-optional claim");
    verify->add_flag("--optional", optional, "include optional claims");
    verify->add_flag("--json", as_json);
    verify->add_flag("--timing", timing, "include wall times (reports stop being byte-identical)");
    verify->add_option("--budget", budget_spec, "budget overrides, e.g. max_atom_order=8");
    verify->add_option("--cache", cache_dir, "cache directory");

    auto* report = app.add_subcommand("report", "run claims and write a JSON report");
    report->add_option("--out", out_file, "output file")->required();
    report->add_option("--filter", filter, "claim id glob");
    report->add_flag("--optional", optional, "include optional claims");
    report->add_flag("--timing", timing);
    report->add_option("--budget", budget_spec);
    report->add_option("--cache", cache_dir);

    auto* list = app.add_subcommand("claims", "list registered claims");

    CLI11_PARSE(app, argc, argv);
    set_thread_count(threads);

    try {
        Budget budget;
        if (states) budget.max_states = states;
        if (!budget_spec.empty()) apply_budget(budget_spec, budget);
        const std::optional<std::filesystem::path> cache =
            cache_dir.empty() ? default_cache_dir() : std::optional<std::filesystem::path>(cache_dir);

        if (info->parsed()) {
            print_group(build_group(desc, budget));
        } else if (pi->parsed()) {
            const auto g = build_group(desc, budget);
            const Sequence s = parse_sequence(g, literal);
            std::cout << "S          " << s.to_string() << " (length " << s.length() << ")\n"
                      << "pi(S)      " << element_list(*g, product_set(s, budget.max_states).members) << "\n"
                      << "Pi(S)      " << element_list(*g, subsequence_products(s, budget.max_states).members) << "\n"
                      << "product-one " << (is_product_one(s, budget.max_states) ? "yes" : "no") << "\n"
                      << "product-one free " << (is_product_one_free(s, budget.max_states) ? "yes" : "no") << "\n";
        } else if (atoms_cmd->parsed()) {
            const auto g = build_group(desc, budget);
            const std::size_t len = max_len ? max_len : g->order();
            DiskCache dc(cache);
            std::optional<AtomSet> a;
            if (len >= g->order()) a = dc.load_atoms(desc, g);
            if (!a) {
                a = enumerate_atoms(g, len, budget);
                if (len >= g->order()) dc.store_atoms(desc, *a);
            }
            if (as_json) {
                std::cout << atoms_to_json(desc, *a).dump() << "\n";
            } else {
                std::map<std::size_t, std::size_t> by_len;
                for (const auto& s : a->atoms) ++by_len[s.length()];
                std::cout << a->atoms.size() << " atoms of length <= " << len << "\n";
                for (auto [l, n] : by_len) std::cout << "  length " << l << ": " << n << "\n";
                for (const auto& s : a->atoms) std::cout << s.to_string() << "\n";
            }
        } else if (dav->parsed()) {
            const auto r = davenport(build_group(desc, budget), budget);
            std::cout << "D(G) = " << r.large << "  witness " << r.witness_atom.to_string() << "\n"
                      << "d(G) = " << r.small << "  witness " << r.witness_free.to_string() << "\n";
        } else if (lengths->parsed()) {
            const auto g = build_group(desc, budget);
            const Sequence s = parse_sequence(g, literal);
            const LengthSet l = length_set(s, budget.max_states);
            std::cout << "L(S) = " << l.to_string() << "\n"
                      << "atom " << (is_atom(s, budget.max_states) ? "yes" : "no") << "\n";
        } else if (classes->parsed()) {
            const auto g = build_group(desc, budget);
            DiskCache dc(cache);
            std::optional<ClassSemigroup> c = dc.load_classes(desc, g);
            if (!c) {
                c = build_class_semigroup(g, budget);
                dc.store_classes(desc, *c, budget);
            }
            if (as_json) {
                std::cout << classes_to_json(desc, *c, budget).dump() << "\n";
            } else {
                const auto lat = idempotent_lattice(*c);
                const auto hp = h_classes(*c);
                std::cout << "classes     " << c->size() << "\n"
                          << "idempotents " << lat.idempotents.size() << "\n"
                          << "clifford    " << (is_clifford(*c) ? "yes" : "no") << "\n"
                          << "non-regular " << hp.unassigned.size() << "\n"
                          << "method      " << c->resolution.front().method << "\n"
                          << "Rees order of idempotents (each line: e \\-- f means f < e, no idempotent between):\n";
                print_hasse(*c, lat);
            }
            if (sample) {
                std::mt19937_64 rng(seed);
                CompletionEngine engine(g, budget);
                std::size_t bad = 0;
                for (std::size_t i = 0; i < sample; ++i) {
                    const Sequence s = random_sequence(g, rng, 6), t = random_sequence(g, rng, 6);
                    const auto v = classes_equal(engine, s, t);
                    const bool same = c->class_of(s) == c->class_of(t);
                    if (v.verdict == Verdict::unknown || (v.verdict == Verdict::equal) != same) {
                        ++bad;
                        std::cout << "mismatch: " << s.to_string() << " vs " << t.to_string() << "\n";
                    }
                }
                std::cout << "sampled " << sample << " pairs (seed " << seed << "): " << bad << " mismatches\n";
                if (bad) return 1;
            }
        } else if (list->parsed()) {
            for (const auto& c : claim_registry())
                std::cout << c.id << (c.optional ? " (optional)" : "") << "  " << c.description << "\n";
        } else if (verify->parsed() || report->parsed()) {
            RunOptions opts;
            if (!budget_spec.empty() || states) opts.budget = budget;
            opts.timing = timing;
            opts.include_optional = optional;
            ClaimContext ctx(cache);
            std::vector<ClaimReport> reports;
            if (verify->parsed()) {
                if (all == !claim_id.empty()) throw InputError("give a claim id or --all");
                if (!all && claim_id.find_first_of("*?[") == std::string::npos)
                    reports.push_back(run_claim(claim_id, ctx, opts));
                else
                    reports = run_all(all ? "*" : claim_id, ctx, opts);
                if (reports.empty()) throw InputError("no claim matches " + claim_id);
            } else {
                reports = run_all(filter, ctx, opts);
            }
            const json j = reports_json(reports);
            if (report->parsed()) {
                std::ofstream out(out_file);
                if (!out) throw InputError("cannot write " + out_file);
                out << j.dump(2) << "\n";
                std::cout << "wrote " << out_file << "\n";
            } else if (as_json) {
                std::cout << j.dump(2) << "\n";
            }
            if (!as_json)
                for (const auto& r : reports)
                    std::cout << to_string(r.status) << "  " << r.id << (r.optional ? " (optional)" : "")
                              << (r.wall_seconds ? "  " + std::to_string(*r.wall_seconds) + " s" : "") << "\n";
            return exit_status(reports);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
