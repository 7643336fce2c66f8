#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>

#include <json.hpp>

#include "prodone/errors.hpp"
#include "prodone/group.hpp"

namespace prodone {

namespace {

// Enumerates the group generated by gens in shortlex order of generator words
// (BFS with right multiplication), then tabulates it.
template <class Raw, class Mul, class Namer>
GroupPtr build_by_words(std::string name, Raw identity, const std::vector<Raw>& gens, Mul mul, Namer namer,
                        std::size_t max_order) {
    std::map<Raw, std::size_t> index{{identity, 0}};
    std::vector<Raw> elems{identity};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const Raw& s : gens) {
            Raw y = mul(elems[i], s);
            if (index.emplace(y, elems.size()).second) {
                elems.push_back(y);
                if (elems.size() > max_order) throw BudgetExceeded("group order", max_order);
            }
        }
    const std::size_t n = elems.size();
    std::vector<Element> table(n * n);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
        names[i] = namer(elems[i]);
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Element>(index.at(mul(elems[i], elems[j])));
    }
    return std::make_shared<FiniteGroup>(std::move(name), n, std::move(table), std::move(names), false);
}

std::string power_name(const char* base, long k) {
    if (k == 0) return "";
    if (k == 1) return base;
    return base + std::to_string(k);
}

// a^i b^j names shared by dihedral and dicyclic groups.
std::string ab_name(long i, long j) {
    std::string s = power_name("a", i) + (j ? "b" : "");
    return s.empty() ? "1" : s;
}

GroupPtr cyclic(std::size_t n, std::size_t cap) {
    if (n > cap) throw BudgetExceeded("group order", cap);
    using R = long;
    return build_by_words(
        "C" + std::to_string(n), R{0}, std::vector<R>{n > 1 ? 1 : 0}, [n](R x, R y) { return (x + y) % static_cast<R>(n); },
        [](R x) { return x == 0 ? std::string("1") : power_name("g", x); }, cap);
}

GroupPtr dihedral(std::size_t m, std::size_t cap) {
    if (m < 4 || m % 2) throw InputError("dihedral order must be even and at least 4");
    if (m > cap) throw BudgetExceeded("group order", cap);
    const long n = static_cast<long>(m / 2);
    using R = std::pair<long, long>;
    auto mul = [n](R x, R y) {
        const long i = x.second ? x.first - y.first : x.first + y.first;
        return R{((i % n) + n) % n, (x.second + y.second) % 2};
    };
    return build_by_words("D" + std::to_string(m), R{0, 0}, std::vector<R>{{1, 0}, {0, 1}}, mul,
                          [](R x) { return ab_name(x.first, x.second); }, cap);
}

GroupPtr dicyclic(std::size_t m, std::size_t cap) {
    if (m < 4 || m % 4) throw InputError("dicyclic order must be a positive multiple of 4");
    if (m > cap) throw BudgetExceeded("group order", cap);
    const long n = static_cast<long>(m / 4), two_n = 2 * n;
    using R = std::pair<long, long>;
    // a^{2n} = 1, b^2 = a^n, b a = a^{-1} b.
    auto mul = [n, two_n](R x, R y) {
        auto md = [two_n](long v) { return ((v % two_n) + two_n) % two_n; };
        if (!x.second) return R{md(x.first + y.first), y.second};
        if (!y.second) return R{md(x.first - y.first), 1};
        return R{md(x.first - y.first + n), 0};
    };
    return build_by_words("Dic" + std::to_string(m), R{0, 0}, std::vector<R>{{1, 0}, {0, 1}}, mul,
                          [](R x) { return ab_name(x.first, x.second); }, cap);
}

GroupPtr quaternion(std::size_t cap) {
    if (cap < 8) throw BudgetExceeded("group order", cap);
    // (sign, unit) with unit 0..3 = 1, i, j, k.
    using R = std::pair<int, int>;
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    auto mul = [](R x, R y) { return R{x.first * y.first * sign[x.second][y.second], unit[x.second][y.second]}; };
    auto namer = [](R x) {
        static const char* u[4] = {"E", "I", "J", "K"};
        return std::string(x.first < 0 ? "-" : "") + u[x.second];
    };
    return build_by_words("Q8", R{1, 0}, std::vector<R>{{1, 1}, {1, 2}}, mul, namer, cap);
}

using Perm = std::vector<int>;

std::string cycle_name(const Perm& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        s += '(';
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            s += std::to_string(j + 1);
        }
        s += ')';
    }
    return s.empty() ? "1" : s;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Permutations act on the right: in x·y, x is applied first.
GroupPtr permutation_group(std::string name, std::size_t n, std::vector<Perm> gens, std::size_t expected,
                           std::size_t cap) {
    if (expected > cap) throw BudgetExceeded("group order", cap);
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    if (gens.empty()) gens.push_back(id);
    auto mul = [](const Perm& x, const Perm& y) {
        Perm z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = y[static_cast<std::size_t>(x[i])];
        return z;
    };
    return build_by_words(std::move(name), id, gens, mul, cycle_name, cap);
}

Perm cycle_perm(std::size_t n, std::vector<int> cycle) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i)
        p[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()] - 1;
    return p;
}

GroupPtr symmetric(std::size_t n, std::size_t cap) {
    if (n < 1 || n > 9) throw InputError("symmetric degree must be between 1 and 9");
    std::vector<Perm> gens;
    if (n >= 2) {
        gens.push_back(cycle_perm(n, {1, 2}));
        if (n >= 3) {
            std::vector<int> c(n);
            std::iota(c.begin(), c.end(), 1);
            gens.push_back(cycle_perm(n, c));
        }
    }
    return permutation_group("S" + std::to_string(n), n, gens, factorial(n), cap);
}

GroupPtr alternating(std::size_t n, std::size_t cap) {
    if (n < 1 || n > 6) throw InputError("alternating degree must be between 1 and 6");
    std::vector<Perm> gens;
    if (n >= 3) {
        gens.push_back(cycle_perm(n, {1, 2, 3}));
        if (n >= 4) {
            std::vector<int> c;
            for (std::size_t i = (n % 2 ? 1 : 2); i <= n; ++i) c.push_back(static_cast<int>(i));
            gens.push_back(cycle_perm(n, c));
        }
    }
    return permutation_group("A" + std::to_string(n), n, gens, n <= 1 ? 1 : factorial(n) / 2, cap);
}

GroupPtr from_cayley_file(const std::string& path, std::size_t cap) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open Cayley table file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("Cayley table file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || j.value("schema", "") != "prodone/cayley@1")
        throw InputError("Cayley table file has the wrong schema");
    std::vector<std::vector<std::size_t>> table;
    std::vector<std::string> names;
    try {
        const auto n = j.at("order").get<std::size_t>();
        table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
        if (table.size() != n) throw InputError("Cayley table does not match the declared order");
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed Cayley table file: " + std::string(e.what()));
    }
    return group_from_table("cayley:" + path, std::move(table), std::move(names), cap);
}

std::size_t parse_number(std::string_view s, std::string_view whole) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw InputError("malformed group descriptor '" + std::string(whole) + "'");
    return v;
}

GroupPtr build_factor(std::string_view tok, std::string_view whole, std::size_t cap) {
    auto starts = [&](std::string_view p) { return tok.substr(0, p.size()) == p; };
    if (tok == "Q8") return quaternion(cap);
    if (starts("Dic")) return dicyclic(parse_number(tok.substr(3), whole), cap);
    if (starts("C")) {
        const auto n = parse_number(tok.substr(1), whole);
        if (n == 0) throw InputError("cyclic order must be positive");
        return cyclic(n, cap);
    }
    if (starts("D")) return dihedral(parse_number(tok.substr(1), whole), cap);
    if (starts("S")) return symmetric(parse_number(tok.substr(1), whole), cap);
    if (starts("A")) return alternating(parse_number(tok.substr(1), whole), cap);
    throw InputError("malformed group descriptor '" + std::string(whole) + "'");
}

}  // namespace

GroupPtr build_group(std::string_view descriptor, const Budget& budget) {
    const std::size_t cap = std::min(budget.max_group_order, kMaxGroupOrder);
    if (descriptor.substr(0, 7) == "cayley:") return from_cayley_file(std::string(descriptor.substr(7)), cap);
    if (descriptor.empty()) throw InputError("empty group descriptor");

    std::vector<GroupPtr> factors;
    std::size_t pos = 0;
    while (true) {
        const auto next = descriptor.find('x', pos);
        std::string_view tok = descriptor.substr(pos, next == std::string_view::npos ? next : next - pos);
        std::size_t reps = 1;
        if (auto caret = tok.find('^'); caret != std::string_view::npos) {
            reps = parse_number(tok.substr(caret + 1), descriptor);
            tok = tok.substr(0, caret);
            if (reps == 0) throw InputError("power exponent must be positive");
        }
        if (tok.empty()) throw InputError("malformed group descriptor '" + std::string(descriptor) + "'");
        auto g = build_factor(tok, descriptor, cap);
        for (std::size_t i = 0; i < reps; ++i) factors.push_back(g);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    GroupPtr g = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, factors[i], cap);
    if (factors.size() == 1) return g;
    // Keep the descriptor as written as the group's name.
    std::vector<std::string> names = g->element_names();
    return std::make_shared<FiniteGroup>(std::string(descriptor), g->order(), g->table(), std::move(names), false);
}

GroupPtr metacyclic_group(std::size_t p, std::size_t q, std::size_t r) {
    // Z_p ⋊ Z_q with the generator of Z_q acting by multiplication by r.
    std::size_t rq = 1;
    for (std::size_t i = 0; i < q; ++i) rq = rq * r % p;
    if (rq != 1 % p) throw InputError("r^q must be 1 mod p");
    using R = std::pair<long, long>;
    std::vector<long> rpow(q);
    rpow[0] = 1;
    for (std::size_t i = 1; i < q; ++i) rpow[i] = rpow[i - 1] * static_cast<long>(r) % static_cast<long>(p);
    auto mul = [p, q, rpow](R x, R y) {
        return R{(x.first + rpow[static_cast<std::size_t>(x.second)] * y.first) % static_cast<long>(p),
                 (x.second + y.second) % static_cast<long>(q)};
    };
    auto namer = [](R x) {
        std::string s = power_name("a", x.first) + power_name("b", x.second);
        return s.empty() ? std::string("1") : s;
    };
    return build_by_words("M" + std::to_string(p) + "_" + std::to_string(q) + "_" + std::to_string(r), R{0, 0},
                          std::vector<R>{{1, 0}, {0, 1}}, mul, namer, kMaxGroupOrder);
}

}  // namespace prodone
