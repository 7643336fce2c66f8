#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace oracle {

namespace {

// Keyed by the table itself: a freed group's address can be reused by another.
struct Memo {
    std::vector<Element> table;
    std::map<std::vector<Element>, bool> one;
    std::map<std::vector<Element>, bool> atom;
    std::map<std::vector<Element>, std::set<std::size_t>> len;
};

Memo& memo_for(const FiniteGroup& g) {
    thread_local Memo m;
    if (m.table != g.table()) m = Memo{g.table(), {}, {}, {}};
    return m;
}

bool one_sorted(const FiniteGroup& g, const std::vector<Element>& s) {
    auto& m = memo_for(g);
    if (auto it = m.one.find(s); it != m.one.end()) return it->second;
    const bool r = products(g, s).count(0) > 0;
    m.one.emplace(s, r);
    return r;
}

// Splits s by a bitmask into (selected, rest).
void split(const std::vector<Element>& s, unsigned mask, std::vector<Element>& a, std::vector<Element>& b) {
    a.clear();
    b.clear();
    for (std::size_t i = 0; i < s.size(); ++i) (mask >> i & 1u ? a : b).push_back(s[i]);
}

}  // namespace

std::set<Element> products(const FiniteGroup& g, std::vector<Element> terms) {
    std::sort(terms.begin(), terms.end());
    std::set<Element> out;
    do {
        Element p = 0;
        for (auto t : terms) p = g.mul(p, t);
        out.insert(p);
    } while (std::next_permutation(terms.begin(), terms.end()));
    return out;
}

bool product_one(const FiniteGroup& g, const std::vector<Element>& terms) {
    std::vector<Element> s = terms;
    std::sort(s.begin(), s.end());
    return one_sorted(g, s);
}

bool is_atom(const FiniteGroup& g, const std::vector<Element>& terms) {
    if (terms.empty()) return false;
    std::vector<Element> s = terms;
    std::sort(s.begin(), s.end());
    auto& m = memo_for(g);
    if (auto it = m.atom.find(s); it != m.atom.end()) return it->second;
    bool r = one_sorted(g, s);
    std::vector<Element> a, b;
    // Fixing s[0] in the first half visits every unordered split once.
    for (unsigned mask = 1; r && mask < (1u << s.size()) - 1; mask += 2) {
        split(s, mask, a, b);
        if (one_sorted(g, a) && one_sorted(g, b)) r = false;
    }
    m.atom.emplace(s, r);
    return r;
}

std::set<std::size_t> lengths(const FiniteGroup& g, const std::vector<Element>& terms) {
    std::vector<Element> s = terms;
    std::sort(s.begin(), s.end());
    if (s.empty()) return {0};
    auto& m = memo_for(g);
    if (auto it = m.len.find(s); it != m.len.end()) return it->second;
    std::set<std::size_t> out;
    std::vector<Element> a, b;
    for (unsigned mask = 1; mask < (1u << s.size()); mask += 2) {
        split(s, mask, a, b);
        if (!is_atom(g, a)) continue;
        if (b.empty()) {
            out.insert(1);
        } else if (one_sorted(g, b)) {
            for (auto k : lengths(g, b)) out.insert(k + 1);
        }
    }
    memo_for(g).len.emplace(s, out);
    return out;
}

namespace {

std::set<Element> close(const FiniteGroup& g, std::set<Element> s) {
    s.insert(0);
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<Element> cur(s.begin(), s.end());
        for (auto x : cur)
            for (auto y : cur) grew |= s.insert(g.mul(x, y)).second;
    }
    return s;
}

}  // namespace

std::set<Element> commutator_subgroup(const FiniteGroup& g) {
    std::set<Element> c;
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y) {
            const auto a = static_cast<Element>(x), b = static_cast<Element>(y);
            Element ainv = 0, binv = 0;
            for (std::size_t z = 0; z < g.order(); ++z) {
                if (g.mul(a, static_cast<Element>(z)) == 0) ainv = static_cast<Element>(z);
                if (g.mul(b, static_cast<Element>(z)) == 0) binv = static_cast<Element>(z);
            }
            c.insert(g.mul(g.mul(a, b), g.mul(ainv, binv)));
        }
    return close(g, c);
}

std::set<Element> center(const FiniteGroup& g) {
    std::set<Element> z;
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool central = true;
        for (std::size_t y = 0; y < g.order() && central; ++y)
            central = g.mul(static_cast<Element>(x), static_cast<Element>(y)) ==
                      g.mul(static_cast<Element>(y), static_cast<Element>(x));
        if (central) z.insert(static_cast<Element>(x));
    }
    return z;
}

std::set<std::set<Element>> subgroups(const FiniteGroup& g) {
    std::set<std::set<Element>> out;
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = x; y < g.order(); ++y)
            out.insert(close(g, {static_cast<Element>(x), static_cast<Element>(y)}));
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<std::set<Element>> cur(out.begin(), out.end());
        for (const auto& a : cur)
            for (const auto& b : cur) {
                std::set<Element> u = a;
                u.insert(b.begin(), b.end());
                grew |= out.insert(close(g, u)).second;
            }
    }
    return out;
}

}  // namespace oracle
