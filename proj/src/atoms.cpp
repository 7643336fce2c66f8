#include "prodone/atoms.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

#include "prodone/errors.hpp"
#include "prodone/parallel.hpp"

namespace prodone {

namespace {

// π over all submultisets of a sequence that grows and shrinks at its largest element.
// With the newest distinct element as the most significant digit, every push appends a
// contiguous block of states, so pop is a plain truncation. Sets are 64-bit masks, which
// limits this table to groups of order at most 64.
class IncrementalTable {
public:
    IncrementalTable(const FiniteGroup& g, std::size_t max_states) : n_(g.order()), max_states_(max_states) {
        if (n_ > 64) throw BudgetExceeded("incremental product table group order", 64);
        rmul_.resize(n_ * n_);
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t b = 0; b < n_; ++b)
                rmul_[x * n_ + b] = static_cast<std::uint8_t>(g.mul(static_cast<Element>(b), static_cast<Element>(x)));
        sets_.push_back(1);
    }

    // Appends e (never smaller than the current largest term); returns the first new state.
    std::size_t push(Element e) {
        const std::size_t old = sets_.size();
        const bool fresh = dims_.empty() || dims_.back().e != e;
        if (fresh)
            dims_.push_back({e, 1, old});
        else
            ++dims_.back().m;
        history_.push_back({old, fresh});
        const Dim top = dims_.back();
        const std::size_t block = top.stride;
        if (old + block > max_states_) {
            pop();
            throw BudgetExceeded("submultiset states", max_states_);
        }
        sets_.resize(old + block);
        const std::size_t lower = dims_.size() - 1;
        digits_.assign(lower, 0);
        for (std::size_t r = 0; r < block; ++r) {
            const std::size_t state = old + r;
            std::uint64_t acc = rmul(sets_[state - top.stride], top.e);
            for (std::size_t i = 0; i < lower; ++i)
                if (digits_[i]) acc |= rmul(sets_[state - dims_[i].stride], dims_[i].e);
            sets_[state] = acc;
            for (std::size_t i = 0; i < lower; ++i) {
                if (digits_[i] < dims_[i].m) {
                    ++digits_[i];
                    break;
                }
                digits_[i] = 0;
            }
        }
        return old;
    }

    void pop() {
        const auto [old, fresh] = history_.back();
        history_.pop_back();
        sets_.resize(old);
        if (fresh)
            dims_.pop_back();
        else
            --dims_.back().m;
    }

    std::size_t full() const { return sets_.size() - 1; }
    bool has_identity(std::size_t state) const { return sets_[state] & 1u; }

    bool block_has_identity(std::size_t from) const {
        for (std::size_t s = from; s < sets_.size(); ++s)
            if (sets_[s] & 1u) return true;
        return false;
    }

    // Some proper nonempty submultiset and its complement are both product-one.
    bool splits() const {
        const std::size_t f = full();
        for (std::size_t v = 1; 2 * v <= f; ++v)
            if (sets_[v] & sets_[f - v] & 1u) return true;
        return false;
    }

private:
    std::uint64_t rmul(std::uint64_t x, Element g) const {
        const std::uint8_t* col = &rmul_[g * n_];
        std::uint64_t r = 0;
        while (x) {
            r |= std::uint64_t{1} << col[std::countr_zero(x)];
            x &= x - 1;
        }
        return r;
    }

    struct Dim {
        Element e;
        std::uint32_t m;
        std::size_t stride;
    };
    std::size_t n_;
    std::size_t max_states_;
    std::vector<std::uint8_t> rmul_;
    std::vector<std::uint64_t> sets_;
    std::vector<Dim> dims_;
    std::vector<std::pair<std::size_t, bool>> history_;
    std::vector<std::uint32_t> digits_;
};

struct NodeCounter {
    std::atomic<std::size_t> used{0};
    std::size_t limit;
    void tick() {
        if (used.fetch_add(1, std::memory_order_relaxed) >= limit) throw BudgetExceeded("search nodes", limit);
    }
};

Sequence from_path(const GroupPtr& g, const std::vector<Element>& path) { return Sequence(g, path); }

// Abelian atoms: U = P·(−σ(P)) with P zero-sum free; canonical when −σ(P) ≥ max(P).
void abelian_atoms(const FiniteGroup& g, const GroupPtr& gp, const ElementSet& allowed, std::size_t max_len,
                   std::vector<Element>& path, const ElementSet& sums, Element sum, NodeCounter& nodes,
                   std::vector<Sequence>& out) {
    const Element start = path.back();
    const Element closing = g.inverse(sum);
    if (path.size() < max_len && closing >= start && allowed.contains(closing)) {
        path.push_back(closing);
        out.push_back(from_path(gp, path));
        path.pop_back();
    }
    if (path.size() + 2 > max_len) return;
    for (std::size_t x = start; x < g.order(); ++x) {
        const auto e = static_cast<Element>(x);
        if (!allowed.contains(e) || sums.contains(g.inverse(e))) continue;
        nodes.tick();
        ElementSet next = sums | g.right_mul(sums, e);
        next.insert(e);
        path.push_back(e);
        abelian_atoms(g, gp, allowed, max_len, path, next, g.mul(sum, e), nodes, out);
        path.pop_back();
    }
}

// `cls` is the image of the path in G/G'; a product-one sequence must map to the identity there.
void nonabelian_atoms(const FiniteGroup& g, const GroupPtr& gp, const ElementSet& allowed, std::size_t max_len,
                      std::vector<Element>& path, std::size_t cls, IncrementalTable& table, NodeCounter& nodes,
                      std::vector<Sequence>& out) {
    if (path.size() >= max_len) return;
    const bool leaf = path.size() + 1 == max_len;
    for (std::size_t x = path.back(); x < g.order(); ++x) {
        const auto e = static_cast<Element>(x);
        if (!allowed.contains(e)) continue;
        nodes.tick();
        const std::size_t next = g.abelian_mul_class(cls, g.abelian_class(e));
        if (leaf && next != 0) continue;  // no children need the table
        table.push(e);
        path.push_back(e);
        if (next == 0 && table.has_identity(table.full()) && !table.splits()) out.push_back(from_path(gp, path));
        nonabelian_atoms(g, gp, allowed, max_len, path, next, table, nodes, out);
        path.pop_back();
        table.pop();
    }
}

// Longest product-one free sequences; tracks the first (lexicographically least) of maximal length.
struct FreeSearch {
    const FiniteGroup& g;
    const GroupPtr& gp;
    NodeCounter& nodes;
    std::size_t stop_at;  // 0 = exhaustive
    std::vector<Element> best;
    bool found_target = false;

    void record(const std::vector<Element>& path) {
        if (path.size() > best.size()) best = path;
        if (stop_at && path.size() >= stop_at) found_target = true;
    }

    void abelian(std::vector<Element>& path, const ElementSet& sums) {
        record(path);
        if (found_target) return;
        const std::size_t start = path.empty() ? 1 : path.back();
        for (std::size_t x = start; x < g.order() && !found_target; ++x) {
            const auto e = static_cast<Element>(x);
            if (sums.contains(g.inverse(e))) continue;
            nodes.tick();
            ElementSet next = sums | g.right_mul(sums, e);
            next.insert(e);
            path.push_back(e);
            abelian(path, next);
            path.pop_back();
        }
    }

    void nonabelian(std::vector<Element>& path, IncrementalTable& table) {
        record(path);
        if (found_target) return;
        const std::size_t start = path.empty() ? 1 : path.back();
        for (std::size_t x = start; x < g.order() && !found_target; ++x) {
            const auto e = static_cast<Element>(x);
            nodes.tick();
            const std::size_t from = table.push(e);
            if (!table.block_has_identity(from)) {
                path.push_back(e);
                nonabelian(path, table);
                path.pop_back();
            }
            table.pop();
        }
    }
};

}  // namespace

std::vector<Sequence> AtomSet::of_length(std::size_t len) const {
    std::vector<Sequence> out;
    for (const auto& a : atoms)
        if (a.length() == len) out.push_back(a);
    return out;
}

bool AtomSet::contains(const Sequence& s) const { return std::binary_search(atoms.begin(), atoms.end(), s); }

bool is_atom(const Sequence& s, std::size_t max_states) {
    if (s.empty()) return false;
    if (s.length() == 1) return s.least() == 0;
    if (s.count(0)) return false;
    if (!is_product_one(s, max_states)) return false;
    SubmultisetTable t(s, max_states);
    const std::size_t f = t.full();
    for (std::size_t v = 1; 2 * v <= f; ++v)
        if (t.has_identity(v) && t.has_identity(f - v)) return false;
    return true;
}

bool has_proper_product_one_subsequence(const Sequence& s, std::size_t max_states) {
    if (s.length() < 2) return false;
    SubmultisetTable t(s, max_states);
    for (std::size_t v = 1; v < t.full(); ++v)
        if (t.has_identity(v)) return true;
    return false;
}

AtomSet enumerate_atoms(const GroupPtr& gp, std::size_t max_len, const Budget& budget,
                        std::optional<ElementSet> allowed_opt) {
    const auto& g = *gp;
    if (max_len > g.order()) throw InputError("atoms are never longer than the group order");
    const ElementSet allowed = allowed_opt ? (*allowed_opt & g.all()) : g.all();
    const bool restricted = allowed_opt && allowed != g.all();
    if (!g.is_abelian() && !restricted && g.order() > budget.max_atom_order)
        throw BudgetExceeded("atom enumeration group order", budget.max_atom_order);

    AtomSet result{gp, max_len, allowed, {}};
    if (max_len == 0) return result;
    if (allowed.contains(0)) result.atoms.push_back(Sequence::power_of(gp, 0, 1));

    NodeCounter nodes{{0}, budget.max_nodes};
    std::vector<Element> roots;
    for (std::size_t x = 1; x < g.order(); ++x)
        if (allowed.contains(static_cast<Element>(x))) roots.push_back(static_cast<Element>(x));
    std::vector<std::vector<Sequence>> parts(roots.size());
    parallel_for(roots.size(), [&](std::size_t i) {
        const Element e = roots[i];
        std::vector<Element> path{e};
        if (g.is_abelian()) {
            ElementSet sums = ElementSet::single(e);
            abelian_atoms(g, gp, allowed, max_len, path, sums, e, nodes, parts[i]);
        } else {
            IncrementalTable table(g, budget.max_states);
            table.push(e);
            nonabelian_atoms(g, gp, allowed, max_len, path, g.abelian_class(e), table, nodes, parts[i]);
        }
    });
    for (auto& p : parts) result.atoms.insert(result.atoms.end(), p.begin(), p.end());
    std::sort(result.atoms.begin(), result.atoms.end());
    return result;
}

DavenportReport large_davenport(const GroupPtr& g, const Budget& budget) {
    const AtomSet atoms = enumerate_atoms(g, g->order(), budget);
    DavenportReport r{g, atoms.max_length(), 0, {}, {}};
    r.witness_atom = atoms.of_length(r.large).front();
    return r;
}

DavenportReport small_davenport(const GroupPtr& gp, const Budget& budget) {
    const auto& g = *gp;
    if (g.order() > budget.max_free_order)
        throw BudgetExceeded("product-one free search group order", budget.max_free_order);
    NodeCounter nodes{{0}, budget.max_nodes};
    FreeSearch search{g, gp, nodes, 0, {}, false};
    std::vector<Element> path;
    if (g.is_abelian()) {
        search.abelian(path, ElementSet{});
    } else {
        IncrementalTable table(g, budget.max_states);
        search.nonabelian(path, table);
    }
    DavenportReport r{gp, 0, search.best.size(), {}, Sequence(gp, search.best)};
    return r;
}

DavenportReport davenport(const GroupPtr& g, const Budget& budget) {
    DavenportReport r = large_davenport(g, budget);
    DavenportReport s = small_davenport(g, budget);
    r.small = s.small;
    r.witness_free = s.witness_free;
    return r;
}

std::optional<Sequence> find_product_one_free(const GroupPtr& gp, std::size_t target, std::size_t max_nodes,
                                              bool* exhausted) {
    const auto& g = *gp;
    NodeCounter nodes{{0}, max_nodes};
    FreeSearch search{g, gp, nodes, std::max<std::size_t>(target, 1), {}, false};
    std::vector<Element> path;
    if (exhausted) *exhausted = false;
    try {
        if (g.is_abelian()) {
            search.abelian(path, ElementSet{});
        } else {
            IncrementalTable table(g, 1u << 22);
            search.nonabelian(path, table);
        }
    } catch (const BudgetExceeded&) {
        if (exhausted) *exhausted = true;
        return std::nullopt;
    }
    if (target == 0) return Sequence(gp);
    if (!search.found_target) return std::nullopt;
    return Sequence(gp, search.best);
}

}  // namespace prodone
