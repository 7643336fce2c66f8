#include "prodone/sequence.hpp"

#include <algorithm>
#include <bit>

#include "prodone/errors.hpp"

namespace prodone {

Sequence::Sequence(GroupPtr g, std::span<const Element> terms) : group_(std::move(g)) {
    for (Element e : terms) terms_.push_back({e, 1});
    normalize();
}

Sequence Sequence::from_terms(GroupPtr g, std::vector<Term> terms) {
    Sequence s(std::move(g));
    s.terms_ = std::move(terms);
    s.normalize();
    return s;
}

Sequence Sequence::from_counts(GroupPtr g, std::span<const std::uint32_t> counts) {
    Sequence s(std::move(g));
    for (std::size_t e = 0; e < counts.size(); ++e)
        if (counts[e]) s.terms_.push_back({static_cast<Element>(e), counts[e]});
    s.normalize();
    return s;
}

Sequence Sequence::power_of(GroupPtr g, Element e, std::uint32_t k) { return from_terms(std::move(g), {{e, k}}); }

void Sequence::normalize() {
    for (const auto& t : terms_)
        if (!group_ || t.element >= group_->order()) throw InputError("sequence term outside the group");
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.element < b.element; });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
        if (t.count == 0) continue;
        if (!merged.empty() && merged.back().element == t.element)
            merged.back().count += t.count;
        else
            merged.push_back(t);
    }
    terms_ = std::move(merged);
    length_ = 0;
    for (const auto& t : terms_) length_ += t.count;
}

std::uint32_t Sequence::count(Element e) const {
    for (const auto& t : terms_)
        if (t.element == e) return t.count;
    return 0;
}

ElementSet Sequence::support() const {
    ElementSet s;
    for (const auto& t : terms_) s.insert(t.element);
    return s;
}

std::vector<Element> Sequence::expanded() const {
    std::vector<Element> out;
    out.reserve(length_);
    for (const auto& t : terms_) out.insert(out.end(), t.count, t.element);
    return out;
}

std::vector<std::uint32_t> Sequence::dense() const {
    std::vector<std::uint32_t> out(group_->order(), 0);
    for (const auto& t : terms_) out[t.element] = t.count;
    return out;
}

Sequence Sequence::operator*(const Sequence& o) const {
    if (group_ != o.group_) throw InputError("sequences over different groups");
    auto t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(group_, std::move(t));
}

Sequence Sequence::power(std::uint32_t k) const {
    auto t = terms_;
    for (auto& x : t) x.count *= k;
    return from_terms(group_, std::move(t));
}

Sequence Sequence::inverse() const {
    auto t = terms_;
    for (auto& x : t) x.element = group_->inverse(x.element);
    return from_terms(group_, std::move(t));
}

Sequence Sequence::minus(const Sequence& t) const {
    if (!t.divides(*this)) throw InputError("sequence does not divide");
    auto d = dense();
    for (const auto& x : t.terms_) d[x.element] -= x.count;
    return from_counts(group_, d);
}

Sequence Sequence::with(Element e, std::uint32_t k) const {
    auto t = terms_;
    t.push_back({e, k});
    return from_terms(group_, std::move(t));
}

bool Sequence::divides(const Sequence& s) const {
    if (group_ != s.group_) return false;
    for (const auto& x : terms_)
        if (s.count(x.element) < x.count) return false;
    return true;
}

Sequence Sequence::mapped(const GroupHom& h) const {
    if (h.source != group_) throw InputError("homomorphism source does not match the sequence's group");
    auto t = terms_;
    for (auto& x : t) x.element = h(x.element);
    return from_terms(h.target, std::move(t));
}

std::string Sequence::to_string() const {
    if (terms_.empty()) return "1^0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += ',';
        s += group_->element_name(t.element);
        if (t.count != 1) s += "^" + std::to_string(t.count);
    }
    return s;
}

bool operator<(const Sequence& a, const Sequence& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    // Lexicographic on expanded lists without materializing them.
    std::size_t i = 0, j = 0;
    std::uint32_t ui = 0, uj = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        const Element x = a.terms_[i].element, y = b.terms_[j].element;
        if (x != y) return x < y;
        const std::uint32_t ra = a.terms_[i].count - ui, rb = b.terms_[j].count - uj;
        const std::uint32_t step = std::min(ra, rb);
        ui += step;
        uj += step;
        if (ui == a.terms_[i].count) ++i, ui = 0;
        if (uj == b.terms_[j].count) ++j, uj = 0;
    }
    return false;
}

std::size_t SequenceHash::operator()(const Sequence& s) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& t : s.terms()) {
        h = (h ^ t.element) * 1099511628211ull;
        h = (h ^ t.count) * 1099511628211ull;
    }
    return h;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

Sequence parse_sequence(const GroupPtr& g, std::string_view literal) {
    literal = trim(literal);
    std::vector<Term> terms;
    if (literal.empty()) return Sequence(g);
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        auto next = literal.find(',', pos);
        if (next == std::string_view::npos) next = literal.size();
        std::string_view tok = trim(literal.substr(pos, next - pos));
        std::uint32_t mult = 1;
        if (auto caret = tok.rfind('^'); caret != std::string_view::npos) {
            const auto num = trim(tok.substr(caret + 1));
            if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos || num.size() > 6)
                throw InputError("bad multiplicity in term '" + std::string(tok) + "'");
            mult = static_cast<std::uint32_t>(std::stoul(std::string(num)));
            tok = trim(tok.substr(0, caret));
        }
        auto e = g->find(tok);
        if (!e) throw InputError("unknown element '" + std::string(tok) + "' in " + g->name());
        terms.push_back({*e, mult});
        pos = next + 1;
    }
    return Sequence::from_terms(g, std::move(terms));
}

SubmultisetTable::SubmultisetTable(const Sequence& s, std::size_t max_states) : source_(s) {
    std::size_t total = 1;
    for (const auto& t : s.terms()) {
        radix_.push_back(t.count);
        strides_.push_back(total);
        total *= t.count + 1;
        if (total > max_states) throw BudgetExceeded("submultiset states", max_states);
    }
    size_ = total;
    const auto& g = s.group();
    const std::size_t k = radix_.size(), n = g.order();
    const bool small = n <= 64;
    const bool abelian = g.is_abelian();
    // rcol[i][b] = b · (i-th term), for the 64-bit representation.
    std::vector<std::uint8_t> rcol;
    if (small) {
        small_.resize(total);
        small_[0] = 1;
        rcol.resize(k * n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t b = 0; b < n; ++b)
                rcol[i * n + b] = static_cast<std::uint8_t>(g.mul(static_cast<Element>(b), s.terms()[i].element));
    } else {
        sets_.resize(total);
        sets_[0] = ElementSet::single(0);
    }
    std::vector<std::uint32_t> v(k, 0);
    for (std::size_t state = 1; state < total; ++state) {
        for (std::size_t i = 0; i < k; ++i) {  // odometer increment
            if (v[i] < radix_[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
        }
        if (small) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (!v[i]) continue;
                const std::uint8_t* col = &rcol[i * n];
                for (std::uint64_t x = small_[state - strides_[i]]; x; x &= x - 1)
                    acc |= std::uint64_t{1} << col[std::countr_zero(x)];
                if (abelian) break;  // every ordering has the same product
            }
            small_[state] = acc;
        } else {
            ElementSet acc;
            for (std::size_t i = 0; i < k; ++i)
                if (v[i]) acc |= g.right_mul(sets_[state - strides_[i]], s.terms()[i].element);
            sets_[state] = acc;
        }
    }
}

ElementSet SubmultisetTable::products(std::size_t state) const {
    if (small_.empty()) return sets_[state];
    ElementSet out;
    for (std::uint64_t x = small_[state]; x; x &= x - 1) out.insert(static_cast<Element>(std::countr_zero(x)));
    return out;
}

Sequence SubmultisetTable::subsequence(std::size_t state) const {
    std::vector<Term> t;
    for (std::size_t i = 0; i < radix_.size(); ++i) t.push_back({source_.terms()[i].element, digit(state, i)});
    return Sequence::from_terms(source_.group_ptr(), std::move(t));
}

bool SubmultisetTable::below(std::size_t u, std::size_t v) const {
    for (std::size_t i = 0; i < radix_.size(); ++i)
        if (digit(u, i) > digit(v, i)) return false;
    return true;
}

ElementSet SubmultisetTable::subsequence_products() const {
    ElementSet out;
    if (!small_.empty()) {
        std::uint64_t m = 0;
        for (std::size_t i = 1; i < size_; ++i) m |= small_[i];
        for (; m; m &= m - 1) out.insert(static_cast<Element>(std::countr_zero(m)));
        return out;
    }
    for (std::size_t i = 1; i < size_; ++i) out |= sets_[i];
    return out;
}

ProductSet product_set(const Sequence& s, std::size_t max_states) {
    const auto& g = s.group();
    if (g.is_abelian()) {
        Element p = 0;
        for (const auto& t : s.terms()) p = g.mul(p, g.power(t.element, t.count));
        return {s.group_ptr(), ElementSet::single(p)};
    }
    SubmultisetTable table(s, max_states);
    return {s.group_ptr(), table.products(table.full())};
}

ProductSet subsequence_products(const Sequence& s, std::size_t max_states) {
    SubmultisetTable table(s, max_states);
    return {s.group_ptr(), table.subsequence_products()};
}

bool is_product_one(const Sequence& s, std::size_t max_states) {
    const auto& g = s.group();
    if (s.empty()) return true;
    std::size_t c = 0;
    for (const auto& t : s.terms())
        for (std::uint32_t k = 0; k < t.count % g.exponent(); ++k)
            c = g.abelian_mul_class(c, g.abelian_class(t.element));
    if (c != 0) return false;  // every ordering has the same image in G/G'
    return product_set(s, max_states).contains(0);
}

bool is_product_one_free(const Sequence& s, std::size_t max_states) {
    if (s.empty()) return true;
    if (s.count(0)) return false;
    return !subsequence_products(s, max_states).members.contains(0);
}

SplitInvariant split_invariant(const Sequence& s, std::size_t cap, std::size_t max_states) {
    if (cap == 0) throw InputError("split invariant cap must be positive");
    const auto& g = s.group();
    SplitInvariant out{s.group_ptr(), {}, cap, true};
    std::vector<std::size_t> strides;
    std::vector<std::uint32_t> radix;
    std::size_t total = 1;
    for (const auto& t : s.terms()) {
        radix.push_back(t.count);
        strides.push_back(total);
        total *= t.count + 1;
        if (total > max_states) throw BudgetExceeded("split invariant states", max_states);
    }
    // Each item is the closed block products followed by the open block's product.
    std::vector<std::set<std::vector<Element>>> states(total);
    states[0].insert({0});
    std::size_t items = 1;
    const std::size_t k = radix.size();
    for (std::size_t state = 0; state < total; ++state) {
        for (const auto& item : states[state]) {
            for (std::size_t i = 0; i < k; ++i) {
                if (state / strides[i] % (radix[i] + 1) == radix[i]) continue;
                const Element x = s.terms()[i].element;
                auto& dest = states[state + strides[i]];
                auto extend = item;
                extend.back() = g.mul(extend.back(), x);
                items += dest.insert(std::move(extend)).second;
                auto split = item;
                if (split.back() == 0) {
                    split.back() = x;
                } else {
                    split.push_back(x);
                    if (split.size() - 1 > cap) {
                        out.saturated = false;
                        continue;
                    }
                }
                items += dest.insert(std::move(split)).second;
            }
            if (items > max_states) throw BudgetExceeded("split invariant states", max_states);
        }
        if (state + 1 < total) states[state].clear();
    }
    for (auto item : states[total - 1]) {
        if (item.back() == 0) item.pop_back();
        if (item.size() > cap) {
            out.saturated = false;
            continue;
        }
        out.tuples.insert(std::move(item));
    }
    return out;
}

}  // namespace prodone
