#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace prodone {

using Element = std::uint16_t;

// Hard ceiling on group order; descriptors are further limited by a configurable cap.
inline constexpr std::size_t kMaxGroupOrder = 512;

// Fixed-width bitset over element indices.
class ElementSet {
public:
    static constexpr std::size_t kWords = kMaxGroupOrder / 64;

    constexpr ElementSet() = default;

    static ElementSet single(Element e) {
        ElementSet s;
        s.insert(e);
        return s;
    }
    static ElementSet range(std::size_t n) {
        ElementSet s;
        for (std::size_t i = 0; i < n; ++i) s.insert(static_cast<Element>(i));
        return s;
    }

    void insert(Element e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
    void erase(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
    bool contains(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    std::size_t size() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    ElementSet& operator|=(const ElementSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ElementSet& operator&=(const ElementSet& o) {
        for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
    friend bool operator==(const ElementSet&, const ElementSet&) = default;

    bool is_subset_of(const ElementSet& o) const {
        for (std::size_t i = 0; i < kWords; ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < kWords; ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                auto b = static_cast<std::size_t>(std::countr_zero(w));
                f(static_cast<Element>(i * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<Element> members() const {
        std::vector<Element> out;
        for_each([&](Element e) { out.push_back(e); });
        return out;
    }

    // Orders by sorted member list; used to canonicalize subgroup lists.
    bool lex_less(const ElementSet& o) const { return members() < o.members(); }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ull;
        for (auto w : words_) h = (h ^ w) * 1099511628211ull;
        return h;
    }

private:
    std::array<std::uint64_t, kWords> words_{};
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace prodone
