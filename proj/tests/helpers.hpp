#pragma once

#include <set>
#include <string>

#include "prodone/group.hpp"
#include "prodone/sequence.hpp"

namespace testing {

inline prodone::GroupPtr G(const std::string& d) { return prodone::build_group(d); }

inline prodone::Sequence seq(const prodone::GroupPtr& g, const std::string& lit) { return prodone::parse_sequence(g, lit); }

inline prodone::Element el(const prodone::GroupPtr& g, const std::string& name) { return *g->find(name); }

inline prodone::ElementSet names(const prodone::GroupPtr& g, std::initializer_list<const char*> ns) {
    prodone::ElementSet s;
    for (auto n : ns) s.insert(el(g, n));
    return s;
}

inline std::set<prodone::Element> as_set(const prodone::ElementSet& s) {
    auto m = s.members();
    return {m.begin(), m.end()};
}

}  // namespace testing
