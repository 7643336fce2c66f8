#include "prodone/cache.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <system_error>

#include "prodone/errors.hpp"
#include "prodone/version.hpp"

namespace prodone {

using nlohmann::json;

std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* p = std::getenv("PRODONE_CACHE"); p && *p) return std::filesystem::path(p);
    if (const char* p = std::getenv("XDG_CACHE_HOME"); p && *p) return std::filesystem::path(p) / "prodone";
    if (const char* p = std::getenv("HOME"); p && *p) return std::filesystem::path(p) / ".cache" / "prodone";
    return std::nullopt;
}

json fingerprint_json(const GroupPtr& g) {
    const Fingerprint f = fingerprint(g);
    return {{"order", f.order}, {"exponent", f.exponent}, {"derived", f.derived}, {"center", f.center},
            {"subgroups", f.subgroups}};
}

json sequence_counts_json(const Sequence& s) {
    json out = json::array();
    for (const auto& t : s.terms()) out.push_back({t.element, t.count});
    return out;
}

namespace {

bool header_matches(const json& j, const char* schema, const std::string& descriptor, const GroupPtr& g) {
    return j.value("schema", "") == schema && j.value("group", "") == descriptor &&
           j.value("version", "") == kVersion && j.contains("fingerprint") && j["fingerprint"] == fingerprint_json(g);
}

Sequence sequence_from_counts(const GroupPtr& g, const json& counts) {
    std::vector<Term> terms;
    for (const auto& t : counts) {
        const auto e = t.at(0).get<std::size_t>();
        const auto m = t.at(1).get<std::uint32_t>();
        if (e >= g->order() || m == 0) throw InputError("bad term in cached sequence");
        terms.push_back({static_cast<Element>(e), m});
    }
    return Sequence::from_terms(g, std::move(terms));
}

}  // namespace

json atoms_to_json(const std::string& descriptor, const AtomSet& atoms) {
    json list = json::array();
    for (const auto& a : atoms.atoms) list.push_back(sequence_counts_json(a));
    return {{"schema", "prodone/atoms@1"}, {"group", descriptor}, {"version", kVersion},
            {"fingerprint", fingerprint_json(atoms.group)}, {"max_len", atoms.max_len}, {"atoms", std::move(list)}};
}

std::optional<AtomSet> atoms_from_json(const json& j, const std::string& descriptor, const GroupPtr& g) {
    if (!header_matches(j, "prodone/atoms@1", descriptor, g)) return std::nullopt;
    AtomSet a;
    a.group = g;
    a.max_len = j.at("max_len").get<std::size_t>();
    a.allowed = g->all();
    for (const auto& s : j.at("atoms")) a.atoms.push_back(sequence_from_counts(g, s));
    if (!std::is_sorted(a.atoms.begin(), a.atoms.end())) return std::nullopt;
    return a;
}

json classes_to_json(const std::string& descriptor, const ClassSemigroup& c, const Budget& budget) {
    json reps = json::array(), res = json::array(), idem = json::array();
    for (const auto& r : c.reps) reps.push_back(r.to_string());
    for (const auto& r : c.resolution) res.push_back({{"method", r.method}, {"basis_size", r.basis_size}});
    for (ClassId i = 0; i < c.size(); ++i)
        if (c.sum(i, i) == i) idem.push_back(i);
    return {{"schema", "prodone/classes@1"},
            {"group", descriptor},
            {"version", kVersion},
            {"fingerprint", fingerprint_json(c.group)},
            {"caps", {{"max_class_order", budget.max_class_order}, {"max_basis", budget.max_basis}}},
            {"reps", std::move(reps)},
            {"add", c.add},
            {"identity", c.identity},
            {"generator_map", c.generator_map},
            {"accepting", c.accepting},
            {"idempotents", std::move(idem)},
            {"resolution", std::move(res)}};
}

std::optional<ClassSemigroup> classes_from_json(const json& j, const std::string& descriptor, const GroupPtr& g) {
    if (!header_matches(j, "prodone/classes@1", descriptor, g)) return std::nullopt;
    ClassSemigroup c;
    c.group = g;
    for (const auto& r : j.at("reps")) c.reps.push_back(parse_sequence(g, r.get<std::string>()));
    c.add = j.at("add").get<std::vector<std::vector<ClassId>>>();
    c.identity = j.at("identity").get<ClassId>();
    c.generator_map = j.at("generator_map").get<std::vector<ClassId>>();
    c.accepting = j.at("accepting").get<std::vector<char>>();
    for (const auto& r : j.at("resolution"))
        c.resolution.push_back({r.at("method").get<std::string>(), r.at("basis_size").get<std::size_t>()});
    const std::size_t n = c.reps.size();
    if (c.add.size() != n || c.accepting.size() != n || c.resolution.size() != n || c.generator_map.size() != g->order() ||
        c.identity >= n)
        return std::nullopt;
    for (const auto& row : c.add) {
        if (row.size() != n) return std::nullopt;
        for (auto x : row)
            if (x >= n) return std::nullopt;
    }
    for (auto x : c.generator_map)
        if (x >= n) return std::nullopt;
    // Each representative must fold back onto its own class.
    for (ClassId i = 0; i < n; ++i)
        if (c.class_of(c.reps[i]) != i) return std::nullopt;
    return c;
}

std::filesystem::path DiskCache::file(const std::string& descriptor, const char* kind) const {
    std::string name;
    for (char ch : descriptor) name += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.' ? ch : '_';
    return *dir_ / (name + "." + kind + ".json");
}

std::optional<json> DiskCache::read(const std::filesystem::path& p) const {
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

void DiskCache::write(const std::filesystem::path& p, const json& j) const {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) return;
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump() << '\n';
        if (!out) return;
    }
    std::filesystem::rename(tmp, p, ec);
}

std::optional<AtomSet> DiskCache::load_atoms(const std::string& descriptor, const GroupPtr& g) const {
    if (!dir_) return std::nullopt;
    auto j = read(file(descriptor, "atoms"));
    if (!j) return std::nullopt;
    try {
        return atoms_from_json(*j, descriptor, g);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void DiskCache::store_atoms(const std::string& descriptor, const AtomSet& atoms) const {
    if (dir_) write(file(descriptor, "atoms"), atoms_to_json(descriptor, atoms));
}

std::optional<ClassSemigroup> DiskCache::load_classes(const std::string& descriptor, const GroupPtr& g) const {
    if (!dir_) return std::nullopt;
    auto j = read(file(descriptor, "classes"));
    if (!j) return std::nullopt;
    try {
        return classes_from_json(*j, descriptor, g);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void DiskCache::store_classes(const std::string& descriptor, const ClassSemigroup& c, const Budget& budget) const {
    if (dir_) write(file(descriptor, "classes"), classes_to_json(descriptor, c, budget));
}

}  // namespace prodone
