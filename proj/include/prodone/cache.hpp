#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "prodone/atoms.hpp"
#include "prodone/class_semigroup.hpp"

namespace prodone {

// PRODONE_CACHE, else $XDG_CACHE_HOME/prodone, else $HOME/.cache/prodone.
std::optional<std::filesystem::path> default_cache_dir();

nlohmann::json fingerprint_json(const GroupPtr& g);
nlohmann::json sequence_counts_json(const Sequence& s);   // [[elem, mult], ...]

nlohmann::json atoms_to_json(const std::string& descriptor, const AtomSet& atoms);
// nullopt when the schema, descriptor, library version or fingerprint does not match.
std::optional<AtomSet> atoms_from_json(const nlohmann::json& j, const std::string& descriptor, const GroupPtr& g);

nlohmann::json classes_to_json(const std::string& descriptor, const ClassSemigroup& c, const Budget& budget);
std::optional<ClassSemigroup> classes_from_json(const nlohmann::json& j, const std::string& descriptor, const GroupPtr& g);

// File-backed store keyed by descriptor. Unreadable or stale entries are ignored; writes go
// through a temporary file and a rename.
class DiskCache {
public:
    explicit DiskCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}
    bool enabled() const { return dir_.has_value(); }
    const std::optional<std::filesystem::path>& dir() const { return dir_; }

    std::optional<AtomSet> load_atoms(const std::string& descriptor, const GroupPtr& g) const;
    void store_atoms(const std::string& descriptor, const AtomSet& atoms) const;
    std::optional<ClassSemigroup> load_classes(const std::string& descriptor, const GroupPtr& g) const;
    void store_classes(const std::string& descriptor, const ClassSemigroup& c, const Budget& budget) const;

private:
    std::filesystem::path file(const std::string& descriptor, const char* kind) const;
    std::optional<nlohmann::json> read(const std::filesystem::path& p) const;
    void write(const std::filesystem::path& p, const nlohmann::json& j) const;

    std::optional<std::filesystem::path> dir_;
};

}  // namespace prodone
