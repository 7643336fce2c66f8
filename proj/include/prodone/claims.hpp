#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prodone/cache.hpp"
#include "prodone/factorization.hpp"

namespace prodone {

enum class Status { pass, fail, unknown };
const char* to_string(Status s);

// Shared results for a batch of claims: groups, complete atom sets and class tables by
// descriptor, backed by an optional disk cache. Not thread-safe.
class ClaimContext {
public:
    explicit ClaimContext(std::optional<std::filesystem::path> cache_dir = std::nullopt) : cache_(std::move(cache_dir)) {}

    GroupPtr group(const std::string& descriptor, const Budget& budget = {});
    // Every atom of B(G); D(G) is the length of the last one.
    const AtomSet& atoms(const std::string& descriptor, const Budget& budget = {});
    const ClassSemigroup& classes(const std::string& descriptor, const Budget& budget = {});
    const DiskCache& cache() const { return cache_; }

private:
    DiskCache cache_;
    std::map<std::string, GroupPtr> groups_;
    std::map<std::string, AtomSet> atoms_;
    std::map<std::string, ClassSemigroup> classes_;
};

using ClaimCheck = std::function<Status(ClaimContext&, const Budget&, nlohmann::json& evidence)>;

struct Claim {
    std::string id;            // paper anchor, e.g. "lemma-4.6.2"
    std::string description;
    std::vector<std::string> instances;
    Budget budget;
    bool optional = false;     // excluded from the default gate
    ClaimCheck check;
};

struct ClaimReport {
    std::string id;
    std::string description;
    bool optional = false;
    Status status = Status::unknown;
    nlohmann::json evidence;   // witnesses, counts, or the exhausted budget
    nlohmann::json budget;
    std::optional<double> wall_seconds;
};

struct RunOptions {
    std::optional<Budget> budget;   // replaces each claim's own budget
    bool timing = false;            // wall time breaks byte-identical reports
    bool include_optional = false;
};

const std::vector<Claim>& claim_registry();
const Claim* find_claim(const std::string& id);

// Throws InputError on an unknown id.
ClaimReport run_claim(const std::string& id, ClaimContext& ctx, const RunOptions& opts = {});
// Claims whose id matches the glob, sorted by id. Optional claims run only when requested or
// named exactly by the filter.
std::vector<ClaimReport> run_all(const std::string& filter, ClaimContext& ctx, const RunOptions& opts = {});

// 0 all pass, 1 any failure, 2 otherwise some unknown; optional unknowns are ignored.
int exit_status(const std::vector<ClaimReport>& reports);

nlohmann::json budget_json(const Budget& b);
nlohmann::json report_json(const ClaimReport& r);
nlohmann::json reports_json(const std::vector<ClaimReport>& reports);

}  // namespace prodone
