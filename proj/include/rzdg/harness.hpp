#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rzdg/graph.hpp"
#include "rzdg/ring.hpp"
#include "rzdg/solver.hpp"

namespace rzdg {

enum class CheckStatus { confirmed, violated, skipped, infeasible };
std::string to_string(CheckStatus s);
std::optional<CheckStatus> status_from_string(const std::string& s);

// One verification row: a cataloged claim evaluated on one instance.
struct TheoremCheck {
    std::string claim;
    std::string instance;
    bool hypotheses_met = false;
    std::string predicted; // empty when the hypothesis fails
    std::string computed;  // empty when nothing was computed
    CheckStatus status = CheckStatus::skipped;
    std::int64_t elapsed_ms = 0;
};

struct ClaimInfo {
    std::string id;
    std::string statement;
};
// Stable catalog of claims, in report order.
const std::vector<ClaimInfo>& claim_catalog();

// Expand claim selectors: an exact id selects itself, otherwise a selector
// matches every id it prefixes ("T3.12" -> T3.12a, T3.12b, T3.12c).
// Unknown selectors raise an invalid-argument error.
std::vector<std::string> resolve_claims(const std::vector<std::string>& selectors);

// Hypothesis facts about a ring instance.
struct RingFacts {
    int factor_count = 0;
    std::vector<std::uint64_t> factor_orders;
    std::vector<int> factor_diameters; // diameter of each factor's zero-divisor graph
    bool local = false;
    bool zr_ideal = false;
    std::uint64_t beta = 0;
    std::uint64_t order = 0;
};
RingFacts classify_instance(const RingSpec& ring);

// The claim's prediction for an instance, rendered; nullopt when the
// hypothesis fails.
std::optional<std::string> predict(const std::string& claim_id, const std::string& instance);

// Evaluate one claim on one instance descriptor ("Z25", "path:7", "Z4xZ9",
// "Z25|Z25" for graph pairs).
TheoremCheck check(const std::string& claim_id, const std::string& instance,
                   const SolveOptions& budget = {});

struct SweepSpec {
    std::vector<std::string> claims; // selectors; empty means all
    std::uint64_t max_n = 200;       // modulus / size range
    std::uint64_t max_order = 0;     // product and total-graph order cap; 0 -> max_n
    std::uint64_t max_product_vertices = 300;
    bool prime_powers_only = false;  // restrict Z_n sweeps to prime powers
    SolveOptions budget{};
    int threads = 0; // 0 = library default
};

struct SweepReport {
    std::vector<TheoremCheck> rows;
    int confirmed = 0;
    int violated = 0;
    int skipped = 0;
    int infeasible = 0;
};

SweepReport run_suite(const SweepSpec& spec);

// Serializations. elapsed_ms is reported as 0 unless include_elapsed is set,
// so that reports are byte-stable across runs.
std::string report_csv(const SweepReport& report, bool include_elapsed = false);
std::string report_json(const SweepReport& report, bool include_elapsed = false);
std::string report_markdown(const SweepReport& report, bool include_elapsed = false);
std::string report_text(const SweepReport& report, bool include_elapsed = false);
SweepReport report_from_json(const std::string& text);

// Pinned expectations: map "claim:instance" -> status name.
std::map<std::string, std::string> pinned_from_report(const SweepReport& report);
std::string pinned_to_json(const std::map<std::string, std::string>& pinned);
std::map<std::string, std::string> pinned_from_json(const std::string& text);

struct PinnedDiff {
    std::vector<std::string> unexpected; // violated in the report, not pinned
    std::vector<std::string> missing;    // pinned as violated, not violated now
    bool clean() const { return unexpected.empty() && missing.empty(); }
};
PinnedDiff compare_pinned(const SweepReport& report,
                          const std::map<std::string, std::string>& pinned);

} // namespace rzdg
