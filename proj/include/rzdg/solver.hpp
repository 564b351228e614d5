#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "rzdg/graph.hpp"

namespace rzdg {

// f : V -> {0,1,2}; the induced partition is V_i = { v : f(v) = i }.
struct RomanAssignment {
    std::vector<std::uint8_t> values;
    int weight() const { return std::accumulate(values.begin(), values.end(), 0); }
};

// true iff every 0-valued vertex has a 2-valued neighbor
bool rdf_is_valid(const Graph& g, const RomanAssignment& f);
bool dominating_set_is_valid(const Graph& g, const std::vector<int>& s);

struct SolveOptions {
    std::int64_t time_budget_ms = 10'000;
    std::uint64_t node_budget = 100'000'000;
    // branch on the undominated vertex with fewest viable covers; when false,
    // branch on the one of maximum degree
    bool fail_first = true;
};

struct SolveReport {
    int value = 0;
    bool optimal = true;
    std::variant<RomanAssignment, std::vector<int>> certificate;
    std::uint64_t nodes = 0;
    std::int64_t elapsed_ms = 0;

    const RomanAssignment& assignment() const { return std::get<RomanAssignment>(certificate); }
    const std::vector<int>& dominating_set() const {
        return std::get<std::vector<int>>(certificate);
    }
};

// Exact Roman domination number with certificate. Disconnected graphs are
// decomposed and solved per component. When a budget runs out the report
// carries the incumbent (an upper bound) and optimal = false.
SolveReport gamma_r_exact(const Graph& g, const SolveOptions& opts = {});

// Exact domination number with a dominating-set certificate.
SolveReport gamma_exact(const Graph& g, const SolveOptions& opts = {});

// Deterministic greedy RDF: repeatedly assign 2 to the vertex covering the
// most undominated vertices (ties to the lowest index), then 1s.
RomanAssignment greedy_upper_bound(const Graph& g);

// Brute-force oracle: minimum of 2|V2| + |V \ N[V2]| over every subset V2.
// Serial reference kernel and the parallel front door; identical values.
int gamma_r_brute_serial(const Graph& g, int max_vertices = 20);
int gamma_r_brute(const Graph& g, int max_vertices = 20);
// Brute-force domination number, same subset enumeration.
int gamma_brute(const Graph& g, int max_vertices = 20);

std::string report_to_json(const SolveReport& report, bool include_elapsed = false);

} // namespace rzdg
