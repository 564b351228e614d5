#include "rzdg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "json.hpp"
#include "rzdg/parse.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rzdg {

namespace {

using u64 = std::uint64_t;
using Status = CheckStatus;

// Cartesian-product bound rows only need a witness below the bound, so they
// run with a small node budget.
constexpr std::uint64_t kBoundClaimNodeBudget = 20'000;

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_prime_power(u64 n, u64* prime = nullptr, int* exp = nullptr) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int k = 0;
        u64 m = n;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) return false;
        if (prime) *prime = p;
        if (exp) *exp = k;
        return true;
    }
    if (prime) *prime = n;
    if (exp) *exp = 1;
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i)
        if (is_prime(i)) out.push_back(i);
    return out;
}

std::vector<u64> prime_powers_up_to(u64 n) {
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i)
        if (is_prime_power(i)) out.push_back(i);
    return out;
}

int distinct_prime_count(u64 n) {
    int count = 0;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        ++count;
        while (n % p == 0) n /= p;
    }
    if (n > 1) ++count;
    return count;
}

u64 max_order_of(const SweepSpec& spec) {
    return spec.max_order ? spec.max_order : spec.max_n;
}

long long ceil_two_thirds(long long n) { return (2 * n + 2) / 3; }

int zd_diameter(u64 q) {
    return diameter(zero_divisor_graph(RingSpec::from_modulus(q))).value_or(-1);
}

std::vector<u64> part_moduli(const std::string& ring_literal) {
    std::vector<u64> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = ring_literal.find('x', start);
        std::string tok = ring_literal.substr(
            start, pos == std::string::npos ? std::string::npos : pos - start);
        if (tok.size() < 2 || tok[0] != 'Z')
            throw Error(ErrorKind::invalid_argument, "bad ring literal '" + ring_literal + "'");
        out.push_back(std::stoull(tok.substr(1)));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

std::string ring_literal(const std::vector<u64>& parts) {
    std::string out;
    for (u64 m : parts) {
        if (!out.empty()) out += "x";
        out += "Z" + std::to_string(m);
    }
    return out;
}

std::pair<std::string, std::string> split_pair(const std::string& instance) {
    std::size_t bar = instance.find('|');
    if (bar == std::string::npos)
        throw Error(ErrorKind::invalid_argument,
                    "expected a 'Za|Zb' graph pair, got '" + instance + "'");
    return {instance.substr(0, bar), instance.substr(bar + 1)};
}

long long parse_single_param(const std::string& literal, const std::string& prefix) {
    if (literal.rfind(prefix, 0) != 0)
        throw Error(ErrorKind::invalid_argument,
                    "instance '" + literal + "' does not match '" + prefix + "<n>'");
    return std::stoll(literal.substr(prefix.size()));
}

std::vector<int> parse_part_sizes(const std::string& literal) {
    std::string prefix;
    if (literal.rfind("multi:", 0) == 0)
        prefix = "multi:";
    else if (literal.rfind("kbip:", 0) == 0)
        prefix = "kbip:";
    else
        throw Error(ErrorKind::invalid_argument,
                    "instance '" + literal + "' is not a multipartite literal");
    std::vector<int> sizes;
    std::string rest = literal.substr(prefix.size());
    std::size_t start = 0;
    while (start <= rest.size()) {
        std::size_t pos = rest.find(',', start);
        std::string tok =
            rest.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        sizes.push_back(std::stoi(tok));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return sizes;
}

// ---- row finishers ---------------------------------------------------------

void finish_equality(TheoremCheck& row, const Graph& g, long long predicted,
                     const SolveOptions& opts) {
    row.predicted = std::to_string(predicted);
    SolveReport rep = gamma_r_exact(g, opts);
    row.computed = std::to_string(rep.value);
    if (!rep.optimal) {
        row.status = Status::infeasible;
        return;
    }
    row.status = rep.value == predicted ? Status::confirmed : Status::violated;
}

void finish_interval(TheoremCheck& row, const Graph& g, long long lo, long long hi,
                     const SolveOptions& opts) {
    row.predicted = "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    SolveReport rep = gamma_r_exact(g, opts);
    row.computed = std::to_string(rep.value);
    if (!rep.optimal) {
        row.status = Status::infeasible;
        return;
    }
    row.status = (lo <= rep.value && rep.value <= hi) ? Status::confirmed : Status::violated;
}

// An incumbent at or below the bound already witnesses an upper-bound claim,
// whether or not the solver proved optimality.
void finish_upper_bound(TheoremCheck& row, const Graph& g, long long bound,
                        const SolveOptions& opts) {
    row.predicted = "<=" + std::to_string(bound);
    SolveReport rep = gamma_r_exact(g, opts);
    row.computed = std::to_string(rep.value);
    if (rep.value <= bound)
        row.status = Status::confirmed;
    else
        row.status = rep.optimal ? Status::violated : Status::infeasible;
}

std::string census_string(std::vector<std::string> descs) {
    auto canon = [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    std::sort(descs.begin(), descs.end(), canon);
    std::string out;
    std::size_t i = 0;
    while (i < descs.size()) {
        std::size_t j = i;
        while (j < descs.size() && descs[j] == descs[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i) + "x";
        out += descs[i];
        i = j;
    }
    return out.empty() ? "-" : out;
}

std::string census_of_components(const Graph& g) {
    std::vector<std::string> descs;
    for (const auto& comp : metrics(g).components) {
        Graph sub = induced_subgraph(g, comp);
        if (is_complete(sub)) {
            descs.push_back("K" + std::to_string(sub.vertex_count()));
        } else if (auto parts = complete_bipartite_parts(sub)) {
            descs.push_back("K" + std::to_string(parts->first) + "," +
                            std::to_string(parts->second));
        } else {
            descs.push_back("G(" + std::to_string(sub.vertex_count()) + "v," +
                            std::to_string(sub.edge_count()) + "e)");
        }
    }
    return census_string(std::move(descs));
}

// ---- instance generators ---------------------------------------------------

std::vector<std::string> gen_named_range(const SweepSpec& spec, const char* prefix, u64 lo) {
    std::vector<std::string> out;
    for (u64 n = lo; n <= spec.max_n; ++n) out.push_back(prefix + std::to_string(n));
    return out;
}

std::vector<std::string> gen_zn(const SweepSpec& spec, const std::function<bool(u64)>& keep) {
    std::vector<std::string> out;
    for (u64 n = 4; n <= spec.max_n; ++n) {
        if (is_prime(n)) continue;
        if (spec.prime_powers_only && !is_prime_power(n)) continue;
        if (keep(n)) out.push_back("Z" + std::to_string(n));
    }
    return out;
}

std::vector<std::string> gen_prime_power_rings(const SweepSpec& spec) {
    std::vector<std::string> out;
    u64 hi = std::min<u64>(max_order_of(spec), max_graph_vertices());
    for (u64 q : prime_powers_up_to(hi)) out.push_back("Z" + std::to_string(q));
    return out;
}

std::vector<std::string> gen_pp_pairs(const SweepSpec& spec,
                                      const std::function<bool(int, int)>& keep) {
    std::vector<std::string> out;
    const u64 cap = max_order_of(spec);
    auto pps = prime_powers_up_to(cap / 2);
    std::vector<int> diams(pps.size());
    for (std::size_t i = 0; i < pps.size(); ++i) diams[i] = zd_diameter(pps[i]);
    for (std::size_t i = 0; i < pps.size(); ++i)
        for (std::size_t j = i; j < pps.size(); ++j) {
            if (pps[i] * pps[j] > cap) break;
            int lo = std::min(diams[i], diams[j]), hi = std::max(diams[i], diams[j]);
            if (keep(lo, hi)) out.push_back(ring_literal({pps[i], pps[j]}));
        }
    return out;
}

void extend_multisets(const std::vector<u64>& base, u64 cap, std::vector<u64>& cur, u64 product,
                      std::vector<std::vector<u64>>& out) {
    if (cur.size() >= 3) out.push_back(cur);
    for (u64 m : base) {
        if (!cur.empty() && m < cur.back()) continue;
        if (product > cap / m) continue;
        cur.push_back(m);
        extend_multisets(base, cap, cur, product * m, out);
        cur.pop_back();
    }
}

std::vector<std::string> gen_factor_multisets(const SweepSpec& spec, bool primes_only) {
    const u64 cap = max_order_of(spec);
    std::vector<u64> base = primes_only ? primes_up_to(cap / 4) : prime_powers_up_to(cap / 4);
    std::vector<std::vector<u64>> sets;
    std::vector<u64> cur;
    extend_multisets(base, cap, cur, 1, sets);
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        u64 pa = 1, pb = 1;
        for (u64 x : a) pa *= x;
        for (u64 x : b) pb *= x;
        if (pa != pb) return pa < pb;
        return a < b;
    });
    std::vector<std::string> out;
    out.reserve(sets.size());
    for (const auto& s : sets) out.push_back(ring_literal(s));
    return out;
}

std::vector<std::string> gen_graph_pairs(const SweepSpec& spec, bool first_is_z4) {
    std::vector<std::string> out;
    std::vector<u64> mods;
    std::vector<u64> sizes;
    for (u64 n = 4; n <= spec.max_n; ++n) {
        if (is_prime(n)) continue;
        if (spec.prime_powers_only && !is_prime_power(n)) continue;
        mods.push_back(n);
        sizes.push_back(RingSpec::from_modulus(n).beta() - 1);
    }
    for (std::size_t i = 0; i < mods.size(); ++i) {
        if (first_is_z4 && mods[i] != 4) continue;
        for (std::size_t j = first_is_z4 ? 0 : i; j < mods.size(); ++j) {
            if (sizes[i] == 0 || sizes[j] == 0) continue;
            if (sizes[i] * sizes[j] > spec.max_product_vertices) continue;
            out.push_back("Z" + std::to_string(mods[i]) + "|Z" + std::to_string(mods[j]));
        }
    }
    return out;
}

// ---- claim runners ---------------------------------------------------------

void run_pair_diameter_claim(TheoremCheck& row, const std::string& instance,
                             const SolveOptions& opts,
                             const std::function<bool(int, int)>& profile, bool size_at_least_5,
                             bool compute_when_subthreshold) {
    auto parts = part_moduli(instance);
    bool two_local = parts.size() == 2 && is_prime_power(parts[0]) && is_prime_power(parts[1]);
    if (!two_local) {
        row.hypotheses_met = false;
        row.status = Status::skipped;
        return;
    }
    int da = zd_diameter(parts[0]), db = zd_diameter(parts[1]);
    bool profile_ok = profile(std::min(da, db), std::max(da, db));
    bool sizes_ok = !size_at_least_5 || (parts[0] >= 5 && parts[1] >= 5);
    row.hypotheses_met = profile_ok && sizes_ok;
    if (!row.hypotheses_met) {
        row.status = Status::skipped;
        if (profile_ok && compute_when_subthreshold) {
            SolveReport rep = gamma_r_exact(zero_divisor_graph(parse_ring(instance)), opts);
            if (rep.optimal) row.computed = std::to_string(rep.value);
        }
        return;
    }
    finish_equality(row, zero_divisor_graph(parse_ring(instance)), 4, opts);
}

void run_product_factor_claim(TheoremCheck& row, const std::string& instance,
                              const SolveOptions& opts, bool primes_only) {
    auto parts = part_moduli(instance);
    bool ok = parts.size() >= 3;
    for (u64 m : parts) ok = ok && (primes_only ? is_prime(m) : is_prime_power(m));
    row.hypotheses_met = ok;
    if (!ok) {
        row.status = Status::skipped;
        return;
    }
    finish_equality(row, zero_divisor_graph(parse_ring(instance)),
                    2 * static_cast<long long>(parts.size()), opts);
}

struct ClaimDef {
    std::string id;
    std::string statement;
    std::function<std::vector<std::string>(const SweepSpec&)> generate;
    std::function<void(TheoremCheck&, const std::string&, const SolveOptions&)> run;
};

const std::vector<ClaimDef>& claims() {
    static const std::vector<ClaimDef> defs = [] {
        std::vector<ClaimDef> c;

        c.push_back(
            {"E2.1", "Gamma(Z25) is K4 with gamma_R = 2",
             [](const SweepSpec& spec) {
                 return spec.max_n >= 25 ? std::vector<std::string>{"Z25"}
                                         : std::vector<std::string>{};
             },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 row.hypotheses_met = inst == "Z25";
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 Graph g = zero_divisor_graph(parse_ring(inst));
                 SolveReport rep = gamma_r_exact(g, opts);
                 row.predicted = "K4,gamma_R=2";
                 std::string shape =
                     is_complete(g) ? "K" + std::to_string(g.vertex_count())
                                    : "graph(" + std::to_string(g.vertex_count()) + "v," +
                                          std::to_string(g.edge_count()) + "e)";
                 row.computed = shape + ",gamma_R=" + std::to_string(rep.value);
                 if (!rep.optimal) {
                     row.status = Status::infeasible;
                     return;
                 }
                 row.status = (is_complete(g) && g.vertex_count() == 4 && rep.value == 2)
                                  ? Status::confirmed
                                  : Status::violated;
             }});

        c.push_back({"P2.1-path", "gamma_R(P_n) = ceil(2n/3)",
                     [](const SweepSpec& spec) { return gen_named_range(spec, "path:", 1); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         long long n = parse_single_param(inst, "path:");
                         row.hypotheses_met = n >= 1;
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, path_graph(static_cast<int>(n)),
                                         ceil_two_thirds(n), opts);
                     }});

        c.push_back({"P2.1-cycle", "gamma_R(C_n) = ceil(2n/3)",
                     [](const SweepSpec& spec) { return gen_named_range(spec, "cycle:", 3); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         long long n = parse_single_param(inst, "cycle:");
                         row.hypotheses_met = n >= 3;
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, cycle_graph(static_cast<int>(n)),
                                         ceil_two_thirds(n), opts);
                     }});

        c.push_back({"P2.2-sandwich", "gamma <= gamma_R <= 2*gamma on Gamma(Z_n)",
                     [](const SweepSpec& spec) {
                         return gen_zn(spec, [](u64) { return true; });
                     },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         row.hypotheses_met = true;
                         Graph g = zero_divisor_graph(parse_ring(inst));
                         SolveReport dom = gamma_exact(g, opts);
                         SolveReport rdf = gamma_r_exact(g, opts);
                         if (!dom.optimal || !rdf.optimal) {
                             row.status = Status::infeasible;
                             return;
                         }
                         row.predicted = "[" + std::to_string(dom.value) + "," +
                                         std::to_string(2 * dom.value) + "]";
                         row.computed = std::to_string(rdf.value);
                         row.status = (dom.value <= rdf.value && rdf.value <= 2 * dom.value)
                                          ? Status::confirmed
                                          : Status::violated;
                     }});

        c.push_back({"P2.3-equality", "gamma = gamma_R exactly when Gamma(Z_n) has no edges",
                     [](const SweepSpec& spec) {
                         return gen_zn(spec, [](u64) { return true; });
                     },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         row.hypotheses_met = true;
                         Graph g = zero_divisor_graph(parse_ring(inst));
                         SolveReport dom = gamma_exact(g, opts);
                         SolveReport rdf = gamma_r_exact(g, opts);
                         if (!dom.optimal || !rdf.optimal) {
                             row.status = Status::infeasible;
                             return;
                         }
                         row.predicted = "gamma=gamma_R iff edgeless";
                         row.computed = "gamma=" + std::to_string(dom.value) +
                                        ",gamma_R=" + std::to_string(rdf.value) +
                                        ",edges=" + std::to_string(g.edge_count());
                         row.status = ((dom.value == rdf.value) == (g.edge_count() == 0))
                                          ? Status::confirmed
                                          : Status::violated;
                     }});

        c.push_back({"S2-complete", "gamma_R(K_n) = 2 for n >= 2",
                     [](const SweepSpec& spec) { return gen_named_range(spec, "complete:", 2); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         long long n = parse_single_param(inst, "complete:");
                         row.hypotheses_met = n >= 2;
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, complete_graph(static_cast<int>(n)), 2, opts);
                     }});

        c.push_back(
            {"S2-multi",
             "complete multipartite: min part 1 -> 2, min part 2 -> 3, all parts >= 3 -> 4",
             [](const SweepSpec& spec) {
                 std::vector<std::string> out;
                 std::vector<std::vector<int>> stack{{}};
                 for (int parts = 2; parts <= 4; ++parts) {
                     std::vector<int> sizes(parts, 1);
                     while (true) {
                         long long total = 0;
                         bool nondecreasing = true;
                         for (int i = 0; i < parts; ++i) {
                             total += sizes[i];
                             if (i && sizes[i] < sizes[i - 1]) nondecreasing = false;
                         }
                         if (nondecreasing && total <= static_cast<long long>(spec.max_n)) {
                             std::string desc = "multi:";
                             for (int i = 0; i < parts; ++i) {
                                 if (i) desc += ",";
                                 desc += std::to_string(sizes[i]);
                             }
                             out.push_back(desc);
                         }
                         int i = parts - 1;
                         while (i >= 0 && sizes[i] == 5) {
                             sizes[i] = 1;
                             --i;
                         }
                         if (i < 0) break;
                         sizes[i] += 1;
                     }
                 }
                 std::sort(out.begin(), out.end());
                 return out;
             },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 auto sizes = parse_part_sizes(inst);
                 row.hypotheses_met = sizes.size() >= 2;
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 int min_part = *std::min_element(sizes.begin(), sizes.end());
                 long long predicted = min_part == 1 ? 2 : (min_part == 2 ? 3 : 4);
                 finish_equality(row, complete_multipartite(sizes), predicted, opts);
             }});

        c.push_back({"T3.1",
                     "finite principal ideal local ring with zero-divisors: gamma_R(Gamma(S)) = 2",
                     [](const SweepSpec& spec) { return gen_prime_power_rings(spec); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         RingSpec ring = parse_ring(inst);
                         row.hypotheses_met = ring.local() && ring.beta() >= 2;
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, zero_divisor_graph(ring), 2, opts);
                     }});

        auto diam_profile_claim = [](const char* id, const char* statement,
                                     std::function<bool(int, int)> profile, bool needs_size5,
                                     bool compute_subthreshold) {
            auto gen_profile = profile;
            auto run_profile = std::move(profile);
            return ClaimDef{
                id, statement,
                [gen_profile](const SweepSpec& spec) { return gen_pp_pairs(spec, gen_profile); },
                [run_profile, needs_size5, compute_subthreshold](
                    TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                    run_pair_diameter_claim(row, inst, opts, run_profile, needs_size5,
                                            compute_subthreshold);
                }};
        };

        c.push_back(diam_profile_claim(
            "T3.2", "R1 x R2 local with diam(Gamma(R_i)) = 0 and |R_i| >= 5: gamma_R = 4",
            [](int lo, int hi) { return lo == 0 && hi == 0; }, true, true));
        c.push_back(diam_profile_claim(
            "T3.3", "R1 x R2 local with diameters {0,1}: gamma_R = 4",
            [](int lo, int hi) { return lo == 0 && hi == 1; }, false, false));
        c.push_back(diam_profile_claim(
            "T3.4", "R1 x R2 local with diameters {1,1}: gamma_R = 4",
            [](int lo, int hi) { return lo == 1 && hi == 1; }, false, false));
        c.push_back(diam_profile_claim(
            "T3.5", "R1 x R2 local with diameters {0,2}: gamma_R = 4",
            [](int lo, int hi) { return lo == 0 && hi == 2; }, false, false));
        c.push_back(diam_profile_claim(
            "T3.6", "R1 x R2 local with diameters {1 or 2, 2}: gamma_R = 4",
            [](int lo, int hi) { return lo >= 1 && hi == 2; }, false, false));
        c.push_back(diam_profile_claim(
            "R3.7", "product of two local rings with diameters <= 2: gamma_R = 4",
            [](int lo, int hi) { return lo >= 0 && hi <= 2; }, false, false));

        c.push_back(
            {"P3.8", "gamma_R(Gamma(R1) box Gamma(R2)) <= mn - r1 - r2 + 1",
             [](const SweepSpec& spec) { return gen_graph_pairs(spec, false); },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 auto [lit_a, lit_b] = split_pair(inst);
                 Graph a = zero_divisor_graph(parse_ring(lit_a));
                 Graph b = zero_divisor_graph(parse_ring(lit_b));
                 row.hypotheses_met = a.vertex_count() > 0 && b.vertex_count() > 0;
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 long long m = a.vertex_count(), n = b.vertex_count();
                 long long r1 = metrics(a).max_degree, r2 = metrics(b).max_degree;
                 SolveOptions capped = opts;
                 capped.node_budget = std::min(capped.node_budget, kBoundClaimNodeBudget);
                 finish_upper_bound(row, cartesian_product(a, b), m * n - r1 - r2 + 1, capped);
             }});

        c.push_back(
            {"C3.9", "|Z(R1)*| = 1: Gamma(R1) box Gamma(R2) is Gamma(R2), same gamma_R",
             [](const SweepSpec& spec) { return gen_graph_pairs(spec, true); },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 auto [lit_a, lit_b] = split_pair(inst);
                 RingSpec ra = parse_ring(lit_a), rb = parse_ring(lit_b);
                 row.hypotheses_met = ra.beta() == 2 && rb.beta() >= 2;
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 Graph a = zero_divisor_graph(ra);
                 Graph b = zero_divisor_graph(rb);
                 Graph prod = cartesian_product(a, b);
                 bool iso = prod.vertex_count() == b.vertex_count();
                 for (int i = 0; iso && i < prod.vertex_count(); ++i)
                     for (int j = i + 1; iso && j < prod.vertex_count(); ++j)
                         iso = prod.adjacent(i, j) == b.adjacent(i, j);
                 SolveReport rp = gamma_r_exact(prod, opts);
                 SolveReport rb_rep = gamma_r_exact(b, opts);
                 if (!rp.optimal || !rb_rep.optimal) {
                     row.status = Status::infeasible;
                     return;
                 }
                 row.predicted = "iso,gamma_R equal";
                 row.computed = std::string(iso ? "iso" : "not-iso") + ",gamma_R=" +
                                std::to_string(rp.value) + "/" + std::to_string(rb_rep.value);
                 row.status =
                     (iso && rp.value == rb_rep.value) ? Status::confirmed : Status::violated;
             }});

        c.push_back({"T3.10", "product of n >= 3 finite fields: gamma_R(Gamma(R)) = 2n",
                     [](const SweepSpec& spec) { return gen_factor_multisets(spec, true); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         run_product_factor_claim(row, inst, opts, true);
                     }});

        c.push_back({"T3.11", "product of n >= 3 local rings: gamma_R(Gamma(R)) = 2n",
                     [](const SweepSpec& spec) { return gen_factor_multisets(spec, false); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         run_product_factor_claim(row, inst, opts, false);
                     }});

        c.push_back({"T3.12a", "n with k >= 3 distinct primes: gamma_R(Gamma(Z_n)) = 2k",
                     [](const SweepSpec& spec) {
                         return gen_zn(spec,
                                       [](u64 n) { return distinct_prime_count(n) >= 3; });
                     },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         u64 n = part_moduli(inst).at(0);
                         int k = distinct_prime_count(n);
                         row.hypotheses_met = k >= 3;
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, zero_divisor_graph(parse_ring(inst)), 2 * k, opts);
                     }});

        auto t312b_hypothesis = [](u64 n) {
            auto factors = RingSpec::from_modulus(n).factors();
            if (factors.size() != 2) return false;
            int m1 = factors[0].k, m2 = factors[1].k;
            u64 p1 = factors[0].p, p2 = factors[1].p;
            return m1 >= 2 || m2 >= 2 || (p1 >= 3 && p2 >= 3);
        };
        c.push_back({"T3.12b", "n = p^a q^b with a >= 2 or b >= 2 or p,q >= 3: gamma_R = 4",
                     [t312b_hypothesis](const SweepSpec& spec) {
                         return gen_zn(spec, t312b_hypothesis);
                     },
                     [t312b_hypothesis](TheoremCheck& row, const std::string& inst,
                                        const SolveOptions& opts) {
                         u64 n = part_moduli(inst).at(0);
                         row.hypotheses_met = t312b_hypothesis(n);
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, zero_divisor_graph(parse_ring(inst)), 4, opts);
                     }});

        auto t312c_hypothesis = [](u64 n) {
            auto factors = RingSpec::from_modulus(n).factors();
            if (factors.size() == 1) return factors[0].k >= 2;
            if (factors.size() == 2)
                return factors[0].k == 1 && factors[1].k == 1 &&
                       (factors[0].p == 2 || factors[1].p == 2);
            return false;
        };
        c.push_back({"T3.12c", "n = p^m (m >= 2) or n = 2q: gamma_R(Gamma(Z_n)) = 2",
                     [t312c_hypothesis](const SweepSpec& spec) {
                         return gen_zn(spec, t312c_hypothesis);
                     },
                     [t312c_hypothesis](TheoremCheck& row, const std::string& inst,
                                        const SolveOptions& opts) {
                         u64 n = part_moduli(inst).at(0);
                         row.hypotheses_met = t312c_hypothesis(n);
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         finish_equality(row, zero_divisor_graph(parse_ring(inst)), 2, opts);
                     }});

        c.push_back(
            {"T3.13", "gamma_R(Gamma(R)) <= 2(|P| - 1) for the smallest prime ideal P",
             [](const SweepSpec& spec) {
                 return gen_zn(spec, [](u64) { return true; });
             },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 RingSpec ring = parse_ring(inst);
                 row.hypotheses_met = ring.beta() >= 2; // nonempty graph
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 u64 min_size = ring.order();
                 for (const auto& ideal : ring.prime_ideals())
                     min_size = std::min(min_size, ideal.size);
                 finish_upper_bound(row, zero_divisor_graph(ring),
                                    2 * (static_cast<long long>(min_size) - 1), opts);
             }});

        c.push_back(
            {"CZp2-complete", "n = p^2 with p > 3 prime: Gamma(Z_n) is K_{p-1}, gamma_R = 2",
             [](const SweepSpec& spec) {
                 std::vector<std::string> out;
                 for (u64 p = 5; p * p <= spec.max_n; ++p)
                     if (is_prime(p)) out.push_back("Z" + std::to_string(p * p));
                 return out;
             },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                 u64 n = part_moduli(inst).at(0);
                 u64 p = 0;
                 int k = 0;
                 row.hypotheses_met = is_prime_power(n, &p, &k) && k == 2 && p > 3;
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 Graph g = zero_divisor_graph(parse_ring(inst));
                 SolveReport rep = gamma_r_exact(g, opts);
                 row.predicted = "K" + std::to_string(p - 1) + ",gamma_R=2";
                 std::string shape =
                     is_complete(g) ? "K" + std::to_string(g.vertex_count())
                                    : "graph(" + std::to_string(g.vertex_count()) + "v," +
                                          std::to_string(g.edge_count()) + "e)";
                 row.computed = shape + ",gamma_R=" + std::to_string(rep.value);
                 if (!rep.optimal) {
                     row.status = Status::infeasible;
                     return;
                 }
                 row.status = (is_complete(g) &&
                               g.vertex_count() == static_cast<int>(p) - 1 && rep.value == 2)
                                  ? Status::confirmed
                                  : Status::violated;
             }});

        c.push_back(
            {"L4.1",
             "Z(R) an ideal: Z(R) induces a clique in T(Gamma(R)) disjoint from regular vertices",
             [](const SweepSpec& spec) { return gen_prime_power_rings(spec); },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions&) {
                 RingSpec ring = parse_ring(inst);
                 row.hypotheses_met = ring.zero_divisors_form_ideal();
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 Graph t = total_graph(ring);
                 std::vector<int> zd;
                 for (int i = 0; i < t.vertex_count(); ++i)
                     if (ring.is_zero_divisor(ring.element_at(i))) zd.push_back(i);
                 bool clique = true;
                 for (std::size_t i = 0; i < zd.size() && clique; ++i)
                     for (std::size_t j = i + 1; j < zd.size() && clique; ++j)
                         clique = t.adjacent(zd[i], zd[j]);
                 long long cross = 0;
                 std::vector<char> is_zd(t.vertex_count(), 0);
                 for (int v : zd) is_zd[v] = 1;
                 for (auto [a, b] : t.edges())
                     if (is_zd[a] != is_zd[b]) ++cross;
                 row.predicted = "clique,cross_edges=0";
                 row.computed = std::string(clique ? "clique" : "not-clique") +
                                ",cross_edges=" + std::to_string(cross);
                 row.status = (clique && cross == 0) ? Status::confirmed : Status::violated;
             }});

        c.push_back({"T4.2-bounds", "Z(R) an ideal: 3 <= gamma_R(T(Gamma(R))) <= 2*alpha",
                     [](const SweepSpec& spec) { return gen_prime_power_rings(spec); },
                     [](TheoremCheck& row, const std::string& inst, const SolveOptions& opts) {
                         RingSpec ring = parse_ring(inst);
                         row.hypotheses_met = ring.zero_divisors_form_ideal();
                         if (!row.hypotheses_met) {
                             row.status = Status::skipped;
                             return;
                         }
                         long long alpha = static_cast<long long>(ring.alpha());
                         finish_interval(row, total_graph(ring), 3, 2 * alpha, opts);
                     }});

        c.push_back(
            {"T4.2-structure",
             "T(Gamma(R)) is alpha copies of K_beta, or K_beta plus (alpha-1)/2 copies of "
             "K_{beta,beta}",
             [](const SweepSpec& spec) { return gen_prime_power_rings(spec); },
             [](TheoremCheck& row, const std::string& inst, const SolveOptions&) {
                 RingSpec ring = parse_ring(inst);
                 row.hypotheses_met = ring.zero_divisors_form_ideal();
                 if (!row.hypotheses_met) {
                     row.status = Status::skipped;
                     return;
                 }
                 u64 beta = ring.beta();
                 u64 alpha = ring.alpha();
                 bool two_in_z = ring.is_zero_divisor(ring.add(ring.one(), ring.one()));
                 std::vector<std::string> predicted_descs;
                 if (two_in_z) {
                     for (u64 i = 0; i < alpha; ++i)
                         predicted_descs.push_back("K" + std::to_string(beta));
                 } else {
                     predicted_descs.push_back("K" + std::to_string(beta));
                     std::string bip = beta == 1 ? "K2"
                                                 : "K" + std::to_string(beta) + "," +
                                                       std::to_string(beta);
                     for (u64 i = 0; i < (alpha - 1) / 2; ++i) predicted_descs.push_back(bip);
                 }
                 row.predicted = census_string(std::move(predicted_descs));
                 row.computed = census_of_components(total_graph(ring));
                 row.status =
                     row.predicted == row.computed ? Status::confirmed : Status::violated;
             }});

        return c;
    }();
    return defs;
}

const ClaimDef& claim_by_id(const std::string& id) {
    for (const ClaimDef& def : claims())
        if (def.id == id) return def;
    throw Error(ErrorKind::invalid_argument, "unknown claim id '" + id + "'");
}

TheoremCheck run_one(const ClaimDef& def, const std::string& instance,
                     const SolveOptions& budget) {
    TheoremCheck row;
    row.claim = def.id;
    row.instance = instance;
    auto start = std::chrono::steady_clock::now();
    try {
        def.run(row, instance, budget);
    } catch (const std::exception& e) {
        row.status = Status::infeasible;
        row.hypotheses_met = true;
        row.computed = std::string("error: ") + e.what();
    }
    row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return row;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += "\"";
    return out;
}

} // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::confirmed: return "CONFIRMED";
    case CheckStatus::violated: return "VIOLATED";
    case CheckStatus::skipped: return "SKIPPED";
    case CheckStatus::infeasible: return "INFEASIBLE";
    }
    return "?";
}

std::optional<CheckStatus> status_from_string(const std::string& s) {
    if (s == "CONFIRMED") return CheckStatus::confirmed;
    if (s == "VIOLATED") return CheckStatus::violated;
    if (s == "SKIPPED") return CheckStatus::skipped;
    if (s == "INFEASIBLE") return CheckStatus::infeasible;
    return std::nullopt;
}

const std::vector<ClaimInfo>& claim_catalog() {
    static const std::vector<ClaimInfo> catalog = [] {
        std::vector<ClaimInfo> out;
        for (const ClaimDef& def : claims()) out.push_back({def.id, def.statement});
        return out;
    }();
    return catalog;
}

std::vector<std::string> resolve_claims(const std::vector<std::string>& selectors) {
    if (selectors.empty()) {
        std::vector<std::string> all;
        for (const ClaimDef& def : claims()) all.push_back(def.id);
        return all;
    }
    std::vector<std::string> out;
    for (const std::string& sel : selectors) {
        bool exact = false;
        for (const ClaimDef& def : claims())
            if (def.id == sel) {
                exact = true;
                break;
            }
        std::size_t before = out.size();
        for (const ClaimDef& def : claims()) {
            if (exact ? def.id == sel : def.id.rfind(sel, 0) == 0) {
                if (std::find(out.begin(), out.end(), def.id) == out.end())
                    out.push_back(def.id);
            }
        }
        if (out.size() == before)
            throw Error(ErrorKind::invalid_argument, "unknown claim id '" + sel + "'");
    }
    // report order follows the catalog
    std::vector<std::string> ordered;
    for (const ClaimDef& def : claims())
        if (std::find(out.begin(), out.end(), def.id) != out.end()) ordered.push_back(def.id);
    return ordered;
}

RingFacts classify_instance(const RingSpec& ring) {
    RingFacts f;
    f.factor_count = static_cast<int>(ring.factors().size());
    f.order = ring.order();
    f.beta = ring.beta();
    f.local = ring.local();
    f.zr_ideal = ring.zero_divisors_form_ideal();
    for (const Factor& fac : ring.factors()) {
        f.factor_orders.push_back(fac.modulus);
        f.factor_diameters.push_back(zd_diameter(fac.modulus));
    }
    return f;
}

std::optional<std::string> predict(const std::string& claim_id, const std::string& instance) {
    TheoremCheck row = run_one(claim_by_id(claim_id), instance, SolveOptions{});
    if (!row.hypotheses_met) return std::nullopt;
    return row.predicted;
}

TheoremCheck check(const std::string& claim_id, const std::string& instance,
                   const SolveOptions& budget) {
    return run_one(claim_by_id(claim_id), instance, budget);
}

SweepReport run_suite(const SweepSpec& spec) {
    std::vector<std::string> ids = resolve_claims(spec.claims);
    std::vector<std::pair<const ClaimDef*, std::string>> work;
    for (const std::string& id : ids) {
        const ClaimDef& def = claim_by_id(id);
        for (std::string& inst : def.generate(spec)) work.emplace_back(&def, std::move(inst));
    }

    SweepReport report;
    report.rows.resize(work.size());
    const std::int64_t count = static_cast<std::int64_t>(work.size());
#ifdef _OPENMP
    int threads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < count; ++i)
        report.rows[i] = run_one(*work[i].first, work[i].second, spec.budget);

    for (const TheoremCheck& row : report.rows) {
        switch (row.status) {
        case CheckStatus::confirmed: ++report.confirmed; break;
        case CheckStatus::violated: ++report.violated; break;
        case CheckStatus::skipped: ++report.skipped; break;
        case CheckStatus::infeasible: ++report.infeasible; break;
        }
    }
    return report;
}

std::string report_csv(const SweepReport& report, bool include_elapsed) {
    std::string out = "claim,instance,hypotheses_met,predicted,computed,status,elapsed_ms\n";
    for (const TheoremCheck& row : report.rows) {
        out += csv_escape(row.claim) + "," + csv_escape(row.instance) + ",";
        out += row.hypotheses_met ? "true," : "false,";
        out += csv_escape(row.predicted) + "," + csv_escape(row.computed) + ",";
        out += to_string(row.status) + ",";
        out += std::to_string(include_elapsed ? row.elapsed_ms : 0) + "\n";
    }
    return out;
}

std::string report_json(const SweepReport& report, bool include_elapsed) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TheoremCheck& row : report.rows) {
        nlohmann::ordered_json j;
        j["claim"] = row.claim;
        j["instance"] = row.instance;
        j["hypotheses_met"] = row.hypotheses_met;
        j["predicted"] = row.predicted;
        j["computed"] = row.computed;
        j["status"] = to_string(row.status);
        j["elapsed_ms"] = include_elapsed ? row.elapsed_ms : 0;
        rows.push_back(std::move(j));
    }
    return rows.dump();
}

std::string report_markdown(const SweepReport& report, bool include_elapsed) {
    std::string out =
        "| claim | instance | hypotheses_met | predicted | computed | status | elapsed_ms |\n"
        "|---|---|---|---|---|---|---|\n";
    for (const TheoremCheck& row : report.rows) {
        out += "| " + row.claim + " | " + row.instance + " | " +
               (row.hypotheses_met ? "true" : "false") + " | " + row.predicted + " | " +
               row.computed + " | " + to_string(row.status) + " | " +
               std::to_string(include_elapsed ? row.elapsed_ms : 0) + " |\n";
    }
    return out;
}

std::string report_text(const SweepReport& report, bool include_elapsed) {
    (void)include_elapsed;
    std::string out;
    out += "rows " + std::to_string(report.rows.size()) + "\n";
    out += "CONFIRMED " + std::to_string(report.confirmed) + "\n";
    out += "VIOLATED " + std::to_string(report.violated) + "\n";
    out += "SKIPPED " + std::to_string(report.skipped) + "\n";
    out += "INFEASIBLE " + std::to_string(report.infeasible) + "\n";
    if (report.violated > 0) {
        out += "violated rows:\n";
        for (const TheoremCheck& row : report.rows)
            if (row.status == CheckStatus::violated)
                out += "  " + row.claim + " " + row.instance + " predicted=" + row.predicted +
                       " computed=" + row.computed + "\n";
    }
    if (report.infeasible > 0) {
        out += "infeasible rows:\n";
        for (const TheoremCheck& row : report.rows)
            if (row.status == CheckStatus::infeasible)
                out += "  " + row.claim + " " + row.instance + "\n";
    }
    return out;
}

SweepReport report_from_json(const std::string& text) {
    SweepReport report;
    nlohmann::json rows = nlohmann::json::parse(text);
    if (!rows.is_array())
        throw Error(ErrorKind::invalid_argument, "report JSON must be an array");
    for (const auto& j : rows) {
        TheoremCheck row;
        row.claim = j.at("claim").get<std::string>();
        row.instance = j.at("instance").get<std::string>();
        row.hypotheses_met = j.at("hypotheses_met").get<bool>();
        row.predicted = j.at("predicted").get<std::string>();
        row.computed = j.at("computed").get<std::string>();
        auto status = status_from_string(j.at("status").get<std::string>());
        if (!status)
            throw Error(ErrorKind::invalid_argument, "bad status in report JSON");
        row.status = *status;
        row.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
        report.rows.push_back(std::move(row));
    }
    for (const TheoremCheck& row : report.rows) {
        switch (row.status) {
        case CheckStatus::confirmed: ++report.confirmed; break;
        case CheckStatus::violated: ++report.violated; break;
        case CheckStatus::skipped: ++report.skipped; break;
        case CheckStatus::infeasible: ++report.infeasible; break;
        }
    }
    return report;
}

std::map<std::string, std::string> pinned_from_report(const SweepReport& report) {
    std::map<std::string, std::string> pinned;
    for (const TheoremCheck& row : report.rows)
        if (row.status == CheckStatus::violated)
            pinned[row.claim + ":" + row.instance] = to_string(row.status);
    return pinned;
}

std::string pinned_to_json(const std::map<std::string, std::string>& pinned) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : pinned) j[key] = value;
    return j.dump(2) + "\n";
}

std::map<std::string, std::string> pinned_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object())
        throw Error(ErrorKind::invalid_argument, "pinned expectations must be a JSON object");
    std::map<std::string, std::string> pinned;
    for (auto it = j.begin(); it != j.end(); ++it)
        pinned[it.key()] = it.value().get<std::string>();
    return pinned;
}

PinnedDiff compare_pinned(const SweepReport& report,
                          const std::map<std::string, std::string>& pinned) {
    PinnedDiff diff;
    std::map<std::string, std::string> actual = pinned_from_report(report);
    for (const auto& [key, value] : actual)
        if (auto it = pinned.find(key); it == pinned.end() || it->second != value)
            diff.unexpected.push_back(key);
    // pinned entries only count as missing when their claim was swept
    std::set<std::string> swept;
    for (const TheoremCheck& row : report.rows) swept.insert(row.claim);
    for (const auto& [key, value] : pinned) {
        std::string claim = key.substr(0, key.find(':'));
        if (value == "VIOLATED" && swept.count(claim) && !actual.count(key))
            diff.missing.push_back(key);
    }
    return diff;
}

} // namespace rzdg
