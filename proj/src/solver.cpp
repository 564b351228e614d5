#include "rzdg/solver.hpp"

#include <algorithm>
#include <bit>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rzdg {

namespace {

using Clock = std::chrono::steady_clock;

struct Bits {
    static int words(int n) { return n == 0 ? 0 : (n + 63) / 64; }
    static bool test(const std::uint64_t* a, int i) { return (a[i >> 6] >> (i & 63)) & 1; }
    static void set(std::uint64_t* a, int i) { a[i >> 6] |= 1ull << (i & 63); }
    static int count(const std::uint64_t* a, int W) {
        int c = 0;
        for (int w = 0; w < W; ++w) c += std::popcount(a[w]);
        return c;
    }
    static int count_and(const std::uint64_t* a, const std::uint64_t* b, int W) {
        int c = 0;
        for (int w = 0; w < W; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }
    static bool subset_within(const std::uint64_t* a, const std::uint64_t* b,
                              const std::uint64_t* mask, int W) {
        for (int w = 0; w < W; ++w)
            if ((a[w] & mask[w]) & ~b[w]) return false;
        return true;
    }
};

// closed neighborhoods as one flat bit matrix
std::vector<std::uint64_t> closed_rows(const Graph& g) {
    const int n = g.vertex_count(), W = Bits::words(n);
    std::vector<std::uint64_t> closed(static_cast<std::size_t>(n) * W, 0);
    for (int v = 0; v < n; ++v) {
        auto r = g.row(v);
        std::uint64_t* row = closed.data() + static_cast<std::size_t>(v) * W;
        for (int w = 0; w < W; ++w) row[w] = r[w];
        Bits::set(row, v);
    }
    return closed;
}

struct Budget {
    std::uint64_t node_budget = 0;
    Clock::time_point deadline;
    std::uint64_t nodes = 0;
    bool hit = false;

    bool charge() {
        if (hit) return false;
        ++nodes;
        if (nodes > node_budget) {
            hit = true;
            return false;
        }
        if ((nodes & 2047) == 0 && Clock::now() >= deadline) {
            hit = true;
            return false;
        }
        return true;
    }
};

// Branch and bound over the 2-set: for a fixed V2 the cheapest completion
// assigns 1 to everything outside N[V2], so the search decides, per branch
// vertex, which closed neighbor joins V2 or whether the vertex takes a 1.
// "banned" tracks vertices that can no longer enter V2 on this path.
struct RdfSearch {
    const Graph& g;
    int n, W;
    std::vector<std::uint64_t> closed;
    Budget& budget;
    bool fail_first;

    int best;
    std::vector<std::uint8_t> best_values;
    std::vector<std::uint8_t> values;
    int two_count = 0;

    std::vector<std::uint64_t> full;
    std::vector<std::uint64_t> scratch; // per-depth satisfied/banned/undominated
    std::vector<int> gain;
    std::vector<int> bucket;

    RdfSearch(const Graph& graph, Budget& b, bool ff, int incumbent,
              std::vector<std::uint8_t> incumbent_values)
        : g(graph), n(graph.vertex_count()), W(Bits::words(n)), closed(closed_rows(graph)),
          budget(b), fail_first(ff), best(incumbent), best_values(std::move(incumbent_values)),
          values(n, 0), full(W, 0), gain(n, 0), bucket(n + 2, 0) {
        for (int v = 0; v < n; ++v) Bits::set(full.data(), v);
        scratch.assign(static_cast<std::size_t>(n + 2) * W * 3, 0);
    }

    std::uint64_t* slot(int depth, int which) {
        return scratch.data() + (static_cast<std::size_t>(depth) * 3 + which) * W;
    }

    const std::uint64_t* closed_row(int v) const {
        return closed.data() + static_cast<std::size_t>(v) * W;
    }

    int prefix_lower_bound(int undominated, int max_gain) {
        if (undominated == 0) return 0;
        int lb = undominated; // all ones
        int t = 0, cov = 0;
        for (int gval = max_gain; gval >= 3; --gval) {
            for (int c = bucket[gval]; c > 0; --c) {
                ++t;
                cov += gval;
                int rest = undominated - cov;
                lb = std::min(lb, 2 * t + (rest > 0 ? rest : 0));
                if (cov >= undominated) return lb;
            }
        }
        return lb;
    }

    void search(int depth, const std::uint64_t* satisfied, const std::uint64_t* banned,
                int cost) {
        if (!budget.charge()) return;
        std::uint64_t* undom = slot(depth, 2);
        int u = 0;
        for (int w = 0; w < W; ++w) {
            undom[w] = full[w] & ~satisfied[w];
            u += std::popcount(undom[w]);
        }
        if (u == 0) {
            if (cost < best) {
                best = cost;
                best_values = values;
            }
            return;
        }
        if (cost >= best) return;

        // coverage gains of every vertex still allowed into V2
        int max_gain = 0;
        for (int i = 0; i <= n + 1; ++i) bucket[i] = 0;
        for (int x = 0; x < n; ++x) {
            if (Bits::test(banned, x)) {
                gain[x] = 0;
                continue;
            }
            gain[x] = Bits::count_and(closed_row(x), undom, W);
            bucket[gain[x]] += 1;
            max_gain = std::max(max_gain, gain[x]);
        }
        if (cost + prefix_lower_bound(u, max_gain) >= best) return;

        // branch vertex
        int v = -1;
        if (fail_first) {
            int best_cands = n + 2, best_deg = -1;
            for (int w = 0; w < W; ++w) {
                std::uint64_t bits = undom[w];
                while (bits) {
                    int x = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    int cands = 0;
                    const std::uint64_t* row = closed_row(x);
                    for (int ww = 0; ww < W; ++ww)
                        cands += std::popcount(row[ww] & ~banned[ww]);
                    if (cands < best_cands ||
                        (cands == best_cands && g.degree(x) > best_deg)) {
                        best_cands = cands;
                        best_deg = g.degree(x);
                        v = x;
                    }
                }
            }
        } else {
            int best_deg = -1;
            for (int w = 0; w < W; ++w) {
                std::uint64_t bits = undom[w];
                while (bits) {
                    int x = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (g.degree(x) > best_deg) {
                        best_deg = g.degree(x);
                        v = x;
                    }
                }
            }
        }

        // candidate covers of v, most useful first; a cover that only helps v
        // is dominated by assigning v a 1
        std::vector<int> cands;
        const std::uint64_t* vrow = closed_row(v);
        for (int w = 0; w < W; ++w) {
            std::uint64_t bits = vrow[w] & ~banned[w];
            while (bits) {
                int c = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                if (gain[c] >= 2) cands.push_back(c);
            }
        }
        std::sort(cands.begin(), cands.end(), [&](int a, int b) {
            if (gain[a] != gain[b]) return gain[a] > gain[b];
            return a < b;
        });
        if (cands.size() <= 40) {
            // drop candidates whose remaining coverage another one subsumes
            std::vector<int> kept;
            for (int c : cands) {
                bool dominated = false;
                for (int k : kept) {
                    if (gain[k] >= gain[c] &&
                        Bits::subset_within(closed_row(c), closed_row(k), undom, W)) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) kept.push_back(c);
            }
            cands.swap(kept);
        }

        std::uint64_t* child_sat = slot(depth + 1, 0);
        std::uint64_t* child_ban = slot(depth + 1, 1);
        for (int w = 0; w < W; ++w) child_ban[w] = banned[w];
        for (int c : cands) {
            if (budget.hit) return;
            if (cost + 2 >= best) break;
            if (2 * (two_count + 1) > best) break; // |V2| <= incumbent / 2
            for (int w = 0; w < W; ++w) child_sat[w] = satisfied[w] | closed_row(c)[w];
            values[c] = 2;
            ++two_count;
            search(depth + 1, child_sat, child_ban, cost + 2);
            --two_count;
            values[c] = 0;
            Bits::set(child_ban, c);
        }
        if (budget.hit || cost + 1 >= best) return;
        // v takes a 1 and no later 2 may appear in N[v]
        for (int w = 0; w < W; ++w) {
            child_sat[w] = satisfied[w];
            child_ban[w] |= vrow[w];
        }
        Bits::set(child_sat, v);
        values[v] = 1;
        search(depth + 1, child_sat, child_ban, cost + 1);
        values[v] = 0;
    }

    void run() {
        std::uint64_t* sat = slot(0, 0);
        std::uint64_t* ban = slot(0, 1);
        std::fill(sat, sat + W, 0);
        std::fill(ban, ban + W, 0);
        search(0, sat, ban, 0);
    }
};

// Minimum dominating set analogue: every branch vertex must be covered by a
// closed neighbor in the set, so there is no "take a 1" child.
struct DomSearch {
    const Graph& g;
    int n, W;
    std::vector<std::uint64_t> closed;
    Budget& budget;
    bool fail_first;

    int best;
    std::vector<std::uint8_t> best_values; // 0/1 membership flags
    std::vector<std::uint8_t> values;

    std::vector<std::uint64_t> full;
    std::vector<std::uint64_t> scratch;
    std::vector<int> gain;
    std::vector<int> bucket;

    DomSearch(const Graph& graph, Budget& b, bool ff, int incumbent,
              std::vector<std::uint8_t> incumbent_set)
        : g(graph), n(graph.vertex_count()), W(Bits::words(n)), closed(closed_rows(graph)),
          budget(b), fail_first(ff), best(incumbent), best_values(std::move(incumbent_set)),
          values(n, 0), full(W, 0), gain(n, 0), bucket(n + 2, 0) {
        for (int v = 0; v < n; ++v) Bits::set(full.data(), v);
        scratch.assign(static_cast<std::size_t>(n + 2) * W * 3, 0);
    }

    std::uint64_t* slot(int depth, int which) {
        return scratch.data() + (static_cast<std::size_t>(depth) * 3 + which) * W;
    }
    const std::uint64_t* closed_row(int v) const {
        return closed.data() + static_cast<std::size_t>(v) * W;
    }

    int prefix_lower_bound(int undominated, int max_gain) {
        if (undominated == 0) return 0;
        int t = 0, cov = 0;
        for (int gval = max_gain; gval >= 1; --gval) {
            for (int c = bucket[gval]; c > 0; --c) {
                ++t;
                cov += gval;
                if (cov >= undominated) return t;
            }
        }
        return n + 1; // not coverable under current bans
    }

    void search(int depth, const std::uint64_t* satisfied, const std::uint64_t* banned,
                int cost) {
        if (!budget.charge()) return;
        std::uint64_t* undom = slot(depth, 2);
        int u = 0;
        for (int w = 0; w < W; ++w) {
            undom[w] = full[w] & ~satisfied[w];
            u += std::popcount(undom[w]);
        }
        if (u == 0) {
            if (cost < best) {
                best = cost;
                best_values = values;
            }
            return;
        }
        if (cost + 1 >= best) return;

        int max_gain = 0;
        for (int i = 0; i <= n + 1; ++i) bucket[i] = 0;
        for (int x = 0; x < n; ++x) {
            if (Bits::test(banned, x)) {
                gain[x] = 0;
                continue;
            }
            gain[x] = Bits::count_and(closed_row(x), undom, W);
            bucket[gain[x]] += 1;
            max_gain = std::max(max_gain, gain[x]);
        }
        if (cost + prefix_lower_bound(u, max_gain) >= best) return;

        int v = -1;
        if (fail_first) {
            int best_cands = n + 2, best_deg = -1;
            for (int w = 0; w < W; ++w) {
                std::uint64_t bits = undom[w];
                while (bits) {
                    int x = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    int cands = 0;
                    const std::uint64_t* row = closed_row(x);
                    for (int ww = 0; ww < W; ++ww)
                        cands += std::popcount(row[ww] & ~banned[ww]);
                    if (cands < best_cands ||
                        (cands == best_cands && g.degree(x) > best_deg)) {
                        best_cands = cands;
                        best_deg = g.degree(x);
                        v = x;
                    }
                }
            }
        } else {
            int best_deg = -1;
            for (int w = 0; w < W; ++w) {
                std::uint64_t bits = undom[w];
                while (bits) {
                    int x = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (g.degree(x) > best_deg) {
                        best_deg = g.degree(x);
                        v = x;
                    }
                }
            }
        }

        std::vector<int> cands;
        const std::uint64_t* vrow = closed_row(v);
        for (int w = 0; w < W; ++w) {
            std::uint64_t bits = vrow[w] & ~banned[w];
            while (bits) {
                int c = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                cands.push_back(c);
            }
        }
        if (cands.empty()) return; // v cannot be dominated on this path
        std::sort(cands.begin(), cands.end(), [&](int a, int b) {
            if (gain[a] != gain[b]) return gain[a] > gain[b];
            return a < b;
        });
        if (cands.size() <= 40) {
            std::vector<int> kept;
            for (int c : cands) {
                bool dominated = false;
                for (int k : kept) {
                    if (gain[k] >= gain[c] &&
                        Bits::subset_within(closed_row(c), closed_row(k), undom, W)) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) kept.push_back(c);
            }
            cands.swap(kept);
        }

        std::uint64_t* child_sat = slot(depth + 1, 0);
        std::uint64_t* child_ban = slot(depth + 1, 1);
        for (int w = 0; w < W; ++w) child_ban[w] = banned[w];
        for (int c : cands) {
            if (budget.hit) return;
            if (cost + 1 >= best) break;
            for (int w = 0; w < W; ++w) child_sat[w] = satisfied[w] | closed_row(c)[w];
            values[c] = 1;
            search(depth + 1, child_sat, child_ban, cost + 1);
            values[c] = 0;
            Bits::set(child_ban, c);
        }
    }

    void run() {
        std::uint64_t* sat = slot(0, 0);
        std::uint64_t* ban = slot(0, 1);
        std::fill(sat, sat + W, 0);
        std::fill(ban, ban + W, 0);
        search(0, sat, ban, 0);
    }
};

std::vector<std::uint8_t> greedy_rdf_values(const Graph& g) {
    const int n = g.vertex_count(), W = Bits::words(n);
    std::vector<std::uint8_t> values(n, 0);
    if (n == 0) return values;
    auto closed = closed_rows(g);
    std::vector<std::uint64_t> undom(W, 0);
    for (int v = 0; v < n; ++v) Bits::set(undom.data(), v);
    while (true) {
        int best_gain = 0, best_v = -1;
        for (int v = 0; v < n; ++v) {
            int gain = Bits::count_and(closed.data() + static_cast<std::size_t>(v) * W,
                                       undom.data(), W);
            if (gain > best_gain) {
                best_gain = gain;
                best_v = v;
            }
        }
        if (best_gain < 2) break;
        values[best_v] = 2;
        const std::uint64_t* row = closed.data() + static_cast<std::size_t>(best_v) * W;
        for (int w = 0; w < W; ++w) undom[w] &= ~row[w];
    }
    for (int w = 0; w < W; ++w) {
        std::uint64_t bits = undom[w];
        while (bits) {
            int v = (w << 6) + std::countr_zero(bits);
            bits &= bits - 1;
            values[v] = 1;
        }
    }
    return values;
}

std::vector<std::uint8_t> greedy_dom_values(const Graph& g) {
    const int n = g.vertex_count(), W = Bits::words(n);
    std::vector<std::uint8_t> in_set(n, 0);
    if (n == 0) return in_set;
    auto closed = closed_rows(g);
    std::vector<std::uint64_t> undom(W, 0);
    for (int v = 0; v < n; ++v) Bits::set(undom.data(), v);
    int remaining = n;
    while (remaining > 0) {
        int best_gain = 0, best_v = -1;
        for (int v = 0; v < n; ++v) {
            int gain = Bits::count_and(closed.data() + static_cast<std::size_t>(v) * W,
                                       undom.data(), W);
            if (gain > best_gain) {
                best_gain = gain;
                best_v = v;
            }
        }
        in_set[best_v] = 1;
        const std::uint64_t* row = closed.data() + static_cast<std::size_t>(best_v) * W;
        for (int w = 0; w < W; ++w) {
            remaining -= std::popcount(undom[w] & row[w]);
            undom[w] &= ~row[w];
        }
    }
    return in_set;
}

template <typename Search>
SolveReport solve_decomposed(const Graph& g, const SolveOptions& opts, bool roman) {
    const auto start = Clock::now();
    Budget budget;
    budget.node_budget = opts.node_budget;
    budget.deadline = start + std::chrono::milliseconds(opts.time_budget_ms);

    SolveReport report;
    const int n = g.vertex_count();
    std::vector<std::uint8_t> merged(n, 0);
    int total = 0;

    auto comps = metrics(g).components;
    for (const auto& comp : comps) {
        // once the budget is gone each remaining component keeps its greedy incumbent
        Graph sub = comps.size() == 1 ? g : induced_subgraph(g, comp);
        std::vector<std::uint8_t> incumbent_values =
            roman ? greedy_rdf_values(sub) : greedy_dom_values(sub);
        int incumbent = 0;
        for (std::uint8_t x : incumbent_values) incumbent += roman ? x : (x ? 1 : 0);
        Search search(sub, budget, opts.fail_first, incumbent, incumbent_values);
        search.run();
        total += search.best;
        for (std::size_t i = 0; i < comp.size(); ++i) merged[comp[i]] = search.best_values[i];
    }
    report.value = total;
    report.optimal = !budget.hit;
    report.nodes = budget.nodes;
    if (roman) {
        report.certificate = RomanAssignment{std::move(merged)};
    } else {
        std::vector<int> set;
        for (int i = 0; i < n; ++i)
            if (merged[i]) set.push_back(i);
        report.certificate = std::move(set);
    }
    report.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return report;
}

void check_brute_size(const Graph& g, int max_vertices) {
    if (max_vertices > 30) max_vertices = 30;
    if (g.vertex_count() > max_vertices)
        throw Error(ErrorKind::infeasible,
                    "brute force limited to " + std::to_string(max_vertices) + " vertices, got " +
                        std::to_string(g.vertex_count()));
}

std::vector<std::uint32_t> closed_masks32(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> closed(n, 0);
    for (int v = 0; v < n; ++v) {
        closed[v] = static_cast<std::uint32_t>(g.row(v)[0]);
        closed[v] |= 1u << v;
    }
    return closed;
}

} // namespace

bool rdf_is_valid(const Graph& g, const RomanAssignment& f) {
    const int n = g.vertex_count();
    if (static_cast<int>(f.values.size()) != n)
        throw Error(ErrorKind::invalid_argument, "assignment length does not match graph");
    const int W = Bits::words(n);
    std::vector<std::uint64_t> two_mask(W, 0);
    for (int v = 0; v < n; ++v) {
        if (f.values[v] > 2)
            throw Error(ErrorKind::invalid_argument, "assignment values must be 0, 1 or 2");
        if (f.values[v] == 2) Bits::set(two_mask.data(), v);
    }
    for (int v = 0; v < n; ++v) {
        if (f.values[v] != 0) continue;
        auto r = g.row(v);
        bool covered = false;
        for (int w = 0; w < W && !covered; ++w) covered = (r[w] & two_mask[w]) != 0;
        if (!covered) return false;
    }
    return true;
}

bool dominating_set_is_valid(const Graph& g, const std::vector<int>& s) {
    const int n = g.vertex_count(), W = Bits::words(n);
    std::vector<std::uint64_t> covered(W, 0);
    for (int v : s) {
        if (v < 0 || v >= n)
            throw Error(ErrorKind::invalid_argument, "dominating set vertex out of range");
        auto r = g.row(v);
        for (int w = 0; w < W; ++w) covered[w] |= r[w];
        Bits::set(covered.data(), v);
    }
    return Bits::count(covered.data(), W) == n;
}

SolveReport gamma_r_exact(const Graph& g, const SolveOptions& opts) {
    if (g.vertex_count() == 0) {
        SolveReport r;
        r.certificate = RomanAssignment{};
        return r;
    }
    return solve_decomposed<RdfSearch>(g, opts, true);
}

SolveReport gamma_exact(const Graph& g, const SolveOptions& opts) {
    if (g.vertex_count() == 0) {
        SolveReport r;
        r.certificate = std::vector<int>{};
        return r;
    }
    return solve_decomposed<DomSearch>(g, opts, false);
}

RomanAssignment greedy_upper_bound(const Graph& g) {
    return RomanAssignment{greedy_rdf_values(g)};
}

int gamma_r_brute_serial(const Graph& g, int max_vertices) {
    check_brute_size(g, max_vertices);
    const int n = g.vertex_count();
    if (n == 0) return 0;
    auto closed = closed_masks32(g);
    int best = n;
    const std::int64_t limit = 1ll << n;
    for (std::int64_t mask = 0; mask < limit; ++mask) {
        const int twos = std::popcount(static_cast<std::uint64_t>(mask));
        if (2 * twos >= best) continue;
        std::uint32_t cover = 0;
        std::uint32_t m = static_cast<std::uint32_t>(mask);
        while (m) {
            cover |= closed[std::countr_zero(m)];
            m &= m - 1;
        }
        const int weight = 2 * twos + (n - std::popcount(cover));
        best = std::min(best, weight);
    }
    return best;
}

int gamma_r_brute(const Graph& g, int max_vertices) {
    check_brute_size(g, max_vertices);
    const int n = g.vertex_count();
    if (n == 0) return 0;
#ifdef _OPENMP
    auto closed = closed_masks32(g);
    int best = n;
    const std::int64_t limit = 1ll << n;
#pragma omp parallel for reduction(min : best) schedule(static)
    for (std::int64_t mask = 0; mask < limit; ++mask) {
        const int twos = std::popcount(static_cast<std::uint64_t>(mask));
        if (2 * twos >= best) continue;
        std::uint32_t cover = 0;
        std::uint32_t m = static_cast<std::uint32_t>(mask);
        while (m) {
            cover |= closed[std::countr_zero(m)];
            m &= m - 1;
        }
        const int weight = 2 * twos + (n - std::popcount(cover));
        best = std::min(best, weight);
    }
    return best;
#else
    return gamma_r_brute_serial(g, max_vertices);
#endif
}

int gamma_brute(const Graph& g, int max_vertices) {
    check_brute_size(g, max_vertices);
    const int n = g.vertex_count();
    if (n == 0) return 0;
    auto closed = closed_masks32(g);
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
    int best = n;
    const std::int64_t limit = 1ll << n;
    for (std::int64_t mask = 0; mask < limit; ++mask) {
        const int size = std::popcount(static_cast<std::uint64_t>(mask));
        if (size >= best) continue;
        std::uint32_t cover = 0;
        std::uint32_t m = static_cast<std::uint32_t>(mask);
        while (m) {
            cover |= closed[std::countr_zero(m)];
            m &= m - 1;
        }
        if (cover == all) best = size;
    }
    return best;
}

std::string report_to_json(const SolveReport& report, bool include_elapsed) {
    nlohmann::ordered_json j;
    j["value"] = report.value;
    j["optimal"] = report.optimal;
    if (std::holds_alternative<RomanAssignment>(report.certificate)) {
        auto arr = nlohmann::ordered_json::array();
        for (std::uint8_t v : report.assignment().values) arr.push_back(static_cast<int>(v));
        j["certificate"] = std::move(arr);
    } else {
        j["certificate"] = report.dominating_set();
    }
    j["nodes"] = report.nodes;
    j["elapsed_ms"] = include_elapsed ? report.elapsed_ms : 0;
    return j.dump();
}

} // namespace rzdg
