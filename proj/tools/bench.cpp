// Benchmark of the parallel kernels against their serial references:
//   - gamma_r_brute (OpenMP reduction over V2 subsets) vs gamma_r_brute_serial
//   - run_suite with N worker threads vs 1 worker thread
// Values must agree exactly; the table reports wall times.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rzdg/harness.hpp"
#include "rzdg/parse.hpp"
#include "rzdg/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

rzdg::Graph random_graph(int n, double p, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution edge(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) edges.emplace_back(i, j);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return rzdg::Graph(std::move(labels), edges);
}

} // namespace

int main(int argc, char** argv) {
    int threads = 0;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--threads") threads = std::stoi(argv[i + 1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled, serial fallbacks only\n");
#endif

    std::printf("\nbrute-force gamma_R kernel (2^n subset reduction)\n");
    std::printf("%-28s %8s %12s %12s %8s\n", "graph", "value", "serial ms", "parallel ms",
                "speedup");
    struct Case {
        std::string name;
        rzdg::Graph g;
    };
    std::vector<Case> cases;
    cases.push_back({"random n=18 p=0.30", random_graph(18, 0.30, 1001)});
    cases.push_back({"random n=20 p=0.20", random_graph(20, 0.20, 1002)});
    cases.push_back({"random n=20 p=0.50", random_graph(20, 0.50, 1003)});
    cases.push_back({"Gamma(Z32)", rzdg::zero_divisor_graph(rzdg::parse_ring("Z32"))});
    cases.push_back({"T(Gamma(Z16))", rzdg::total_graph(rzdg::parse_ring("Z16"))});
    for (const Case& c : cases) {
        auto t0 = Clock::now();
        int serial = rzdg::gamma_r_brute_serial(c.g);
        double serial_ms = ms_since(t0);
        auto t1 = Clock::now();
        int parallel = rzdg::gamma_r_brute(c.g);
        double parallel_ms = ms_since(t1);
        if (serial != parallel) {
            std::printf("VALUE MISMATCH on %s: serial %d parallel %d\n", c.name.c_str(), serial,
                        parallel);
            return 1;
        }
        std::printf("%-28s %8d %12.2f %12.2f %7.2fx\n", c.name.c_str(), serial, serial_ms,
                    parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
    }

    std::printf("\nclaim sweep (independent instances)\n");
    rzdg::SweepSpec spec;
    spec.max_n = 100;
    spec.threads = 1;
    auto t0 = Clock::now();
    rzdg::SweepReport serial_report = rzdg::run_suite(spec);
    double serial_ms = ms_since(t0);
    spec.threads = threads;
    auto t1 = Clock::now();
    rzdg::SweepReport parallel_report = rzdg::run_suite(spec);
    double parallel_ms = ms_since(t1);
    if (rzdg::report_csv(serial_report) != rzdg::report_csv(parallel_report)) {
        std::printf("SWEEP REPORT MISMATCH between 1 and %d threads\n", threads);
        return 1;
    }
    std::printf("%-28s %8zu %12.2f %12.2f %7.2fx\n", "verify --all --max-n 100",
                serial_report.rows.size(), serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
    std::printf("reports byte-identical across thread counts\n");
    return 0;
}
