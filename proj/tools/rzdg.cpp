#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rzdg/harness.hpp"
#include "rzdg/parse.hpp"
#include "rzdg/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using rzdg::Error;
using rzdg::ErrorKind;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitViolation = 3;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::capacity:
    case ErrorKind::infeasible: return kExitInfeasible;
    default: return kExitUsage;
    }
}

void print_banner(const std::string& subcommand, bool no_banner) {
    if (no_banner) return;
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::cerr << "# rzdg " << subcommand << " " << stamp << "\n";
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + out_path);
    out << text;
}

struct CommonFlags {
    bool no_banner = false;
    bool timings = false;
    int threads = 0;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--no-banner", flags.no_banner, "suppress the timestamp header");
    cmd->add_flag("--timings", flags.timings, "report wall-clock timings instead of 0");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = all)");
    cmd->add_option("--out", flags.out_path, "write the report to a file instead of stdout");
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

rzdg::Graph build_graph(const std::string& ring_literal, const std::string& named_literal,
                        bool total) {
    if (ring_literal.empty() == named_literal.empty())
        throw Error(ErrorKind::invalid_argument, "need exactly one of --ring and --named");
    if (!named_literal.empty()) {
        if (total) throw Error(ErrorKind::invalid_argument, "--total needs --ring");
        return rzdg::parse_named_graph(named_literal);
    }
    rzdg::RingSpec ring = rzdg::parse_ring(ring_literal);
    return total ? rzdg::total_graph(ring) : rzdg::zero_divisor_graph(ring);
}

std::string graph_stats_text(const rzdg::Graph& g) {
    rzdg::GraphMetrics m = rzdg::metrics(g);
    auto diam = rzdg::diameter(g);
    std::string out;
    out += "vertices " + std::to_string(g.vertex_count()) + "\n";
    out += "edges " + std::to_string(g.edge_count()) + "\n";
    out += "max_degree " + std::to_string(m.max_degree) + "\n";
    out += "diameter " + (diam ? std::to_string(*diam) : std::string("INFINITE")) + "\n";
    out += "components " + std::to_string(m.components.size()) + "\n";
    out += "component_sizes";
    for (const auto& comp : m.components) out += " " + std::to_string(comp.size());
    out += "\n";
    return out;
}

int cmd_graph(const std::string& ring_literal, const std::string& named_literal, bool total,
              const std::string& format, bool stats, const CommonFlags& flags) {
    rzdg::Graph g = build_graph(ring_literal, named_literal, total);
    std::string text;
    if (format == "dot") {
        text = rzdg::to_dot(g);
        if (stats) {
            // stats ride along as comment lines so the dot output stays parseable
            std::string block = graph_stats_text(g);
            std::size_t start = 0;
            while (start < block.size()) {
                std::size_t end = block.find('\n', start);
                text += "// " + block.substr(start, end - start) + "\n";
                start = end + 1;
            }
        }
    } else if (format == "json") {
        if (stats) {
            nlohmann::ordered_json j = nlohmann::ordered_json::parse(rzdg::to_json(g));
            rzdg::GraphMetrics m = rzdg::metrics(g);
            auto diam = rzdg::diameter(g);
            nlohmann::ordered_json s;
            s["vertices"] = g.vertex_count();
            s["edges"] = g.edge_count();
            s["max_degree"] = m.max_degree;
            s["diameter"] = diam ? nlohmann::ordered_json(*diam) : nlohmann::ordered_json("INFINITE");
            auto sizes = nlohmann::ordered_json::array();
            for (const auto& comp : m.components) sizes.push_back(comp.size());
            s["component_sizes"] = std::move(sizes);
            j["stats"] = std::move(s);
            text = j.dump();
        } else {
            text = rzdg::to_json(g);
        }
    } else if (format == "text") {
        text = graph_stats_text(g);
    } else {
        throw Error(ErrorKind::invalid_argument, "graph formats: dot, json, text");
    }
    write_output(text, flags.out_path);
    return kExitOk;
}

int cmd_solve(const std::string& ring_literal, const std::string& named_literal, bool total,
              bool domination, const rzdg::SolveOptions& budget, const std::string& format,
              const CommonFlags& flags) {
    rzdg::Graph g = build_graph(ring_literal, named_literal, total);
    rzdg::SolveReport report =
        domination ? rzdg::gamma_exact(g, budget) : rzdg::gamma_r_exact(g, budget);
    std::string text;
    if (format == "json") {
        text = rzdg::report_to_json(report, flags.timings);
    } else if (format == "text") {
        std::string instance = ring_literal.empty() ? named_literal : ring_literal;
        if (total) instance += " (total)";
        text += "instance " + instance + "\n";
        text += std::string(domination ? "gamma " : "gamma_R ") + std::to_string(report.value) +
                "\n";
        text += std::string("optimal ") + (report.optimal ? "true" : "false") + "\n";
        text += "certificate ";
        if (domination) {
            const auto& s = report.dominating_set();
            for (std::size_t i = 0; i < s.size(); ++i)
                text += (i ? "," : "") + std::to_string(s[i]);
        } else {
            const auto& f = report.assignment().values;
            for (std::size_t i = 0; i < f.size(); ++i)
                text += (i ? "," : "") + std::to_string(f[i]);
        }
        text += "\n";
        text += "nodes " + std::to_string(report.nodes) + "\n";
        text += "elapsed_ms " + std::to_string(flags.timings ? report.elapsed_ms : 0) + "\n";
    } else {
        throw Error(ErrorKind::invalid_argument, "solve formats: text, json");
    }
    write_output(text, flags.out_path);
    return report.optimal ? kExitOk : kExitInfeasible;
}

int cmd_verify(rzdg::SweepSpec spec, bool strict, const std::string& pinned_path,
               const std::string& write_pinned_path, const std::string& format,
               const CommonFlags& flags) {
    spec.threads = flags.threads;
    rzdg::SweepReport report = rzdg::run_suite(spec);

    std::string text;
    if (format == "csv")
        text = rzdg::report_csv(report, flags.timings);
    else if (format == "json")
        text = rzdg::report_json(report, flags.timings);
    else if (format == "md")
        text = rzdg::report_markdown(report, flags.timings);
    else if (format == "text")
        text = rzdg::report_text(report, flags.timings);
    else
        throw Error(ErrorKind::invalid_argument, "verify formats: text, csv, json, md");
    write_output(text, flags.out_path);

    if (!write_pinned_path.empty()) {
        std::ofstream out(write_pinned_path, std::ios::binary);
        if (!out)
            throw Error(ErrorKind::invalid_argument, "cannot write " + write_pinned_path);
        out << rzdg::pinned_to_json(rzdg::pinned_from_report(report));
    }

    if (!pinned_path.empty()) {
        std::ifstream in(pinned_path, std::ios::binary);
        if (!in) throw Error(ErrorKind::invalid_argument, "cannot read " + pinned_path);
        std::string body((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        rzdg::PinnedDiff diff = rzdg::compare_pinned(report, rzdg::pinned_from_json(body));
        for (const std::string& key : diff.unexpected)
            std::cerr << "unexpected violation: " << key << "\n";
        for (const std::string& key : diff.missing)
            std::cerr << "missing pinned violation: " << key << "\n";
        if (!diff.clean()) return kExitViolation;
        return kExitOk;
    }
    if (strict && report.violated > 0) return kExitViolation;
    return kExitOk;
}

int cmd_bound(const std::string& ring1, const std::string& ring2,
              const rzdg::SolveOptions& budget, const std::string& format,
              const CommonFlags& flags) {
    rzdg::Graph a = rzdg::zero_divisor_graph(rzdg::parse_ring(ring1));
    rzdg::Graph b = rzdg::zero_divisor_graph(rzdg::parse_ring(ring2));
    if (a.vertex_count() == 0 || b.vertex_count() == 0)
        throw Error(ErrorKind::invalid_argument,
                    "both zero-divisor graphs must be nonempty for the product bound");
    const long long m = a.vertex_count(), n = b.vertex_count();
    const long long r1 = rzdg::metrics(a).max_degree, r2 = rzdg::metrics(b).max_degree;
    const long long bound = m * n - r1 - r2 + 1;
    rzdg::SolveReport report = rzdg::gamma_r_exact(rzdg::cartesian_product(a, b), budget);
    const bool holds = report.value <= bound;

    std::string text;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["m"] = m;
        j["n"] = n;
        j["r1"] = r1;
        j["r2"] = r2;
        j["bound"] = bound;
        j["gamma_R"] = report.value;
        j["optimal"] = report.optimal;
        j["bound_holds"] = holds;
        text = j.dump();
    } else if (format == "text") {
        text += "m " + std::to_string(m) + "\n";
        text += "n " + std::to_string(n) + "\n";
        text += "r1 " + std::to_string(r1) + "\n";
        text += "r2 " + std::to_string(r2) + "\n";
        text += "bound " + std::to_string(bound) + "\n";
        text += "gamma_R " + std::to_string(report.value) + "\n";
        text += std::string("optimal ") + (report.optimal ? "true" : "false") + "\n";
        text += std::string("bound_holds ") + (holds ? "true" : "false") + "\n";
    } else {
        throw Error(ErrorKind::invalid_argument, "bound formats: text, json");
    }
    write_output(text, flags.out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-divisor graphs, total graphs and exact Roman domination"};
    app.require_subcommand(1);

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "construct and export a graph");
    std::string g_ring, g_named, g_format = "dot";
    bool g_total = false, g_stats = false;
    CommonFlags g_flags;
    graph_cmd->add_option("--ring", g_ring, "ring literal, e.g. Z25 or Z2xZ3");
    graph_cmd->add_option("--named", g_named, "named graph, e.g. path:5, kbip:2,4");
    graph_cmd->add_flag("--total", g_total, "total graph instead of the zero-divisor graph");
    graph_cmd->add_option("--format", g_format, "dot | json | text");
    graph_cmd->add_flag("--stats", g_stats, "append vertex/edge/degree/diameter statistics");
    add_common(graph_cmd, g_flags);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "exact gamma_R (or gamma) with certificate");
    std::string s_ring, s_named, s_format = "text";
    bool s_total = false, s_domination = false;
    std::int64_t s_budget_ms = 10'000;
    std::uint64_t s_budget_nodes = 100'000'000;
    CommonFlags s_flags;
    solve_cmd->add_option("--ring", s_ring, "ring literal");
    solve_cmd->add_option("--named", s_named, "named graph literal");
    solve_cmd->add_flag("--total", s_total, "solve on the total graph");
    solve_cmd->add_flag("--domination", s_domination, "domination number instead of gamma_R");
    solve_cmd->add_option("--budget-ms", s_budget_ms, "time budget per instance");
    solve_cmd->add_option("--budget-nodes", s_budget_nodes, "search node budget");
    solve_cmd->add_option("--format", s_format, "text | json");
    add_common(solve_cmd, s_flags);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the claim catalog sweep");
    std::vector<std::string> v_claims;
    bool v_all = false, v_strict = false, v_prime_powers = false;
    std::uint64_t v_max_n = 200, v_max_order = 0, v_product_cap = 300;
    std::int64_t v_budget_ms = 10'000;
    std::uint64_t v_budget_nodes = 100'000'000;
    std::string v_pinned, v_write_pinned, v_format = "text";
    CommonFlags v_flags;
    verify_cmd->add_option("--claims", v_claims, "claim ids or prefixes")->delimiter(',');
    verify_cmd->add_flag("--all", v_all, "verify every claim in the catalog");
    verify_cmd->add_option("--max-n", v_max_n, "modulus / size sweep limit");
    verify_cmd->add_option("--max-order", v_max_order,
                           "ring order limit for products and total graphs (default max-n)");
    verify_cmd->add_option("--max-product-vertices", v_product_cap,
                           "vertex cap for Cartesian-product instances");
    verify_cmd->add_flag("--prime-powers", v_prime_powers,
                         "restrict Z_n sweeps to prime powers");
    verify_cmd->add_option("--budget-ms", v_budget_ms, "time budget per instance");
    verify_cmd->add_option("--budget-nodes", v_budget_nodes, "node budget per instance");
    verify_cmd->add_flag("--strict", v_strict, "exit 3 when any row is VIOLATED");
    verify_cmd->add_option("--pinned", v_pinned,
                           "compare the VIOLATED set against a pinned expectations file");
    verify_cmd->add_option("--write-pinned", v_write_pinned,
                           "write the VIOLATED set as a pinned expectations file");
    verify_cmd->add_option("--format", v_format, "text | csv | json | md");
    add_common(verify_cmd, v_flags);

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "Cartesian-product Roman domination bound");
    std::string b_ring1, b_ring2, b_format = "text";
    std::int64_t b_budget_ms = 10'000;
    std::uint64_t b_budget_nodes = 100'000'000;
    CommonFlags b_flags;
    bound_cmd->add_option("--ring1", b_ring1, "first ring literal")->required();
    bound_cmd->add_option("--ring2", b_ring2, "second ring literal")->required();
    bound_cmd->add_option("--budget-ms", b_budget_ms, "time budget");
    bound_cmd->add_option("--budget-nodes", b_budget_nodes, "node budget");
    bound_cmd->add_option("--format", b_format, "text | json");
    add_common(bound_cmd, b_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (graph_cmd->parsed()) {
            print_banner("graph", g_flags.no_banner);
            apply_threads(g_flags.threads);
            return cmd_graph(g_ring, g_named, g_total, g_format, g_stats, g_flags);
        }
        if (solve_cmd->parsed()) {
            print_banner("solve", s_flags.no_banner);
            apply_threads(s_flags.threads);
            rzdg::SolveOptions budget;
            budget.time_budget_ms = s_budget_ms;
            budget.node_budget = s_budget_nodes;
            return cmd_solve(s_ring, s_named, s_total, s_domination, budget, s_format, s_flags);
        }
        if (verify_cmd->parsed()) {
            print_banner("verify", v_flags.no_banner);
            apply_threads(v_flags.threads);
            if (!v_all && v_claims.empty())
                throw Error(ErrorKind::invalid_argument, "pass --all or --claims");
            rzdg::SweepSpec spec;
            spec.claims = v_all ? std::vector<std::string>{} : v_claims;
            spec.max_n = v_max_n;
            spec.max_order = v_max_order;
            spec.max_product_vertices = v_product_cap;
            spec.prime_powers_only = v_prime_powers;
            spec.budget.time_budget_ms = v_budget_ms;
            spec.budget.node_budget = v_budget_nodes;
            return cmd_verify(spec, v_strict, v_pinned, v_write_pinned, v_format, v_flags);
        }
        if (bound_cmd->parsed()) {
            print_banner("bound", b_flags.no_banner);
            apply_threads(b_flags.threads);
            rzdg::SolveOptions budget;
            budget.time_budget_ms = b_budget_ms;
            budget.node_budget = b_budget_nodes;
            return cmd_bound(b_ring1, b_ring2, budget, b_format, b_flags);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
