#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rzdg/parse.hpp"
#include "rzdg/solver.hpp"

using rzdg::Graph;
using rzdg::RingSpec;
using rzdg::RomanAssignment;
using rzdg::SolveOptions;
using rzdg::SolveReport;

namespace {

Graph random_graph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution edge(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) edges.emplace_back(i, j);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return Graph(std::move(labels), edges);
}

void check_rdf_report(const Graph& g, const SolveReport& rep) {
    CHECK(rzdg::rdf_is_valid(g, rep.assignment()));
    CHECK(rep.assignment().weight() == rep.value);
}

} // namespace

TEST_CASE("rdf validity") {
    Graph k4 = rzdg::complete_graph(4);
    CHECK(rzdg::rdf_is_valid(k4, RomanAssignment{{2, 0, 0, 0}}));
    CHECK_FALSE(rzdg::rdf_is_valid(k4, RomanAssignment{{1, 0, 0, 0}}));
    CHECK(rzdg::rdf_is_valid(rzdg::empty_graph(1), RomanAssignment{{1}}));
    CHECK_FALSE(rzdg::rdf_is_valid(rzdg::complete_graph(2), RomanAssignment{{0, 1}}));
    CHECK_THROWS_AS(rzdg::rdf_is_valid(k4, RomanAssignment{{2, 0}}), rzdg::Error);
}

TEST_CASE("brute-force oracle on pinned instances") {
    CHECK(rzdg::gamma_r_brute(rzdg::complete_graph(1)) == 1);
    CHECK(rzdg::gamma_r_brute(rzdg::complete_graph(4)) == 2);
    CHECK(rzdg::gamma_r_brute(rzdg::cycle_graph(5)) == 4);
    CHECK(rzdg::gamma_r_brute(rzdg::path_graph(7)) == 5);
    CHECK(rzdg::gamma_r_brute(rzdg::zero_divisor_graph(RingSpec::from_modulus(4))) == 1);
    CHECK(rzdg::gamma_r_brute(Graph{}) == 0);
    CHECK(rzdg::gamma_r_brute(rzdg::zero_divisor_graph(RingSpec::from_modulus(15))) == 3);
    CHECK_THROWS_AS(rzdg::gamma_r_brute(rzdg::complete_graph(21)), rzdg::Error);

    CHECK(rzdg::gamma_brute(rzdg::complete_graph(5)) == 1);
    CHECK(rzdg::gamma_brute(rzdg::cycle_graph(4)) == 2);
    CHECK(rzdg::gamma_brute(rzdg::empty_graph(5)) == 5);
    CHECK(rzdg::gamma_brute(rzdg::zero_divisor_graph(RingSpec::from_modulus(6))) == 1);
}

TEST_CASE("parallel brute kernel equals the serial reference") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 14);
        Graph g = random_graph(rng, n, 0.1 + 0.2 * (trial % 4));
        CHECK(rzdg::gamma_r_brute(g) == rzdg::gamma_r_brute_serial(g));
    }
}

TEST_CASE("exact solver on pinned instances") {
    auto value = [](const Graph& g) {
        SolveReport rep = rzdg::gamma_r_exact(g);
        CHECK(rep.optimal);
        check_rdf_report(g, rep);
        return rep.value;
    };
    CHECK(value(rzdg::complete_graph(4)) == 2);
    CHECK(value(rzdg::path_graph(7)) == 5);
    CHECK(value(rzdg::cycle_graph(4)) == 3);
    CHECK(value(rzdg::empty_graph(5)) == 5);
    CHECK(value(rzdg::complete_bipartite(2, 4)) == 3);
    CHECK(value(rzdg::complete_bipartite(1, 9)) == 2);
    CHECK(value(Graph{}) == 0);
    CHECK(value(rzdg::zero_divisor_graph(RingSpec::from_modulus(15))) ==
          rzdg::gamma_r_brute(rzdg::zero_divisor_graph(RingSpec::from_modulus(15))));
}

TEST_CASE("exact domination on pinned instances") {
    auto value = [](const Graph& g) {
        SolveReport rep = rzdg::gamma_exact(g);
        CHECK(rep.optimal);
        CHECK(rzdg::dominating_set_is_valid(g, rep.dominating_set()));
        CHECK(static_cast<int>(rep.dominating_set().size()) == rep.value);
        return rep.value;
    };
    CHECK(value(rzdg::complete_graph(6)) == 1);
    CHECK(value(rzdg::cycle_graph(4)) == 2);
    CHECK(value(rzdg::empty_graph(5)) == 5);
    CHECK(value(rzdg::zero_divisor_graph(rzdg::parse_ring("Z2xZ3"))) == 1);
}

TEST_CASE("oracle equivalence and sandwich on ring graphs") {
    for (std::uint64_t n = 4; n <= 60; ++n) {
        Graph g = rzdg::zero_divisor_graph(RingSpec::from_modulus(n));
        if (g.vertex_count() == 0 || g.vertex_count() > 20) continue;
        SolveReport rdf = rzdg::gamma_r_exact(g);
        SolveReport dom = rzdg::gamma_exact(g);
        REQUIRE(rdf.optimal);
        REQUIRE(dom.optimal);
        check_rdf_report(g, rdf);
        CHECK(rdf.value == rzdg::gamma_r_brute(g));
        CHECK(dom.value == rzdg::gamma_brute(g));
        CHECK(dom.value <= rdf.value);
        CHECK(rdf.value <= 2 * dom.value);
    }
}

TEST_CASE("oracle equivalence on random graphs, both branching policies") {
    std::mt19937 rng(99);
    const double probs[] = {0.1, 0.3, 0.5, 0.8};
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + static_cast<int>(rng() % 14);
        Graph g = random_graph(rng, n, probs[trial % 4]);
        int oracle = rzdg::gamma_r_brute(g);
        SolveOptions ff;
        SolveOptions maxdeg;
        maxdeg.fail_first = false;
        SolveReport a = rzdg::gamma_r_exact(g, ff);
        SolveReport b = rzdg::gamma_r_exact(g, maxdeg);
        REQUIRE(a.optimal);
        REQUIRE(b.optimal);
        CHECK(a.value == oracle);
        CHECK(b.value == oracle);
        check_rdf_report(g, a);
        check_rdf_report(g, b);
    }
}

TEST_CASE("gamma equals gamma_R exactly on edgeless graphs, n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (int mask = 0; mask < (1 << pairs); ++mask) {
            std::vector<std::pair<int, int>> edges;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if (mask & (1 << bit)) edges.emplace_back(i, j);
            std::vector<std::string> labels(n);
            for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
            Graph g(std::move(labels), edges);
            bool equal = rzdg::gamma_brute(g) == rzdg::gamma_r_brute(g);
            CHECK(equal == (g.edge_count() == 0));
        }
    }
}

TEST_CASE("adding an edge never increases gamma_R") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        Graph g = random_graph(rng, n, 0.3);
        int base = rzdg::gamma_r_brute(g);
        int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
        if (i == j || g.adjacent(i, j)) continue;
        auto edges = g.edges();
        edges.emplace_back(std::min(i, j), std::max(i, j));
        Graph extended(g.labels(), edges);
        CHECK(rzdg::gamma_r_brute(extended) <= base);
    }
}

TEST_CASE("gamma_R is additive over disjoint unions") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        int na = 1 + static_cast<int>(rng() % 7), nb = 1 + static_cast<int>(rng() % 7);
        Graph a = random_graph(rng, na, 0.4), b = random_graph(rng, nb, 0.4);
        std::vector<std::string> labels;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < na; ++i) labels.push_back("a" + std::to_string(i));
        for (int i = 0; i < nb; ++i) labels.push_back("b" + std::to_string(i));
        for (auto [x, y] : a.edges()) edges.emplace_back(x, y);
        for (auto [x, y] : b.edges()) edges.emplace_back(na + x, na + y);
        Graph u(std::move(labels), edges);
        CHECK(rzdg::gamma_r_brute(u) == rzdg::gamma_r_brute(a) + rzdg::gamma_r_brute(b));
        SolveReport rep = rzdg::gamma_r_exact(u);
        REQUIRE(rep.optimal);
        CHECK(rep.value == rzdg::gamma_r_brute(u));
    }
}

TEST_CASE("greedy upper bound") {
    CHECK(rzdg::greedy_upper_bound(rzdg::complete_graph(4)).weight() == 2);
    CHECK(rzdg::greedy_upper_bound(rzdg::empty_graph(3)).weight() == 3);
    CHECK(rzdg::greedy_upper_bound(rzdg::complete_bipartite(1, 9)).weight() == 2);

    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        Graph g = random_graph(rng, n, 0.35);
        RomanAssignment greedy = rzdg::greedy_upper_bound(g);
        CHECK(rzdg::rdf_is_valid(g, greedy));
        CHECK(greedy.weight() >= rzdg::gamma_r_brute(g));
    }
}

TEST_CASE("multipartite table, small slice") {
    for (int a = 1; a <= 4; ++a)
        for (int b = a; b <= 4; ++b)
            for (int c = b; c <= 4; ++c) {
                Graph g = rzdg::complete_multipartite({a, b, c});
                int expected = a == 1 ? 2 : (a == 2 ? 3 : 4);
                SolveReport rep = rzdg::gamma_r_exact(g);
                REQUIRE(rep.optimal);
                CHECK(rep.value == expected);
                if (g.vertex_count() <= 12) CHECK(rzdg::gamma_r_brute(g) == expected);
            }
}

TEST_CASE("cartesian product bound on small ring pairs") {
    const char* rings[] = {"Z25", "Z9", "Z15", "Z16", "Z8"};
    for (const char* ra : rings)
        for (const char* rb : rings) {
            Graph a = rzdg::zero_divisor_graph(rzdg::parse_ring(ra));
            Graph b = rzdg::zero_divisor_graph(rzdg::parse_ring(rb));
            if (a.vertex_count() * b.vertex_count() > 100) continue;
            long long bound = static_cast<long long>(a.vertex_count()) * b.vertex_count() -
                              rzdg::metrics(a).max_degree - rzdg::metrics(b).max_degree + 1;
            SolveReport rep = rzdg::gamma_r_exact(rzdg::cartesian_product(a, b));
            REQUIRE(rep.optimal);
            CHECK(rep.value <= bound);
        }
}

TEST_CASE("budget exhaustion returns a valid incumbent") {
    std::mt19937 rng(77);
    Graph g = random_graph(rng, 60, 0.1);
    SolveOptions opts;
    opts.node_budget = 1;
    SolveReport rep = rzdg::gamma_r_exact(g, opts);
    CHECK_FALSE(rep.optimal);
    check_rdf_report(g, rep);
    CHECK(rep.value >= rzdg::gamma_r_exact(g).value);
}

TEST_CASE("solver is deterministic") {
    Graph g = rzdg::zero_divisor_graph(RingSpec::from_modulus(30));
    SolveReport a = rzdg::gamma_r_exact(g);
    SolveReport b = rzdg::gamma_r_exact(g);
    CHECK(a.value == b.value);
    CHECK(a.nodes == b.nodes);
    CHECK(a.assignment().values == b.assignment().values);
}

TEST_CASE("report json") {
    SolveReport rep = rzdg::gamma_r_exact(rzdg::complete_graph(3));
    std::string j = rzdg::report_to_json(rep);
    CHECK(j.find("\"value\":2") != std::string::npos);
    CHECK(j.find("\"optimal\":true") != std::string::npos);
    CHECK(j.find("\"elapsed_ms\":0") != std::string::npos);

    SolveReport dom = rzdg::gamma_exact(rzdg::complete_graph(3));
    std::string dj = rzdg::report_to_json(dom);
    CHECK(dj.find("\"value\":1") != std::string::npos);
    CHECK(dj.find("\"certificate\":[0]") != std::string::npos);
}
