#include "rzdg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>

#include "json.hpp"

namespace rzdg {

namespace {

std::uint64_t env_limit(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return fallback;
}

void check_vertex_cap(std::uint64_t n, const char* what) {
    if (n > max_graph_vertices())
        throw Error(ErrorKind::capacity, std::string(what) + " would have " + std::to_string(n) +
                                             " vertices, cap is " +
                                             std::to_string(max_graph_vertices()));
}

std::vector<std::string> index_labels(int n) {
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return labels;
}

} // namespace

std::uint32_t max_graph_vertices() {
    return static_cast<std::uint32_t>(env_limit("RZDG_MAX_VERTICES", 4096));
}

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
    words_ = n_ == 0 ? 0 : (n_ + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
    degrees_.assign(n_, 0);
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != n_)
        throw Error(ErrorKind::invalid_argument, "vertex labels must be unique");
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n_ || j >= n_)
            throw Error(ErrorKind::invalid_argument, "edge endpoint out of range");
        if (i == j) throw Error(ErrorKind::invalid_argument, "self-loops are not allowed");
        std::uint64_t& wi = bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)];
        if (!((wi >> (j & 63)) & 1)) {
            wi |= 1ull << (j & 63);
            bits_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |= 1ull << (i & 63);
            degrees_[i] += 1;
            degrees_[j] += 1;
            edge_count_ += 1;
        }
    }
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
}

Graph zero_divisor_graph(const RingSpec& ring) {
    std::uint64_t nv = ring.beta() == 0 ? 0 : ring.beta() - 1;
    check_vertex_cap(nv, "zero-divisor graph");
    std::vector<RingElement> verts;
    verts.reserve(nv);
    for (const RingElement& x : ring.zero_divisor_set())
        if (!ring.is_zero(x)) verts.push_back(x);
    std::vector<std::string> labels;
    labels.reserve(verts.size());
    for (const RingElement& x : verts) labels.push_back(ring.label(x));
    std::vector<std::pair<int, int>> edges;
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ring.is_zero(ring.mul(verts[i], verts[j]))) edges.emplace_back(i, j);
    return Graph(std::move(labels), edges);
}

Graph total_graph(const RingSpec& ring) {
    check_vertex_cap(ring.order(), "total graph");
    const int n = static_cast<int>(ring.order());
    std::vector<RingElement> verts;
    verts.reserve(n);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) {
        verts.push_back(ring.element_at(i));
        labels.push_back(ring.label(verts.back()));
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ring.is_zero_divisor(ring.add(verts[i], verts[j]))) edges.emplace_back(i, j);
    return Graph(std::move(labels), edges);
}

Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.vertex_count() == 0 || h.vertex_count() == 0)
        throw Error(ErrorKind::invalid_argument, "cartesian product needs nonempty factors");
    const std::uint64_t nv =
        static_cast<std::uint64_t>(g.vertex_count()) * static_cast<std::uint64_t>(h.vertex_count());
    check_vertex_cap(nv, "cartesian product");
    const int ng = g.vertex_count(), nh = h.vertex_count();
    std::vector<std::string> labels;
    labels.reserve(nv);
    for (int i = 0; i < ng; ++i)
        for (int j = 0; j < nh; ++j) labels.push_back("(" + g.label(i) + "," + h.label(j) + ")");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < ng; ++i)
        for (auto [a, b] : h.edges()) edges.emplace_back(i * nh + a, i * nh + b);
    for (auto [a, b] : g.edges())
        for (int j = 0; j < nh; ++j) edges.emplace_back(a * nh + j, b * nh + j);
    return Graph(std::move(labels), edges);
}

Graph complete_graph(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "complete graph needs n >= 1");
    check_vertex_cap(n, "complete graph");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(index_labels(n), edges);
}

Graph complete_bipartite(int a, int b) {
    return complete_multipartite({a, b});
}

Graph complete_multipartite(const std::vector<int>& sizes) {
    if (sizes.empty()) throw Error(ErrorKind::invalid_argument, "multipartite needs parts");
    std::uint64_t n = 0;
    for (int s : sizes) {
        if (s < 1) throw Error(ErrorKind::invalid_argument, "part sizes must be >= 1");
        n += static_cast<std::uint64_t>(s);
    }
    check_vertex_cap(n, "multipartite graph");
    std::vector<int> part_of;
    for (std::size_t p = 0; p < sizes.size(); ++p)
        part_of.insert(part_of.end(), sizes[p], static_cast<int>(p));
    std::vector<std::pair<int, int>> edges;
    const int nv = static_cast<int>(n);
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (part_of[i] != part_of[j]) edges.emplace_back(i, j);
    return Graph(index_labels(nv), edges);
}

Graph path_graph(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "path needs n >= 1");
    check_vertex_cap(n, "path");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(index_labels(n), edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw Error(ErrorKind::invalid_argument, "cycle needs n >= 3");
    check_vertex_cap(n, "cycle");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph(index_labels(n), edges);
}

Graph empty_graph(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_argument, "empty graph needs n >= 1");
    check_vertex_cap(n, "empty graph");
    return Graph(index_labels(n), {});
}

namespace {

// BFS with bitset frontiers; returns eccentricity, or -1 if not all reached
int eccentricity(const Graph& g, int src, std::vector<std::uint64_t>& visited,
                 std::vector<std::uint64_t>& frontier, std::vector<std::uint64_t>& next) {
    const int n = g.vertex_count(), W = g.words_per_row();
    std::fill(visited.begin(), visited.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    visited[src >> 6] |= 1ull << (src & 63);
    frontier[src >> 6] |= 1ull << (src & 63);
    int reached = 1, level = 0;
    while (true) {
        std::fill(next.begin(), next.end(), 0);
        for (int w = 0; w < W; ++w) {
            std::uint64_t bits = frontier[w];
            while (bits) {
                int v = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                auto r = g.row(v);
                for (int x = 0; x < W; ++x) next[x] |= r[x];
            }
        }
        bool any = false;
        for (int w = 0; w < W; ++w) {
            next[w] &= ~visited[w];
            if (next[w]) any = true;
        }
        if (!any) break;
        ++level;
        for (int w = 0; w < W; ++w) {
            visited[w] |= next[w];
            reached += std::popcount(next[w]);
        }
        frontier.swap(next);
    }
    return reached == n ? level : -1;
}

} // namespace

std::optional<int> diameter(const Graph& g) {
    const int n = g.vertex_count();
    if (n <= 1) return 0;
    const int W = g.words_per_row();
    std::vector<std::uint64_t> visited(W), frontier(W), next(W);
    int diam = 0;
    for (int v = 0; v < n; ++v) {
        int ecc = eccentricity(g, v, visited, frontier, next);
        if (ecc < 0) return std::nullopt;
        diam = std::max(diam, ecc);
    }
    return diam;
}

GraphMetrics metrics(const Graph& g) {
    GraphMetrics m;
    const int n = g.vertex_count();
    m.degrees.resize(n);
    for (int i = 0; i < n; ++i) {
        m.degrees[i] = g.degree(i);
        m.max_degree = std::max(m.max_degree, m.degrees[i]);
    }
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            auto r = g.row(v);
            for (int w = 0; w < g.words_per_row(); ++w) {
                std::uint64_t bits = r[w];
                while (bits) {
                    int u = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (!seen[u]) {
                        seen[u] = 1;
                        stack.push_back(u);
                    }
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        m.components.push_back(std::move(comp));
    }
    return m;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    std::vector<std::string> labels;
    labels.reserve(vertices.size());
    for (int v : vertices) labels.push_back(g.label(v));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j]))
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Graph(std::move(labels), edges);
}

bool is_complete(const Graph& g) {
    const std::int64_t n = g.vertex_count();
    return g.edge_count() == n * (n - 1) / 2;
}

std::optional<std::pair<int, int>> complete_bipartite_parts(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) return std::nullopt;
    std::vector<int> side(n, -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u) {
                if (!g.adjacent(v, u)) continue;
                if (side[u] < 0) {
                    side[u] = 1 - side[v];
                    stack.push_back(u);
                } else if (side[u] == side[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::int64_t a = std::count(side.begin(), side.end(), 0);
    std::int64_t b = n - a;
    if (a == 0 || b == 0) return std::nullopt;
    if (g.edge_count() != a * b) return std::nullopt; // bipartite but not complete
    auto lo = static_cast<int>(std::min(a, b)), hi = static_cast<int>(std::max(a, b));
    return std::make_pair(lo, hi);
}

namespace {

std::string quote_dot(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string to_dot(const Graph& g) {
    std::string out = "graph {\n";
    for (int i = 0; i < g.vertex_count(); ++i) out += "  " + quote_dot(g.label(i)) + ";\n";
    for (auto [i, j] : g.edges())
        out += "  " + quote_dot(g.label(i)) + " -- " + quote_dot(g.label(j)) + ";\n";
    out += "}\n";
    return out;
}

std::string to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    j["labels"] = g.labels();
    auto edges = nlohmann::ordered_json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j.dump();
}

} // namespace rzdg
