#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rzdg/ring.hpp"

namespace rzdg {

// Largest vertex count a constructor will materialize. Override with
// RZDG_MAX_VERTICES.
std::uint32_t max_graph_vertices();

// Immutable undirected simple graph. Adjacency is stored as fixed-width bit
// rows sized to the vertex count; labels are opaque strings.
class Graph {
public:
    Graph() = default; // the empty graph
    Graph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }
    int words_per_row() const { return words_; }

    bool adjacent(int i, int j) const {
        return (bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1;
    }
    int degree(int i) const { return degrees_[i]; }
    std::span<const std::uint64_t> row(int i) const {
        return {bits_.data() + static_cast<std::size_t>(i) * words_,
                static_cast<std::size_t>(words_)};
    }

    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // sorted (i, j) pairs with i < j
    std::vector<std::pair<int, int>> edges() const;

private:
    int n_ = 0;
    int words_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> bits_;
    std::vector<int> degrees_;
};

// vertices Z(R) \ {0}, distinct x, y adjacent iff xy = 0
Graph zero_divisor_graph(const RingSpec& ring);
// vertices all of R, distinct x, y adjacent iff x + y is a zero-divisor
Graph total_graph(const RingSpec& ring);
// vertices V(g) x V(h); (a,b) ~ (c,d) iff a = c and b ~ d, or b = d and a ~ c
Graph cartesian_product(const Graph& g, const Graph& h);

Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph complete_multipartite(const std::vector<int>& sizes);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph empty_graph(int n);

// max eccentricity; graphs with at most one vertex have diameter 0,
// disconnected graphs have no finite diameter (nullopt)
std::optional<int> diameter(const Graph& g);

struct GraphMetrics {
    int max_degree = 0;
    std::vector<int> degrees;
    std::vector<std::vector<int>> components; // sorted by smallest vertex
};
GraphMetrics metrics(const Graph& g);

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

bool is_complete(const Graph& g);
// bipartition sizes (a <= b) if g is a complete bipartite graph
std::optional<std::pair<int, int>> complete_bipartite_parts(const Graph& g);

std::string to_dot(const Graph& g);
std::string to_json(const Graph& g);

} // namespace rzdg
