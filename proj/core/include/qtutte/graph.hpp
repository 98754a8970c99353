#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtutte/geometry.hpp"

namespace qtutte {

/// Simple undirected graph. Edges are stored as (u, v) with u < v in
/// lexicographic order; self-loops and duplicates are rejected at
/// construction, so every instance is canonical.
class Graph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
    std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
    std::size_t max_degree() const;
    bool has_edge(std::size_t u, std::size_t v) const;
    bool is_connected() const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// On-disk text form:
///
///   line 1:        "n m"
///   next m lines:  "u v"  (0-based, u < v, lexicographically ascending)
///
/// Lines starting with '#' are comments and may appear anywhere. Writers
/// produced by this project append optional "# pos <v> <x> <y>" comments
/// carrying generator coordinates; readers that do not care skip them.
struct GraphFile {
    Graph graph;
    std::optional<std::vector<Vec2>> positions;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g, const std::vector<Vec2>* positions = nullptr);
void write_graph_file(const std::string& path, const Graph& g, const std::vector<Vec2>* positions = nullptr);

} // namespace qtutte
