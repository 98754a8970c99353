#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qtutte/geometry.hpp"
#include "qtutte/graph.hpp"
#include "qtutte/rng.hpp"

namespace qtutte {

struct DelaunayResult {
    Graph graph;
    std::vector<Vec2> points;                          // indexed like the graph
    std::vector<std::array<std::size_t, 3>> triangles; // faces of the triangulation
    std::vector<std::size_t> hull;                     // convex hull, counterclockwise
};

/// Delaunay triangulation of n uniform points in the unit square via
/// incremental Bowyer-Watson insertion under a super-triangle. Draws closer
/// than 1e-9 to an existing point are rejected and redrawn. Vertices are
/// relabelled so that indices 0, 1, 2 are three hull vertices in clockwise
/// order starting from the bottom-left (the outer triple that downstream
/// pinning conventions expect).
DelaunayResult random_planar_delaunay(std::size_t n, Seed seed);

/// G(n, p): every unordered pair tossed once, in lexicographic pair order, so
/// a seed pins down the exact edge set across implementations.
Graph erdos_renyi(std::size_t n, double p, Seed seed);

/// Margulis-Gabber-Galil expander on Z_k x Z_k: (x, y) is joined to
/// (x +- 2y, y), (x +- (2y+1), y), (x, y +- 2x), (x, y +- (2x+1)) mod k,
/// collapsed to a simple graph. Vertex index is x*k + y. Deterministic.
Graph margulis_gabber_galil(std::size_t side);

/// rows x cols 4-neighbor lattice; vertex index is r*cols + c.
Graph grid(std::size_t rows, std::size_t cols);

enum class GraphClass { planar, grid, expander, random_er };

/// CLI-facing names: "planar", "grid", "expander", "random".
GraphClass parse_graph_class(const std::string& name);
std::string graph_class_name(GraphClass c);

} // namespace qtutte
