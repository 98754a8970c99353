#pragma once

#include <vector>

#include "qtutte/geometry.hpp"
#include "qtutte/graph.hpp"

namespace qtutte {

/// Force-model score of a drawing:
///
///   E = sum over edges (|uv|^2 - 1)^2  +  #{vertex pairs with |uv| < 1}
///
/// Edges are pulled toward unit length; every pair closer than 1 pays a flat
/// repulsion penalty (edges included, so a short edge pays twice).
double total_energy(const Graph& g, const std::vector<Vec2>& positions);

/// Certifies E = 0 within tolerance: every edge has length 1 within tol and
/// every vertex pair is at least 1 - tol apart. A true verdict implies a
/// plane drawing: two crossing unit segments would need their four side
/// distances to sum to at most 4 while each is at least 1, which collapses to
/// a degenerate configuration. The implication is re-checked at runtime and a
/// violation throws numerical_failure.
bool is_zero_energy(const Graph& g, const std::vector<Vec2>& positions, double tol = 1e-9);

} // namespace qtutte
