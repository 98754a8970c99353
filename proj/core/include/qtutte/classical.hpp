#pragma once

#include <cstddef>
#include <vector>

#include "qtutte/graph.hpp"
#include "qtutte/matrix.hpp"
#include "qtutte/tutte.hpp"

namespace qtutte {

struct TutteSolution {
    std::vector<double> x;
    std::vector<double> y;
};

/// Direct dense solve of both axis systems (Cholesky; the matrix is positive
/// definite by construction). The returned residual satisfies
/// ||a z - b||_inf <= 1e-10 * ||b||_inf per axis or numerical_failure is thrown.
TutteSolution solve(const TutteSystem& sys);

/// kappa(a) = lambda_max / lambda_min via full Jacobi eigendecomposition.
/// Throws numerical_failure when a is not positive definite.
double condition_number(const Matrix& a);

/// How far the embedding is from the fixed point of the barycenter iteration.
/// HARD_PIN: max over free vertices u of ||deg(u) p_u - sum_neighbors p_v||_inf.
/// SOFT_GROUND: ||a p - b||_inf of the grounded system, all vertices.
double barycenter_residual(const Graph& g, const PinSpec& pins, const Embedding& emb);

/// Number of non-adjacent edge pairs whose closed segments intersect
/// (shared endpoints excluded by adjacency). Brute force over all pairs.
std::size_t crossing_count(const Graph& g, const std::vector<Vec2>& coords);
std::size_t crossing_count(const Graph& g, const Embedding& emb);

} // namespace qtutte
