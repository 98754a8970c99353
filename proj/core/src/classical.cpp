#include "qtutte/classical.hpp"

#include <algorithm>
#include <cmath>

#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

double residual_inf(const Matrix& a, const std::vector<double>& z, const std::vector<double>& b) {
    double worst = 0.0;
    const std::vector<double> az = mat_vec(a, z);
    for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(az[i] - b[i]));
    return worst;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TutteSolution solve(const TutteSystem& sys) {
    TutteSolution sol;
    sol.x = cholesky_solve(sys.a, sys.b_x);
    sol.y = cholesky_solve(sys.a, sys.b_y);
    const double tol_x = 1e-10 * std::max(inf_norm(sys.b_x), 1e-300);
    const double tol_y = 1e-10 * std::max(inf_norm(sys.b_y), 1e-300);
    if (residual_inf(sys.a, sol.x, sys.b_x) > tol_x || residual_inf(sys.a, sol.y, sys.b_y) > tol_y)
        throw numerical_failure("solve: residual exceeds 1e-10 * ||b||_inf");
    return sol;
}

double condition_number(const Matrix& a) {
    if (!a.is_symmetric(1e-10)) throw invalid_input("condition_number: matrix not symmetric");
    const SymmetricEigen eig = jacobi_eigen(a);
    const double lo = eig.values.front();
    const double hi = eig.values.back();
    if (!(lo > 0.0)) throw numerical_failure("condition_number: matrix is not positive definite");
    return hi / lo;
}

double barycenter_residual(const Graph& g, const PinSpec& pins, const Embedding& emb) {
    if (emb.coords.size() != g.vertex_count())
        throw invalid_input("barycenter_residual: embedding does not cover the graph");
    pins.validate(g.vertex_count());

    double worst = 0.0;
    if (pins.mode == PinMode::hard_pin) {
        std::vector<char> is_pinned(g.vertex_count(), 0);
        for (const Pin& p : pins.pinned) is_pinned[p.vertex] = 1;
        for (std::size_t u = 0; u < g.vertex_count(); ++u) {
            if (is_pinned[u]) continue;
            double rx = static_cast<double>(g.degree(u)) * emb.coords[u].x;
            double ry = static_cast<double>(g.degree(u)) * emb.coords[u].y;
            for (std::size_t v : g.neighbors(u)) {
                rx -= emb.coords[v].x;
                ry -= emb.coords[v].y;
            }
            worst = std::max({worst, std::abs(rx), std::abs(ry)});
        }
        return worst;
    }

    // soft ground: residual of the grounded system rows, pins included
    std::vector<double> ground(g.vertex_count(), 0.0), bx(g.vertex_count(), 0.0), by(g.vertex_count(), 0.0);
    for (const Pin& p : pins.pinned) {
        ground[p.vertex] += 1.0;
        bx[p.vertex] += p.x;
        by[p.vertex] += p.y;
    }
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        double rx = (static_cast<double>(g.degree(u)) + ground[u]) * emb.coords[u].x - bx[u];
        double ry = (static_cast<double>(g.degree(u)) + ground[u]) * emb.coords[u].y - by[u];
        for (std::size_t v : g.neighbors(u)) {
            rx -= emb.coords[v].x;
            ry -= emb.coords[v].y;
        }
        worst = std::max({worst, std::abs(rx), std::abs(ry)});
    }
    return worst;
}

std::size_t crossing_count(const Graph& g, const std::vector<Vec2>& coords) {
    if (coords.size() != g.vertex_count())
        throw invalid_input("crossing_count: coordinates do not cover the graph");
    const auto& edges = g.edges();
    std::size_t crossings = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [a, b] = edges[i];
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto [c, d] = edges[j];
            if (a == c || a == d || b == c || b == d) continue; // adjacent edges share an endpoint
            if (segments_intersect(coords[a], coords[b], coords[c], coords[d])) ++crossings;
        }
    }
    return crossings;
}

std::size_t crossing_count(const Graph& g, const Embedding& emb) { return crossing_count(g, emb.coords); }

} // namespace qtutte
