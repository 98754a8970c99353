#include "qtutte/energy.hpp"

#include <cmath>

#include "qtutte/classical.hpp"
#include "qtutte/errors.hpp"

namespace qtutte {

double total_energy(const Graph& g, const std::vector<Vec2>& positions) {
    if (positions.size() != g.vertex_count()) throw invalid_input("total_energy: coordinate count mismatch");
    double e = 0.0;
    for (const auto& [u, v] : g.edges()) {
        const double d2 = dist2(positions[u], positions[v]);
        e += (d2 - 1.0) * (d2 - 1.0);
    }
    const std::size_t n = g.vertex_count();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (dist2(positions[u], positions[v]) < 1.0) e += 1.0;
    return e;
}

bool is_zero_energy(const Graph& g, const std::vector<Vec2>& positions, double tol) {
    if (positions.size() != g.vertex_count()) throw invalid_input("is_zero_energy: coordinate count mismatch");
    if (!(tol >= 0.0)) throw invalid_input("is_zero_energy: tolerance must be nonnegative");
    for (const auto& [u, v] : g.edges()) {
        const double d = std::sqrt(dist2(positions[u], positions[v]));
        if (std::abs(d - 1.0) > tol) return false;
    }
    const std::size_t n = g.vertex_count();
    const double floor = 1.0 - tol;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (dist2(positions[u], positions[v]) < floor * floor) return false;
    if (crossing_count(g, positions) != 0)
        throw numerical_failure("is_zero_energy: certified drawing has a crossing");
    return true;
}

} // namespace qtutte
