#pragma once

// Independent reference implementations the test suites check the library
// against. Everything here recomputes results from first principles (dense
// matrices, Taylor series, determinants) and deliberately shares no code
// with the routines under test.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtutte/geometry.hpp"
#include "qtutte/graph.hpp"
#include "qtutte/matrix.hpp"
#include "qtutte/statevector.hpp"

namespace oracle {

using cd = std::complex<double>;

/// Dense complex square matrix, row-major.
struct CMat {
    std::size_t n = 0;
    std::vector<cd> a;

    CMat() = default;
    explicit CMat(std::size_t dim) : n(dim), a(dim * dim) {}

    static CMat eye(std::size_t dim) {
        CMat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cd& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cd& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline CMat mul(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::logic_error("oracle mul: dimension mismatch");
    CMat out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const cd v = x.at(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

inline CMat dagger(const CMat& x) {
    CMat out(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) = std::conj(x.at(j, i));
    return out;
}

inline std::vector<cd> mat_vec(const CMat& x, const std::vector<cd>& v) {
    if (v.size() != x.n) throw std::logic_error("oracle mat_vec: dimension mismatch");
    std::vector<cd> out(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        cd s = 0.0;
        for (std::size_t j = 0; j < x.n; ++j) s += x.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline double max_abs_diff(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::logic_error("oracle max_abs_diff: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
    return d;
}

/// Kronecker product, x acting on the high bits: (x kron y) has y's index as
/// the low part. Matches the qubit-0-is-LSB convention when written as
/// I_high kron U kron I_low for a gate on a middle qubit.
inline CMat kron(const CMat& x, const CMat& y) {
    CMat out(x.n * y.n);
    for (std::size_t xi = 0; xi < x.n; ++xi)
        for (std::size_t xj = 0; xj < x.n; ++xj) {
            const cd v = x.at(xi, xj);
            if (v == 0.0) continue;
            for (std::size_t yi = 0; yi < y.n; ++yi)
                for (std::size_t yj = 0; yj < y.n; ++yj)
                    out.at(xi * y.n + yi, xj * y.n + yj) = v * y.at(yi, yj);
        }
    return out;
}

/// Spectral norm by power iteration on m^dagger m. The start vector mixes all
/// basis directions with rotating phases so no eigenvector is missed by
/// symmetry; iteration count is generous for the tiny dimensions tested here.
inline double spectral_norm(const CMat& m) {
    if (m.n == 0) return 0.0;
    const CMat mm = mul(dagger(m), m);
    std::vector<cd> v(m.n);
    for (std::size_t i = 0; i < m.n; ++i) v[i] = std::polar(1.0 + static_cast<double>(i) / m.n, 0.7 * static_cast<double>(i));
    double lambda = 0.0;
    for (int it = 0; it < 300; ++it) {
        std::vector<cd> w = mat_vec(mm, v);
        double nrm = 0.0;
        for (const cd& z : w) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (cd& z : w) z /= nrm;
        lambda = nrm;
        v = std::move(w);
    }
    return std::sqrt(lambda);
}

/// exp(-i t h) for real symmetric h by scaling-and-squaring over a Taylor
/// series. No eigendecomposition anywhere, so the result is independent of
/// the library's Jacobi path as well as its circuit compilers.
inline CMat expm_minus_i(const qtutte::Matrix& h, double t) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw std::logic_error("oracle expm: matrix not square");
    CMat b(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            b.at(i, j) = cd{0.0, -t * h.at(i, j)};
            row += std::abs(t * h.at(i, j));
        }
        scale = std::max(scale, row);
    }
    int squarings = 0;
    while (scale > 0.25) {
        scale /= 2.0;
        ++squarings;
    }
    const double factor = 1.0 / static_cast<double>(std::uint64_t{1} << squarings);
    for (cd& z : b.a) z *= factor;

    CMat result = CMat::eye(n);
    CMat term = CMat::eye(n);
    for (int k = 1; k <= 40; ++k) {
        term = mul(term, b);
        for (cd& z : term.a) z /= static_cast<double>(k);
        double tn = 0.0;
        for (const cd& z : term.a) tn = std::max(tn, std::abs(z));
        for (std::size_t i = 0; i < result.a.size(); ++i) result.a[i] += term.a[i];
        if (tn < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = mul(result, result);
    return result;
}

/// The unitary of a primitive (non-controlled) gate on its local subspace,
/// where bit b of the local index is the value of targets[b].
inline CMat local_unitary(const qtutte::Gate& g, std::size_t target_count) {
    using qtutte::GateKind;
    const double r = std::sqrt(0.5);
    switch (g.kind) {
        case GateKind::identity: return CMat::eye(2);
        case GateKind::pauli_x: {
            CMat m(2);
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::pauli_z: {
            CMat m = CMat::eye(2);
            m.at(1, 1) = -1.0;
            return m;
        }
        case GateKind::hadamard: {
            CMat m(2);
            m.at(0, 0) = r;
            m.at(0, 1) = r;
            m.at(1, 0) = r;
            m.at(1, 1) = -r;
            return m;
        }
        case GateKind::phase: {
            CMat m = CMat::eye(2);
            m.at(1, 1) = std::polar(1.0, g.theta);
            return m;
        }
        case GateKind::cnot: {
            // local bit 0 = control, bit 1 = target
            CMat m(4);
            m.at(0, 0) = 1.0;
            m.at(2, 2) = 1.0;
            m.at(3, 1) = 1.0;
            m.at(1, 3) = 1.0;
            return m;
        }
        case GateKind::toffoli: {
            // local bits 0,1 = controls, bit 2 = target
            CMat m = CMat::eye(8);
            m.at(3, 3) = 0.0;
            m.at(7, 7) = 0.0;
            m.at(7, 3) = 1.0;
            m.at(3, 7) = 1.0;
            return m;
        }
        case GateKind::diag: {
            CMat m(g.phases.size());
            for (std::size_t i = 0; i < g.phases.size(); ++i) m.at(i, i) = g.phases[i];
            return m;
        }
        case GateKind::two_level: {
            const std::size_t dim = std::size_t{1} << target_count;
            CMat m = CMat::eye(dim);
            const auto i = static_cast<std::size_t>(g.level_i);
            const auto j = static_cast<std::size_t>(g.level_j);
            m.at(i, i) = g.block[0];
            m.at(i, j) = g.block[1];
            m.at(j, i) = g.block[2];
            m.at(j, j) = g.block[3];
            return m;
        }
        case GateKind::controlled: throw std::logic_error("oracle local_unitary: peel controls first");
    }
    throw std::logic_error("oracle local_unitary: unknown gate kind");
}

/// Full 2^q x 2^q matrix of one circuit op: controls peeled into a mask,
/// the local unitary embedded by explicit basis-index bookkeeping. This is
/// the permutation-conjugated Kronecker product written out directly.
inline CMat gate_matrix(const qtutte::Gate& g, const std::vector<std::size_t>& targets, std::size_t qubits) {
    const qtutte::Gate* inner = &g;
    std::uint64_t cmask = 0;
    while (inner->kind == qtutte::GateKind::controlled) {
        for (std::size_t c : inner->controls) cmask |= std::uint64_t{1} << c;
        inner = inner->inner.get();
    }
    const CMat local = local_unitary(*inner, targets.size());
    const std::uint64_t dim = std::uint64_t{1} << qubits;
    std::uint64_t tmask = 0;
    for (std::size_t t : targets) tmask |= std::uint64_t{1} << t;

    CMat full(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        if ((col & cmask) != cmask) {
            full.at(col, col) = 1.0;
            continue;
        }
        std::uint64_t loc = 0;
        for (std::size_t b = 0; b < targets.size(); ++b) loc |= ((col >> targets[b]) & 1u) << b;
        const std::uint64_t rest = col & ~tmask;
        for (std::uint64_t lr = 0; lr < local.n; ++lr) {
            const cd v = local.at(lr, loc);
            if (v == 0.0) continue;
            std::uint64_t row = rest;
            for (std::size_t b = 0; b < targets.size(); ++b) row |= ((lr >> b) & 1u) << targets[b];
            full.at(row, col) += v;
        }
    }
    return full;
}

/// Product of all op matrices in application order.
inline CMat circuit_matrix(const qtutte::Circuit& c) {
    CMat u = CMat::eye(std::uint64_t{1} << c.qubits);
    for (const qtutte::CircuitOp& op : c.ops) u = mul(gate_matrix(op.gate, op.targets, c.qubits), u);
    return u;
}

/// Submatrix over the given basis indices, asserting the kept columns carry
/// no amplitude outside the kept rows (i.e. the subspace is invariant).
inline CMat restrict_block(const CMat& m, const std::vector<std::uint64_t>& keep, double leak_tol = 1e-12) {
    std::vector<char> kept(m.n, 0);
    for (std::uint64_t k : keep) kept[k] = 1;
    CMat out(keep.size());
    for (std::size_t cj = 0; cj < keep.size(); ++cj) {
        for (std::size_t row = 0; row < m.n; ++row) {
            const cd v = m.at(row, keep[cj]);
            if (!kept[row]) {
                if (std::abs(v) > leak_tol) throw std::logic_error("oracle restrict_block: subspace leaks");
                continue;
            }
        }
        for (std::size_t ci = 0; ci < keep.size(); ++ci) out.at(ci, cj) = m.at(keep[ci], keep[cj]);
    }
    return out;
}

/// Strictly-inside circumcircle test by the classic 4x4 determinant, expanded
/// to a 3x3 after translating d to the origin. Long double arithmetic; the
/// sign is normalized by the triangle orientation.
inline bool in_circumcircle_det(qtutte::Vec2 a, qtutte::Vec2 b, qtutte::Vec2 c, qtutte::Vec2 d) {
    const long double ax = a.x - d.x, ay = a.y - d.y;
    const long double bx = b.x - d.x, by = b.y - d.y;
    const long double cx = c.x - d.x, cy = c.y - d.y;
    const long double det = (ax * ax + ay * ay) * (bx * cy - by * cx) -
                            (bx * bx + by * by) * (ax * cy - ay * cx) +
                            (cx * cx + cy * cy) * (ax * by - ay * bx);
    const long double orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const long double signed_det = orient < 0 ? -det : det;
    return signed_det > 1e-12L;
}

/// Closed-segment intersection by solving the parametric 2x2 system with
/// Cramer's rule (a different route than orientation predicates). Parallel
/// pairs fall back to projection overlap along the shared direction.
inline bool segments_intersect_param(qtutte::Vec2 p1, qtutte::Vec2 p2, qtutte::Vec2 q1, qtutte::Vec2 q2) {
    const double rx = p2.x - p1.x, ry = p2.y - p1.y;
    const double sx = q2.x - q1.x, sy = q2.y - q1.y;
    const double denom = rx * sy - ry * sx;
    const double qpx = q1.x - p1.x, qpy = q1.y - p1.y;
    const double cross_qp_r = qpx * ry - qpy * rx;
    const double scale = std::max({std::abs(rx), std::abs(ry), std::abs(sx), std::abs(sy), 1e-300});
    if (std::abs(denom) > 1e-12 * scale * scale) {
        const double t = (qpx * sy - qpy * sx) / denom;
        const double u = (qpx * ry - qpy * rx) / denom;
        const double eps = 1e-12;
        return t >= -eps && t <= 1.0 + eps && u >= -eps && u <= 1.0 + eps;
    }
    // parallel: intersect only when collinear and the projections overlap
    if (std::abs(cross_qp_r) > 1e-9 * scale * scale) return false;
    const double rr = rx * rx + ry * ry;
    if (rr == 0.0) {
        // p is a point; check it against segment q the same way
        const double ss = sx * sx + sy * sy;
        if (ss == 0.0) return p1.x == q1.x && p1.y == q1.y;
        const double v = ((p1.x - q1.x) * sx + (p1.y - q1.y) * sy) / ss;
        return v >= -1e-12 && v <= 1.0 + 1e-12 &&
               std::abs((p1.x - q1.x) * sy - (p1.y - q1.y) * sx) <= 1e-9 * scale;
    }
    double t0 = (qpx * rx + qpy * ry) / rr;
    double t1 = t0 + (sx * rx + sy * ry) / rr;
    if (t0 > t1) std::swap(t0, t1);
    return t1 >= -1e-12 && t0 <= 1.0 + 1e-12;
}

/// Crossing count over non-adjacent edge pairs, via the parametric tester.
inline std::size_t crossings_param(const qtutte::Graph& g, const std::vector<qtutte::Vec2>& pos) {
    const auto& edges = g.edges();
    std::size_t count = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (std::size_t f = e + 1; f < edges.size(); ++f) {
            const auto [a, b] = edges[e];
            const auto [c, d] = edges[f];
            if (a == c || a == d || b == c || b == d) continue;
            if (segments_intersect_param(pos[a], pos[b], pos[c], pos[d])) ++count;
        }
    return count;
}

} // namespace oracle
