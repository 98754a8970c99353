#include "qtutte/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iterator>
#include <numbers>
#include <numeric>

#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

std::vector<std::size_t> register_targets(std::size_t q) {
    std::vector<std::size_t> reg(q);
    std::iota(reg.begin(), reg.end(), std::size_t{0});
    return reg;
}

std::size_t log2_exact(std::size_t d) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < d) ++q;
    if ((std::size_t{1} << q) != d) throw invalid_input("dimension is not a power of two");
    return q;
}

} // namespace

EdgeColoring greedy_edge_coloring(const Graph& g) {
    EdgeColoring out;
    out.color_of.resize(g.edge_count());
    std::vector<std::vector<bool>> used(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edges()[e];
        auto taken = [&](std::size_t vert, std::size_t color) {
            return color < used[vert].size() && used[vert][color];
        };
        std::size_t c = 0;
        while (taken(u, c) || taken(v, c)) ++c;
        for (std::size_t vert : {u, v}) {
            if (used[vert].size() <= c) used[vert].resize(c + 1, false);
            used[vert][c] = true;
        }
        out.color_of[e] = c;
        if (out.classes.size() <= c) out.classes.resize(c + 1);
        out.classes[c].push_back(g.edges()[e]);
    }
    return out;
}

Decomposition decompose(const Matrix& a, const Graph& g) {
    if (a.rows() != a.cols()) throw invalid_input("decompose: matrix must be square");
    if (a.rows() != g.vertex_count()) throw invalid_input("decompose: dimension does not match graph");
    if (!a.is_symmetric()) throw invalid_input("decompose: matrix must be symmetric");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((a.at(i, j) != 0.0) != g.has_edge(i, j))
                throw invalid_input("decompose: off-diagonal pattern does not match graph adjacency");

    Decomposition dec;
    dec.diagonal.resize(n);
    for (std::size_t i = 0; i < n; ++i) dec.diagonal[i] = a.at(i, i);
    dec.coloring = greedy_edge_coloring(g);
    dec.classes.resize(dec.coloring.classes.size());
    for (std::size_t c = 0; c < dec.classes.size(); ++c)
        for (const auto& [u, v] : dec.coloring.classes[c])
            dec.classes[c].pairs.push_back({u, v, a.at(u, v)});
    return dec;
}

Graph sparsity_graph(const Matrix& a) {
    if (a.rows() != a.cols()) throw invalid_input("sparsity_graph: matrix must be square");
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a.at(i, j) != 0.0 || a.at(j, i) != 0.0) edges.emplace_back(i, j);
    return Graph(a.rows(), std::move(edges));
}

std::size_t padded_dimension(std::size_t dim) {
    std::size_t p = 2;
    while (p < dim) p <<= 1;
    return p;
}

Matrix padded_matrix(const Matrix& a) {
    const std::size_t p = padded_dimension(a.rows());
    Matrix out(p, p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = a.rows(); i < p; ++i) out.at(i, i) = 1.0;
    return out;
}

std::vector<CircuitOp> exp_matching(const MatchingClass& cls, double t, std::size_t register_qubits,
                                    CompileMode mode) {
    const std::uint64_t dim = std::uint64_t{1} << register_qubits;
    std::vector<std::uint64_t> seen;
    for (const auto& p : cls.pairs) {
        if (p.i >= dim || p.j >= dim) throw invalid_input("exp_matching: pair index outside register");
        if (p.i == p.j) throw invalid_input("exp_matching: degenerate pair");
        seen.push_back(p.i);
        seen.push_back(p.j);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw invalid_input("exp_matching: pairs are not a matching");

    std::vector<CircuitOp> ops;
    const auto reg = register_targets(register_qubits);
    for (const auto& p : cls.pairs) {
        const double th = p.w * t;
        if (mode == CompileMode::oracle) {
            // exp(-i*th*X) on the (i, j) two-level subspace
            const std::complex<double> c{std::cos(th), 0.0};
            const std::complex<double> s{0.0, -std::sin(th)};
            ops.push_back({Gate::two_level({c, s, s, c}, p.i, p.j), reg});
        } else {
            // Same rotation via mix * diag * mix: the mix is self-inverse and
            // diagonalizes X, so the product is exactly exp(-i*th*X).
            const double r = std::numbers::sqrt2 / 2.0;
            const std::array<std::complex<double>, 4> mix{{{r, 0.0}, {r, 0.0}, {r, 0.0}, {-r, 0.0}}};
            const std::array<std::complex<double>, 4> ph{
                {std::polar(1.0, -th), {0.0, 0.0}, {0.0, 0.0}, std::polar(1.0, th)}};
            ops.push_back({Gate::two_level(mix, p.i, p.j), reg});
            ops.push_back({Gate::two_level(ph, p.i, p.j), reg});
            ops.push_back({Gate::two_level(mix, p.i, p.j), reg});
        }
    }
    return ops;
}

std::vector<CircuitOp> exp_diagonal(const std::vector<double>& diagonal, double t,
                                    std::size_t register_qubits, CompileMode mode,
                                    std::size_t memory_begin, std::size_t memory_qubits) {
    const std::uint64_t dim = std::uint64_t{1} << register_qubits;
    if (diagonal.size() != dim) throw invalid_input("exp_diagonal: diagonal length must be 2^register_qubits");

    const auto reg = register_targets(register_qubits);
    std::vector<CircuitOp> ops;
    if (mode == CompileMode::oracle) {
        std::vector<std::complex<double>> ph(dim);
        for (std::uint64_t i = 0; i < dim; ++i) ph[i] = std::polar(1.0, -diagonal[i] * t);
        ops.push_back({Gate::diag(std::move(ph)), reg});
        return ops;
    }

    if (memory_qubits == 0) throw invalid_input("exp_diagonal: strict mode needs a memory register");
    if (memory_begin < register_qubits)
        throw invalid_input("exp_diagonal: memory register overlaps the data register");
    std::vector<std::uint64_t> values(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double r = std::nearbyint(diagonal[i]);
        if (r < 0.0 || std::abs(diagonal[i] - r) > 1e-9)
            throw invalid_input("exp_diagonal: strict mode requires nonnegative integer diagonal entries");
        values[i] = static_cast<std::uint64_t>(r);
        if (memory_qubits < 64 && (values[i] >> memory_qubits) != 0)
            throw invalid_input("exp_diagonal: diagonal entry does not fit the memory register");
    }

    // |a>|y| -> |a>|y xor d(a)>: for each basis index, X-conjugate the zero
    // bits so one all-ones control pattern writes d(a)'s bits into memory.
    std::vector<CircuitOp> compute;
    for (std::uint64_t a = 0; a < dim; ++a) {
        if (values[a] == 0) continue;
        std::vector<CircuitOp> wrap;
        for (std::size_t b = 0; b < register_qubits; ++b)
            if (((a >> b) & 1) == 0) wrap.push_back({Gate::x(), {b}});
        compute.insert(compute.end(), wrap.begin(), wrap.end());
        for (std::size_t b = 0; b < memory_qubits; ++b)
            if ((values[a] >> b) & 1)
                compute.push_back({Gate::controlled(Gate::x(), reg), {memory_begin + b}});
        compute.insert(compute.end(), wrap.begin(), wrap.end());
    }

    ops = compute;
    for (std::size_t b = 0; b < memory_qubits; ++b)
        ops.push_back({Gate::p(-std::ldexp(t, static_cast<int>(b))), {memory_begin + b}});
    // All compute ops are self-inverse, so the reversed sequence uncomputes.
    std::copy(compute.rbegin(), compute.rend(), std::back_inserter(ops));
    return ops;
}

std::vector<CircuitOp> trotter_step_ops(const TrotterPlan& plan, CompileMode mode) {
    if (plan.steps == 0) throw invalid_input("trotter_step_ops: empty plan");
    const double dt = plan.t / static_cast<double>(plan.steps);
    std::vector<CircuitOp> ops;
    for (const auto& term : plan.terms) {
        std::vector<CircuitOp> part =
            term.kind == TrotterTerm::Kind::diagonal
                ? exp_diagonal(term.diagonal, dt, plan.register_qubits, mode, plan.register_qubits,
                               plan.memory_qubits)
                : exp_matching(term.matching, dt, plan.register_qubits, mode);
        std::move(part.begin(), part.end(), std::back_inserter(ops));
    }
    return ops;
}

TrotterPlan trotter_plan(const Matrix& a, const Graph& g, double t, double epsilon,
                         CompileMode mode, std::size_t steps_override) {
    if (steps_override == 0 && epsilon <= 0.0) throw invalid_input("trotter: epsilon must be positive");
    const Decomposition dec = decompose(a, g);

    TrotterPlan plan;
    plan.t = t;
    plan.epsilon = epsilon;
    plan.dim = a.rows();
    plan.padded_dim = padded_dimension(plan.dim);
    plan.register_qubits = log2_exact(plan.padded_dim);
    plan.padded_a = padded_matrix(a);
    plan.spectrum = jacobi_eigen(plan.padded_a);

    std::vector<double> d = dec.diagonal;
    d.resize(plan.padded_dim, 1.0);

    double nu = 0.0;
    for (double v : d) nu = std::max(nu, std::abs(v));
    for (const auto& cls : dec.classes)
        for (const auto& p : cls.pairs) nu = std::max(nu, std::abs(p.w));
    plan.nu = nu;
    const double scale = nu * std::abs(t);
    plan.steps = steps_override != 0
                     ? steps_override
                     : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(scale * scale / epsilon)));

    TrotterTerm diag_term;
    diag_term.kind = TrotterTerm::Kind::diagonal;
    diag_term.diagonal = std::move(d);
    plan.terms.push_back(std::move(diag_term));
    for (const auto& cls : dec.classes) {
        TrotterTerm term;
        term.kind = TrotterTerm::Kind::matching;
        term.matching = cls;
        plan.terms.push_back(std::move(term));
    }

    if (mode == CompileMode::strict) {
        std::uint64_t maxd = 0;
        for (double v : plan.terms.front().diagonal) {
            const double r = std::nearbyint(v);
            if (r < 0.0 || std::abs(v - r) > 1e-9)
                throw invalid_input("trotter: strict mode requires nonnegative integer diagonal");
            maxd = std::max(maxd, static_cast<std::uint64_t>(r));
        }
        plan.memory_qubits = 1;
        while ((std::uint64_t{1} << plan.memory_qubits) <= maxd) ++plan.memory_qubits;
    }
    return plan;
}

std::pair<Circuit, TrotterPlan> trotter_circuit(const Matrix& a, const Graph& g, double t, double epsilon,
                                                CompileMode mode, std::size_t steps_override) {
    TrotterPlan plan = trotter_plan(a, g, t, epsilon, mode, steps_override);
    Circuit circ(plan.register_qubits + plan.memory_qubits);
    const auto step = trotter_step_ops(plan, mode);
    for (std::size_t s = 0; s < plan.steps; ++s)
        for (const auto& op : step) circ.push(op.gate, op.targets);
    return {std::move(circ), std::move(plan)};
}

std::vector<CircuitOp> orthogonal_to_two_level_ops(const Matrix& u,
                                                   const std::vector<std::size_t>& register_qubits) {
    const std::size_t d = u.rows();
    if (u.cols() != d) throw invalid_input("two_level decomposition: matrix must be square");
    if ((std::size_t{1} << register_qubits.size()) != d)
        throw invalid_input("two_level decomposition: register does not match dimension");
    {
        const Matrix gram = mat_mul(transpose(u), u);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (std::abs(gram.at(i, j) - (i == j ? 1.0 : 0.0)) > 1e-8)
                    throw invalid_input("two_level decomposition: matrix is not orthogonal");
    }

    // Givens elimination below the diagonal: G_K ... G_1 u = diag(+-1), so
    // u = G_1^T ... G_K^T D and the circuit applies D first, transposes after.
    struct Rot {
        double c, s;
        std::uint64_t lo, hi;
    };
    Matrix w = u;
    std::vector<Rot> rots;
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t row = col + 1; row < d; ++row) {
            const double b = w.at(row, col);
            if (std::abs(b) < 1e-14) continue;
            const double a = w.at(col, col);
            const double r = std::hypot(a, b);
            const double c = a / r, s = b / r;
            for (std::size_t j = col; j < d; ++j) {
                const double wc = w.at(col, j), wr = w.at(row, j);
                w.at(col, j) = c * wc + s * wr;
                w.at(row, j) = -s * wc + c * wr;
            }
            rots.push_back({c, s, col, row});
        }
    }
    bool has_sign = false;
    std::vector<std::complex<double>> signs(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double v = w.at(i, i);
        if (std::abs(std::abs(v) - 1.0) > 1e-8)
            throw numerical_failure("two_level decomposition: elimination did not reach +-1 diagonal");
        signs[i] = v >= 0.0 ? 1.0 : -1.0;
        if (v < 0.0) has_sign = true;
    }

    std::vector<CircuitOp> ops;
    if (has_sign) ops.push_back({Gate::diag(std::move(signs)), register_qubits});
    for (auto it = rots.rbegin(); it != rots.rend(); ++it) {
        const std::array<std::complex<double>, 4> block{
            {{it->c, 0.0}, {-it->s, 0.0}, {it->s, 0.0}, {it->c, 0.0}}};
        ops.push_back({Gate::two_level(block, it->lo, it->hi), register_qubits});
    }
    return ops;
}

Circuit controlled_power(const TrotterPlan& plan, std::size_t k, std::size_t control,
                         CompileMode mode, std::size_t total_qubits) {
    const std::size_t q = plan.register_qubits;
    const std::size_t data_top = q + (mode == CompileMode::strict ? plan.memory_qubits : 0);
    if (control >= total_qubits) throw invalid_input("controlled_power: control outside circuit");
    if (control < data_top) throw invalid_input("controlled_power: control collides with data registers");
    if (total_qubits < data_top + 1) throw invalid_input("controlled_power: circuit too narrow");

    Circuit circ(total_qubits);
    if (mode == CompileMode::strict) {
        const auto step = trotter_step_ops(plan, mode);
        const std::uint64_t reps = std::uint64_t{1} << k;
        for (std::uint64_t rep = 0; rep < reps; ++rep)
            for (std::size_t s = 0; s < plan.steps; ++s)
                for (const auto& op : step) circ.push(Gate::controlled(op.gate, {control}), op.targets);
        return circ;
    }

    // Exact power through the spectrum: controls telescope past the
    // uncontrolled basis change because C-(E D E^T) = E (C-D) E^T.
    const auto reg = register_targets(q);
    for (const auto& op : orthogonal_to_two_level_ops(transpose(plan.spectrum.vectors), reg))
        circ.push(op.gate, op.targets);
    std::vector<std::complex<double>> ph(plan.padded_dim);
    const double scale = plan.t * std::ldexp(1.0, static_cast<int>(k));
    for (std::size_t j = 0; j < plan.padded_dim; ++j)
        ph[j] = std::polar(1.0, -plan.spectrum.values[j] * scale);
    circ.push(Gate::controlled(Gate::diag(std::move(ph)), {control}), reg);
    for (const auto& op : orthogonal_to_two_level_ops(plan.spectrum.vectors, reg))
        circ.push(op.gate, op.targets);
    return circ;
}

} // namespace qtutte
