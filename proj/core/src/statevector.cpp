#include "qtutte/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

constexpr std::size_t kMaxQubits = 28; // 2 GiB of amplitudes; far above anything this project runs

std::uint64_t bit_of(std::size_t qubit) { return std::uint64_t{1} << qubit; }

std::uint64_t gather_bits(std::uint64_t index, const std::vector<std::size_t>& targets) {
    std::uint64_t sub = 0;
    for (std::size_t b = 0; b < targets.size(); ++b) sub |= ((index >> targets[b]) & 1u) << b;
    return sub;
}

std::uint64_t scatter_bits(std::uint64_t sub, const std::vector<std::size_t>& targets) {
    std::uint64_t index = 0;
    for (std::size_t b = 0; b < targets.size(); ++b) index |= ((sub >> b) & 1u) << targets[b];
    return index;
}

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

} // namespace

StateVector::StateVector(std::size_t qubits) : qubits_(qubits) {
    if (qubits > kMaxQubits) throw invalid_input("statevector: too many qubits");
    amps_.assign(std::uint64_t{1} << qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

StateVector StateVector::basis(std::size_t qubits, std::uint64_t index) {
    StateVector s(qubits);
    if (index >= s.dimension()) throw invalid_input("statevector: basis index out of range");
    s.amps_[0] = {0.0, 0.0};
    s.amps_[index] = {1.0, 0.0};
    return s;
}

StateVector StateVector::from_amplitudes(std::size_t qubits, std::vector<std::complex<double>> amps) {
    StateVector s(qubits);
    if (amps.size() != s.dimension()) throw invalid_input("statevector: amplitude count mismatch");
    double n2 = 0.0;
    for (const auto& a : amps) n2 += std::norm(a);
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > 1e-8) throw invalid_input("statevector: amplitudes are not unit norm");
    for (auto& a : amps) a /= n;
    s.amps_ = std::move(amps);
    return s;
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

StateVector StateVector::extended(std::size_t extra) const {
    StateVector s(qubits_ + extra);
    s.amps_.assign(s.dimension(), {0.0, 0.0});
    std::copy(amps_.begin(), amps_.end(), s.amps_.begin());
    return s;
}

Gate Gate::identity() { return Gate{}; }
Gate Gate::x() {
    Gate g;
    g.kind = GateKind::pauli_x;
    return g;
}
Gate Gate::z() {
    Gate g;
    g.kind = GateKind::pauli_z;
    return g;
}
Gate Gate::h() {
    Gate g;
    g.kind = GateKind::hadamard;
    return g;
}
Gate Gate::p(double theta) {
    Gate g;
    g.kind = GateKind::phase;
    g.theta = theta;
    return g;
}
Gate Gate::cx() {
    Gate g;
    g.kind = GateKind::cnot;
    return g;
}
Gate Gate::toffoli() {
    Gate g;
    g.kind = GateKind::toffoli;
    return g;
}

Gate Gate::diag(std::vector<std::complex<double>> phases) {
    if (!is_power_of_two(phases.size()) || phases.size() < 2)
        throw invalid_input("diag gate: phase count must be a power of two, at least 2");
    for (const auto& p : phases)
        if (std::abs(std::abs(p) - 1.0) > 1e-10) throw invalid_input("diag gate: entries must have unit modulus");
    Gate g;
    g.kind = GateKind::diag;
    g.phases = std::move(phases);
    return g;
}

Gate Gate::two_level(const std::array<std::complex<double>, 4>& block, std::uint64_t i, std::uint64_t j) {
    if (i == j) throw invalid_input("two_level gate: basis indices must differ");
    // unitarity of the 2x2 block
    const auto& u = block;
    const std::complex<double> c00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
    const std::complex<double> c01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    const std::complex<double> c11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
    if (std::abs(c00 - 1.0) > 1e-10 || std::abs(c11 - 1.0) > 1e-10 || std::abs(c01) > 1e-10)
        throw invalid_input("two_level gate: block is not unitary");
    Gate g;
    g.kind = GateKind::two_level;
    g.block = block;
    g.level_i = i;
    g.level_j = j;
    return g;
}

Gate Gate::controlled(Gate inner_gate, std::vector<std::size_t> control_qubits) {
    if (control_qubits.empty()) throw invalid_input("controlled gate: no control qubits");
    Gate g;
    g.kind = GateKind::controlled;
    g.controls = std::move(control_qubits);
    g.inner = std::make_shared<const Gate>(std::move(inner_gate));
    return g;
}

std::size_t Gate::arity() const {
    switch (kind) {
        case GateKind::identity:
        case GateKind::pauli_x:
        case GateKind::pauli_z:
        case GateKind::hadamard:
        case GateKind::phase: return 1;
        case GateKind::cnot: return 2;
        case GateKind::toffoli: return 3;
        case GateKind::diag: {
            std::size_t k = 0;
            while ((std::size_t{1} << k) < phases.size()) ++k;
            return k;
        }
        case GateKind::two_level: {
            std::size_t k = 1;
            while ((std::uint64_t{1} << k) <= std::max(level_i, level_j)) ++k;
            return k;
        }
        case GateKind::controlled: return inner->arity();
    }
    return 0;
}

void Circuit::push(Gate g, std::vector<std::size_t> targets) { ops.push_back({std::move(g), std::move(targets)}); }

void Circuit::append(const Circuit& other) {
    if (other.qubits != qubits) throw invalid_input("circuit append: register widths differ");
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

namespace {

struct ResolvedOp {
    GateKind kind;
    const Gate* gate;                 // gate carrying parameters (post-resolution)
    std::vector<std::size_t> targets; // final targets after CX/Toffoli conversion
    std::uint64_t control_mask = 0;
};

// Peels controlled wrappers and rewrites CX/Toffoli into masked X so that a
// single set of kernels serves every kind.
ResolvedOp resolve(const StateVector& state, const Gate& g, const std::vector<std::size_t>& targets) {
    const std::size_t q = state.qubit_count();
    std::uint64_t seen = 0;
    for (std::size_t t : targets) {
        if (t >= q) throw invalid_input("apply: target qubit out of range");
        if (seen & bit_of(t)) throw invalid_input("apply: duplicate target qubit");
        seen |= bit_of(t);
    }

    ResolvedOp op;
    op.gate = &g;
    op.targets = targets;
    while (op.gate->kind == GateKind::controlled) {
        for (std::size_t c : op.gate->controls) {
            if (c >= q) throw invalid_input("apply: control qubit out of range");
            if (seen & bit_of(c)) throw invalid_input("apply: control collides with target");
            op.control_mask |= bit_of(c);
        }
        op.gate = op.gate->inner.get();
    }
    seen |= op.control_mask;

    if (op.targets.size() != op.gate->arity() && op.gate->kind != GateKind::two_level)
        throw invalid_input("apply: gate arity does not match target count");

    op.kind = op.gate->kind;
    if (op.kind == GateKind::cnot) {
        op.control_mask |= bit_of(op.targets[0]);
        op.targets = {op.targets[1]};
        op.kind = GateKind::pauli_x;
    } else if (op.kind == GateKind::toffoli) {
        op.control_mask |= bit_of(op.targets[0]) | bit_of(op.targets[1]);
        op.targets = {op.targets[2]};
        op.kind = GateKind::pauli_x;
    } else if (op.kind == GateKind::two_level) {
        if (op.targets.empty()) throw invalid_input("apply: two_level gate needs at least one target");
        const std::uint64_t sub_dim = std::uint64_t{1} << op.targets.size();
        if (op.gate->level_i >= sub_dim || op.gate->level_j >= sub_dim)
            throw invalid_input("apply: two_level basis index outside target subspace");
    }
    return op;
}

template <typename PairFn>
void for_each_pair(std::vector<std::complex<double>>& amps, std::size_t target, std::uint64_t cmask, PairFn&& fn) {
    const std::uint64_t bit = bit_of(target);
    const std::uint64_t lo = bit - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = amps.size() >> 1;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = ((k & hi) << 1) | (k & lo);
        if ((i0 & cmask) != cmask) continue;
        fn(amps[i0], amps[i0 | bit]);
    }
}

} // namespace

void apply_in_place(StateVector& state, const Gate& g, const std::vector<std::size_t>& targets) {
    const ResolvedOp op = resolve(state, g, targets);
    auto& amps = state.amplitudes();
    const std::uint64_t dim = state.dimension();
    const std::uint64_t cmask = op.control_mask;

    switch (op.kind) {
        case GateKind::identity: break;
        case GateKind::pauli_x:
            for_each_pair(amps, op.targets[0], cmask, [](auto& a0, auto& a1) { std::swap(a0, a1); });
            break;
        case GateKind::pauli_z: {
            const std::uint64_t bit = bit_of(op.targets[0]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & bit) && (i & cmask) == cmask) amps[i] = -amps[i];
            break;
        }
        case GateKind::hadamard: {
            const double r = std::numbers::sqrt2 / 2.0;
            for_each_pair(amps, op.targets[0], cmask, [r](auto& a0, auto& a1) {
                const auto t0 = a0, t1 = a1;
                a0 = r * (t0 + t1);
                a1 = r * (t0 - t1);
            });
            break;
        }
        case GateKind::phase: {
            const std::complex<double> w = std::polar(1.0, op.gate->theta);
            const std::uint64_t bit = bit_of(op.targets[0]);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & bit) && (i & cmask) == cmask) amps[i] *= w;
            break;
        }
        case GateKind::diag: {
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & cmask) == cmask) amps[i] *= op.gate->phases[gather_bits(i, op.targets)];
            break;
        }
        case GateKind::two_level: {
            std::uint64_t tmask = 0;
            for (std::size_t t : op.targets) tmask |= bit_of(t);
            const std::uint64_t pi = scatter_bits(op.gate->level_i, op.targets);
            const std::uint64_t pj = scatter_bits(op.gate->level_j, op.targets);
            const auto& u = op.gate->block;
            for (std::uint64_t m = 0; m < dim; ++m) {
                if ((m & tmask) != 0 || (m & cmask) != cmask) continue;
                auto& ai = amps[m | pi];
                auto& aj = amps[m | pj];
                const auto ti = ai, tj = aj;
                ai = u[0] * ti + u[1] * tj;
                aj = u[2] * ti + u[3] * tj;
            }
            break;
        }
        case GateKind::cnot:
        case GateKind::toffoli:
        case GateKind::controlled: break; // rewritten by resolve()
    }
}

StateVector apply(const StateVector& state, const Gate& g, const std::vector<std::size_t>& targets) {
    StateVector out = state;
    apply_in_place(out, g, targets);
    return out;
}

StateVector run(const Circuit& c, const StateVector& initial) {
    if (c.qubits != initial.qubit_count()) throw invalid_input("run: circuit and state width differ");
    StateVector s = initial;
    for (const CircuitOp& op : c.ops) apply_in_place(s, op.gate, op.targets);
    return s;
}

Gate adjoint(const Gate& g) {
    switch (g.kind) {
        case GateKind::identity:
        case GateKind::pauli_x:
        case GateKind::pauli_z:
        case GateKind::hadamard:
        case GateKind::cnot:
        case GateKind::toffoli: return g; // self-adjoint
        case GateKind::phase: return Gate::p(-g.theta);
        case GateKind::diag: {
            std::vector<std::complex<double>> conj_phases(g.phases.size());
            for (std::size_t i = 0; i < g.phases.size(); ++i) conj_phases[i] = std::conj(g.phases[i]);
            return Gate::diag(std::move(conj_phases));
        }
        case GateKind::two_level: {
            const auto& u = g.block;
            return Gate::two_level({std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])},
                                   g.level_i, g.level_j);
        }
        case GateKind::controlled: return Gate::controlled(adjoint(*g.inner), g.controls);
    }
    return g;
}

Circuit adjoint(const Circuit& c) {
    Circuit out(c.qubits);
    out.ops.reserve(c.ops.size());
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) out.push(adjoint(it->gate), it->targets);
    return out;
}

double branch_probability(const StateVector& state, std::size_t qubit, int bit) {
    if (qubit >= state.qubit_count()) throw invalid_input("branch_probability: qubit out of range");
    if (bit != 0 && bit != 1) throw invalid_input("branch_probability: bit must be 0 or 1");
    const std::uint64_t mask = bit_of(qubit);
    double p = 0.0;
    const auto& amps = state.amplitudes();
    for (std::uint64_t i = 0; i < state.dimension(); ++i)
        if (((i & mask) != 0) == (bit == 1)) p += std::norm(amps[i]);
    return p;
}

StateVector project(const StateVector& state, std::size_t qubit, int bit) {
    const double p = branch_probability(state, qubit, bit);
    if (p < 1e-200) throw invalid_input("project: branch has zero probability");
    StateVector out = state;
    auto& amps = out.amplitudes();
    const std::uint64_t mask = bit_of(qubit);
    const double scale = 1.0 / std::sqrt(p);
    for (std::uint64_t i = 0; i < out.dimension(); ++i) {
        if (((i & mask) != 0) == (bit == 1))
            amps[i] *= scale;
        else
            amps[i] = {0.0, 0.0};
    }
    return out;
}

MeasureResult measure_qubit(const StateVector& state, std::size_t qubit, Rng& rng) {
    const double p1 = branch_probability(state, qubit, 1);
    int outcome;
    if (p1 <= 1e-200)
        outcome = 0; // a zero-probability branch is never drawn
    else if (p1 >= 1.0 - 1e-200)
        outcome = 1;
    else
        outcome = rng.next_double() < p1 ? 1 : 0;
    return {outcome, project(state, qubit, outcome)};
}

} // namespace qtutte
