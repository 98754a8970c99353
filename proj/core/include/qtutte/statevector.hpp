#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "qtutte/rng.hpp"

namespace qtutte {

/// Dense state-vector register.
///
/// Convention used across the project: qubit k is the k-th least significant
/// bit of the amplitude index, so amplitudes[5] with three qubits is the
/// basis state |101> = qubit0=1, qubit1=0, qubit2=1.
class StateVector {
public:
    explicit StateVector(std::size_t qubits);
    static StateVector basis(std::size_t qubits, std::uint64_t index);
    /// Amplitudes must already be unit norm within 1e-8; they are snapped to
    /// exact unit norm on construction.
    static StateVector from_amplitudes(std::size_t qubits, std::vector<std::complex<double>> amps);

    std::size_t qubit_count() const { return qubits_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }
    double norm() const;

    /// Same state with `extra` fresh qubits in |0> appended above the
    /// existing ones (amplitudes land in the low block).
    StateVector extended(std::size_t extra) const;

private:
    std::size_t qubits_ = 0;
    std::vector<std::complex<double>> amps_;
};

/// Gate vocabulary. The first seven kinds mirror the usual textbook table
/// (I, X, Z, H, P(theta), CX, Toffoli). The remaining three are compiler
/// plumbing for this project's circuit back end:
///   diag      - diagonal unitary over k target qubits, 2^k unit phases
///   two_level - identity except on two basis states of the target subspace
///   controlled- any inner gate gated on extra control qubits being |1>
enum class GateKind : std::uint8_t {
    identity,
    pauli_x,
    pauli_z,
    hadamard,
    phase,
    cnot,
    toffoli,
    diag,
    two_level,
    controlled,
};

class Gate {
public:
    GateKind kind = GateKind::identity;
    double theta = 0.0;                             // phase
    std::vector<std::complex<double>> phases;       // diag
    std::array<std::complex<double>, 4> block{};    // two_level, row-major 2x2
    std::uint64_t level_i = 0, level_j = 0;         // two_level basis indices
    std::vector<std::size_t> controls;              // controlled
    std::shared_ptr<const Gate> inner;              // controlled

    static Gate identity();
    static Gate x();
    static Gate z();
    static Gate h();
    static Gate p(double theta);
    static Gate cx();
    static Gate toffoli();
    static Gate diag(std::vector<std::complex<double>> phases);
    static Gate two_level(const std::array<std::complex<double>, 4>& block, std::uint64_t i, std::uint64_t j);
    static Gate controlled(Gate inner_gate, std::vector<std::size_t> control_qubits);

    /// Number of target qubits this gate consumes when applied.
    /// two_level is flexible; this returns the minimum register width.
    std::size_t arity() const;
};

struct CircuitOp {
    Gate gate;
    std::vector<std::size_t> targets;
};

struct Circuit {
    std::size_t qubits = 0;
    std::vector<CircuitOp> ops;

    Circuit() = default;
    explicit Circuit(std::size_t q) : qubits(q) {}
    void push(Gate g, std::vector<std::size_t> targets);
    void append(const Circuit& other);
    std::size_t size() const { return ops.size(); }
};

/// Applies one gate. Throws invalid_input on arity mismatch, duplicate or
/// out-of-range targets, or controls colliding with targets.
StateVector apply(const StateVector& state, const Gate& g, const std::vector<std::size_t>& targets);

/// In-place variant used by run(); same validation.
void apply_in_place(StateVector& state, const Gate& g, const std::vector<std::size_t>& targets);

/// Runs the circuit left to right on a copy of the initial state.
StateVector run(const Circuit& c, const StateVector& initial);

Gate adjoint(const Gate& g);
Circuit adjoint(const Circuit& c);

double branch_probability(const StateVector& state, std::size_t qubit, int bit);

/// Collapses the qubit to the given branch and renormalizes.
/// Throws invalid_input when the branch has (numerically) zero probability.
StateVector project(const StateVector& state, std::size_t qubit, int bit);

struct MeasureResult {
    int bit = 0;
    StateVector state;
};

/// Samples one measurement outcome from the seeded stream, then projects.
MeasureResult measure_qubit(const StateVector& state, std::size_t qubit, Rng& rng);

} // namespace qtutte
