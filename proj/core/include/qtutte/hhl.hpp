#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtutte/hamiltonian.hpp"
#include "qtutte/matrix.hpp"
#include "qtutte/rng.hpp"
#include "qtutte/statevector.hpp"
#include "qtutte/tutte.hpp"

namespace qtutte {

enum class Axis { x, y };

/// How the rotation constant c is picked when not overridden.
/// classical_lambda_min reads 0.99 * lambda_min off the classical spectrum
/// (verification runs, where peeking is the point). representable_floor uses
/// 2*pi / (t * 2^r), the smallest nonzero phase the clock register can hold,
/// which needs no spectral knowledge at all.
enum class RotationPolicy { classical_lambda_min, representable_floor };

struct HhlConfig {
    std::size_t clock_qubits = 8; // r
    std::optional<double> evolution_time;    // overrides the calibrated t
    std::optional<double> rotation_constant; // overrides the policy's c
    RotationPolicy rotation_policy = RotationPolicy::classical_lambda_min;
    double epsilon = 1e-2;        // Trotter budget, consumed in strict mode
    CompileMode mode = CompileMode::oracle;
    std::size_t max_attempts = 0; // 0: deterministic post-selection
    std::uint64_t seed = 0;       // sampling streams only
};

/// JSON object with keys r, t_override, c_override, epsilon,
/// mode ("oracle" | "strict"), seed, and optionally max_attempts and
/// rotation_policy ("lambda_min" | "floor"). Every key is optional; unknown
/// keys are rejected so typos fail loudly.
HhlConfig parse_hhl_config(const std::string& text);
HhlConfig load_hhl_config(const std::string& path);

/// Qubit map of the assembled solver circuit, low to high: solution register,
/// strict-mode memory scratch, clock register, one rotation ancilla on top.
struct RegisterLayout {
    std::size_t solution_qubits = 0;
    std::size_t memory_qubits = 0;
    std::size_t clock_qubits = 0;
    std::size_t memory_begin = 0;
    std::size_t clock_begin = 0;
    std::size_t ancilla = 0;
    std::size_t total = 0;
};

struct PreparedInput {
    StateVector state; // solution_qubits wide, unit norm
    double norm = 0.0; // |b|_2 before normalization
};

/// Loads b into the low block of a fresh register. Throws invalid_input when
/// b is all zeros or longer than the register.
PreparedInput prepare_b(const std::vector<double>& b, std::size_t solution_qubits);

/// QFT over the listed qubits; qubits[k] carries bit k (LSB first).
Circuit qft_circuit(std::size_t total_qubits, const std::vector<std::size_t>& qubits);
Circuit inverse_qft_circuit(std::size_t total_qubits, const std::vector<std::size_t>& qubits);

/// Appends one controlled-U^(2^k) gated on the given control qubit.
using ControlledPowerFn = std::function<void(Circuit&, std::size_t k, std::size_t control)>;

/// Hadamard ladder, the controlled power ladder, then the inverse QFT, all
/// appended in place. Clock value k afterwards encodes phase 2*pi*k / 2^r.
void append_phase_estimation(Circuit& c, std::size_t clock_begin, std::size_t clock_qubits,
                             const ControlledPowerFn& powers);

/// Convenience wrapper: runs phase estimation with the clock attached above
/// b_state and returns the joint state (clock still attached).
StateVector phase_estimation(const StateVector& b_state, std::size_t clock_qubits,
                             const ControlledPowerFn& powers);

struct RotationOps {
    Circuit circuit;
    std::vector<double> lambda_tilde; // per clock value; entry 0 stays 0
    std::vector<bool> clamped;        // c / lambda_tilde clamped to 1
};

/// The conditional-rotation block: for every nonzero clock value k the
/// ancilla takes amplitude c / lambda_tilde(k) on |1>, where
/// lambda_tilde(k) = 2*pi*k / (2^r * t). Clock value 0 is left alone.
RotationOps conditional_rotation_ops(std::size_t total_qubits, std::size_t clock_begin,
                                     std::size_t clock_qubits, std::size_t ancilla,
                                     double rotation_constant, double evolution_time);

struct HhlResult {
    std::vector<double> solution;        // rescaled to solve a x = b
    double success_probability = 0.0;    // P(ancilla = 1) before post-selection
    double fidelity_vs_classical = 0.0;  // |<x_hhl, x_classical>| / norms
    double relative_l2_error = 0.0;      // |x_hhl - x_classical| / |x_classical|
    double residual = 0.0;               // |a x_hhl - b| / |b|
    double norm_estimate = 0.0;          // sqrt(P(1)) / c, the |A^-1 b_hat| estimate
    double clock_zero_probability = 0.0; // post-selected mass left with clock = 0
    double imaginary_mass = 0.0;         // off-real fraction of the solution block
    double evolution_time = 0.0;         // resolved t
    double rotation_constant = 0.0;      // resolved c
    std::size_t trotter_steps = 0;       // strict mode only
    std::size_t attempts = 0;            // sampling mode: measurements consumed
    bool clamped_populated = false;      // a populated clock value hit the clamp
    bool degraded = false;               // any warning that taints the estimate
    std::vector<std::string> warnings;
    RegisterLayout layout;
};

/// End-to-end solve of sys.a x = b(axis) on the simulated circuit:
/// state preparation, phase estimation, conditional rotation, uncomputation,
/// post-selection, readout, rescaling. Deterministic unless
/// cfg.max_attempts > 0, in which case the ancilla is sampled with cfg.seed.
/// Throws numerical_failure when the system is not positive definite, the
/// success probability vanishes, or sampling exhausts max_attempts.
HhlResult solve_hhl(const TutteSystem& sys, Axis axis, const HhlConfig& cfg);

struct ExtractedSolution {
    std::vector<double> values;  // unit direction, sign aligned
    double block_norm = 0.0;     // norm of the raw amplitude block
    double imaginary_mass = 0.0; // fraction of block mass off the real axis
};

/// Reads dim amplitudes starting at block_offset, strips the global phase and
/// flips the overall sign so the entry at b's first nonzero index is
/// positive. Throws numerical_failure when the block is numerically empty or
/// the aligning entry vanishes.
ExtractedSolution extract_solution(const StateVector& state, std::size_t dim, std::uint64_t block_offset,
                                   const std::vector<double>& b);

/// Exact expectation <psi| m |psi> against a symmetric observable whose
/// dimension is at most the state's.
double measure_expectation(const StateVector& state, const Matrix& m);

struct SampledExpectation {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Shot-sampled estimate in the observable's eigenbasis; m must span the
/// whole register. std_error is the usual sample-standard-deviation / sqrt(shots).
SampledExpectation measure_expectation_sampled(const StateVector& state, const Matrix& m,
                                               std::size_t shots, Rng& rng);

/// max_i (a_ii + sum_{j != i} |a_ij|), an upper bound for the spectrum of a
/// symmetric positive definite matrix.
double gershgorin_bound(const Matrix& a);

/// t = 2*pi*(2^r - 1) / (2^r * lambda_hat_max): the largest clock bin lands
/// exactly on the spectral bound, so no phase can wrap around.
double calibrated_time(double lambda_hat_max, std::size_t clock_qubits);

} // namespace qtutte
