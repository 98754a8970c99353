#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qtutte/graph.hpp"
#include "qtutte/matrix.hpp"
#include "qtutte/statevector.hpp"

namespace qtutte {

/// Circuit realization flavor used by the Hamiltonian and HHL compilers.
/// oracle: compact exact gates (DIAG exponentials, exact eigenphase powers).
/// strict: the paper-shaped construction (register-arithmetic diagonal
/// phases, conjugated matching rotations, repeated controlled powers).
enum class CompileMode { oracle, strict };

struct EdgeColoring {
    std::vector<std::size_t> color_of;              // parallel to g.edges()
    std::vector<std::vector<Graph::Edge>> classes;  // classes[c] is a matching
};

/// Greedy proper edge coloring in lexicographic edge order: each edge takes
/// the smallest color unused at both endpoints. Uses at most 2*maxdeg - 1
/// colors; every class is a matching.
EdgeColoring greedy_edge_coloring(const Graph& g);

struct WeightedPair {
    std::uint64_t i = 0, j = 0; // matrix row indices (basis states)
    double w = 0.0;
};

struct MatchingClass {
    std::vector<WeightedPair> pairs;
};

struct TrotterTerm {
    enum class Kind { diagonal, matching };
    Kind kind = Kind::diagonal;
    std::vector<double> diagonal; // padded to 2^register_qubits
    MatchingClass matching;
};

/// Splitting a = D + sum_c M_c of a symmetric matrix whose off-diagonal
/// pattern matches the adjacency of g.
struct Decomposition {
    std::vector<double> diagonal;        // length = a.rows()
    EdgeColoring coloring;
    std::vector<MatchingClass> classes;  // weights pulled from a
};

/// Throws invalid_input when the sparsity pattern of a is not exactly the
/// adjacency of g (missing entry on an edge, or a stray nonzero off an edge).
Decomposition decompose(const Matrix& a, const Graph& g);

/// The graph whose edges are the nonzero off-diagonal entries of a.
Graph sparsity_graph(const Matrix& a);

struct TrotterPlan {
    double t = 0.0;
    double epsilon = 0.0;
    std::size_t steps = 0;          // m = ceil((nu * |t|)^2 / epsilon), at least 1
    double nu = 0.0;                // max term spectral norm
    std::size_t dim = 0;            // original dimension
    std::size_t padded_dim = 0;     // next power of two, minimum 2
    std::size_t register_qubits = 0;
    std::size_t memory_qubits = 0;  // strict diagonal recipe scratch width
    std::vector<TrotterTerm> terms; // diagonal first, then colors ascending
    Matrix padded_a;                // a extended with unit diagonal rows
    SymmetricEigen spectrum;        // of padded_a; exact powers read from here
};

std::size_t padded_dimension(std::size_t dim);

/// Extends a with decoupled rows of diagonal value 1 up to the next power of two.
Matrix padded_matrix(const Matrix& a);

/// Exact exponential exp(-i * t * M_c) of a matching term, emitted as
/// two-level gates over the register. Strict mode conjugates a two-level
/// diagonal phase by the two-level Hadamard instead of emitting the rotation
/// block directly; both are exact.
std::vector<CircuitOp> exp_matching(const MatchingClass& cls, double t, std::size_t register_qubits,
                                    CompileMode mode);

/// Exact exponential exp(-i * t * D). Oracle mode is a single DIAG gate.
/// Strict mode requires integer diagonal values: they are computed into a
/// memory register with multi-controlled bit flips, phased bitwise with
/// P(-2^b * t), and uncomputed. The strict recipe assumes the memory register
/// starts in |0> (it reads y xor d(a) otherwise); that zeroed block is
/// invariant, so chained ops stay correct on it.
std::vector<CircuitOp> exp_diagonal(const std::vector<double>& diagonal, double t,
                                    std::size_t register_qubits, CompileMode mode,
                                    std::size_t memory_begin = 0, std::size_t memory_qubits = 0);

/// Splits, pads, calibrates the step count and caches the spectrum without
/// emitting any gates. Pass steps_override to study convergence at a chosen m.
TrotterPlan trotter_plan(const Matrix& a, const Graph& g, double t, double epsilon,
                         CompileMode mode = CompileMode::oracle, std::size_t steps_override = 0);

/// One full Trotter product circuit for exp(-i * a * t) plus the plan that
/// produced it.
std::pair<Circuit, TrotterPlan> trotter_circuit(const Matrix& a, const Graph& g, double t, double epsilon,
                                                CompileMode mode = CompileMode::oracle,
                                                std::size_t steps_override = 0);

/// The single-step gate sequence realized by the plan (solution register low,
/// memory scratch directly above it in strict mode).
std::vector<CircuitOp> trotter_step_ops(const TrotterPlan& plan, CompileMode mode);

/// Controlled U^(2^k) for U = the plan's full Trotter circuit. Strict mode
/// repeats every gate 2^k times under the control; oracle mode applies the
/// exact eigendecomposed power (uncontrolled eigenbasis change, controlled
/// DIAG of exact eigenphases). total_qubits sizes the emitted circuit.
Circuit controlled_power(const TrotterPlan& plan, std::size_t k, std::size_t control,
                         CompileMode mode, std::size_t total_qubits);

/// Two-level-gate realization of a real orthogonal matrix u (dim 2^q) acting
/// on the given register qubits; ops applied in order implement u exactly.
std::vector<CircuitOp> orthogonal_to_two_level_ops(const Matrix& u, const std::vector<std::size_t>& register_qubits);

} // namespace qtutte
