#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qtutte/geometry.hpp"
#include "qtutte/graph.hpp"
#include "qtutte/matrix.hpp"

namespace qtutte {

/// How boundary vertices enter the linear system.
///
/// HARD_PIN removes pinned vertices from the unknowns: each free vertex u
/// keeps its full degree on the diagonal and the right-hand side collects the
/// pinned neighbor coordinates, so free vertices land exactly at the
/// barycenter of their neighbors.
///
/// SOFT_GROUND keeps every vertex as an unknown and instead adds 1 to the
/// diagonal of vertices 0, 1, 2 (the dummy outer triangle): the system matrix
/// is the grounded Laplacian L + diag(1,1,1,0,...,0), which is positive
/// definite whenever the graph is connected.
enum class PinMode { hard_pin, soft_ground };

struct Pin {
    std::size_t vertex = 0;
    double x = 0.0;
    double y = 0.0;
};

/// The standard dummy triangle: vertices 0,1,2 at (0,0), (0,1), (1,0) in that
/// index order (clockwise starting from the bottom-left corner). With this
/// indexing the soft-ground right-hand side is always e_2 for x and e_1 for y.
inline constexpr std::array<Pin, 3> kDummyTrianglePins{Pin{0, 0.0, 0.0}, Pin{1, 0.0, 1.0}, Pin{2, 1.0, 0.0}};

struct PinSpec {
    std::vector<Pin> pinned;
    PinMode mode = PinMode::hard_pin;

    static PinSpec soft_ground();
    static PinSpec hard(std::vector<Pin> pins);

    /// Throws invalid_input on duplicate/out-of-range vertices, and for
    /// soft-ground mode when the pins are not exactly the dummy triangle.
    void validate(std::size_t vertex_count) const;
};

/// One linear system per axis: a x = b_x and a y = b_y share the matrix.
struct TutteSystem {
    Matrix a;
    std::vector<double> b_x;
    std::vector<double> b_y;
    std::size_t dim = 0;
    std::vector<std::size_t> free_index_map; // system row -> vertex index
    PinMode mode = PinMode::hard_pin;
};

enum class SolutionSource { classical, quantum };

struct EmbeddingMetrics {
    std::optional<double> fidelity;            // quantum solves only
    std::optional<double> barycenter_residual;
    std::optional<std::size_t> crossings;
};

struct Embedding {
    std::vector<Vec2> coords; // one entry per vertex of the drawn graph
    SolutionSource source = SolutionSource::classical;
    EmbeddingMetrics metrics;
};

/// Combinatorial Laplacian L = D - M.
Matrix laplacian(const Graph& g);

struct DummyFaceResult {
    Graph graph;                        // n + 3 vertices; dummies at 0, 1, 2
    std::vector<std::size_t> index_map; // original vertex -> augmented index (v -> v + 3)
};

/// Prepends a dummy outer triangle: new vertices 0,1,2 form a triangle and
/// dummy i gains one edge to outer[i] (shifted by 3). All original indices
/// move up by 3.
DummyFaceResult add_dummy_outer_face(const Graph& g, const std::array<std::size_t, 3>& outer);

/// Assembles the per-axis linear system for the given pin mode. The graph
/// must be connected and, for hard pins, at least one vertex must stay free.
TutteSystem build_system(const Graph& g, const PinSpec& pins);

} // namespace qtutte
