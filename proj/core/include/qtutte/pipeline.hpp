#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtutte/generators.hpp"
#include "qtutte/graph.hpp"
#include "qtutte/hhl.hpp"
#include "qtutte/matrix.hpp"
#include "qtutte/tutte.hpp"

namespace qtutte {

enum class Backend { classical, quantum };

struct DrawOptions {
    PinSpec pins = PinSpec::soft_ground();
    /// Soft mode: the three original vertices wired to the dummy triangle.
    std::array<std::size_t, 3> outer{0, 1, 2};
    Backend backend = Backend::classical;
    HhlConfig hhl; // quantum backend only
};

struct DrawReport {
    Embedding embedding; // dummy-free, one coordinate per input vertex
    double wall_seconds = 0.0;
    double barycenter_residual = 0.0; // of the full solved system, dummies included
    std::size_t crossings = 0;        // of the returned drawing
    std::optional<double> fidelity;   // min over both axes, quantum backend only
    std::optional<HhlResult> hhl_x, hhl_y;
};

/// Solves both axis systems with the chosen backend and reassembles the
/// drawing. Soft mode grows the dummy outer face internally and strips it
/// from the returned embedding; hard mode returns the input graph's vertices
/// with pinned ones at their pin coordinates. The two quantum solves run
/// concurrently. Strict-mode quantum refuses padded systems beyond 2^7 rows.
DrawReport draw(const Graph& g, const DrawOptions& opts);

/// Hard-pin policy used by the command-line tool: with stored generator
/// positions, pin the whole convex hull at those coordinates (the boundary
/// shape Tutte's theorem wants); without positions, pin vertices 0, 1, 2 at
/// the standard triangle (0,0), (0,1), (1,0).
PinSpec default_hard_pins(const Graph& g, const std::optional<std::vector<Vec2>>& positions);

struct StudyOptions {
    std::vector<GraphClass> classes{GraphClass::planar, GraphClass::grid, GraphClass::expander,
                                    GraphClass::random_er};
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t samples = 20;
    std::uint64_t seed = 0;
    std::size_t max_retries = 8; // regenerations allowed per sample before skipping
    /// Test hook: builds the system matrix from the augmented graph instead
    /// of the grounded Laplacian. Injecting the identity must flatten every
    /// kappa to exactly 1.
    std::function<Matrix(const Graph&)> system_override;
};

struct StudySample {
    GraphClass cls = GraphClass::planar;
    std::size_t requested_n = 0;
    std::size_t actual_n = 0; // grid/expander shapes round to their lattice
    std::size_t sample = 0;
    double kappa = 0.0;
};

struct StudyCell {
    GraphClass cls = GraphClass::planar;
    std::size_t requested_n = 0;
    std::size_t actual_n = 0;
    std::size_t samples = 0;
    std::size_t skipped = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct StudySlope {
    GraphClass cls = GraphClass::planar;
    double slope = 0.0; // log mean kappa vs log actual n, least squares
    double intercept = 0.0;
};

struct StudyTable {
    std::vector<StudySample> rows;
    std::vector<StudyCell> cells; // class-major, sizes in input order
    std::vector<StudySlope> slopes;
};

/// For every (class, size): generates seeded graphs, grows the dummy outer
/// face, builds the SOFT_GROUND system and computes kappa. Samples of one
/// cell run concurrently; seeds are derived up front so scheduling cannot
/// change any result. Generation failures (e.g. a disconnected random draw)
/// retry with a fresh sub-seed and are recorded as skipped after
/// max_retries.
StudyTable condition_number_study(const StudyOptions& opts);

/// Drawing assumed in the unit square: mapped into an 800x800 viewBox with a
/// 40-unit margin, y up. Vertices are circles of radius 6, edges 2-unit strokes.
std::string embedding_svg(const Embedding& emb, const Graph& g);
void emit_svg(const Embedding& emb, const Graph& g, const std::string& path);

/// Header "vertex,x,y", one row per vertex, 12 significant digits.
std::string embedding_csv(const Embedding& emb);
void emit_csv(const Embedding& emb, const std::string& path);

/// Header "class,n,actual_n,sample,kappa", one row per successful sample.
std::string study_csv(const StudyTable& table);
void emit_csv(const StudyTable& table, const std::string& path);

/// Per-cell mean/stddev plus the per-class log-log slopes, human-readable.
std::string study_summary(const StudyTable& table);

/// Parses embedding_csv output. Vertices must appear as 0..n-1 in order.
std::vector<Vec2> read_embedding_csv(const std::string& path);

} // namespace qtutte
