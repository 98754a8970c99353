#include "qtutte/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <utility>

#include "qtutte/classical.hpp"
#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw io_error("write failed: " + path);
}

} // namespace

PinSpec default_hard_pins(const Graph& g, const std::optional<std::vector<Vec2>>& positions) {
    if (positions) {
        if (positions->size() != g.vertex_count())
            throw invalid_input("default_hard_pins: position count does not match graph");
        const std::vector<std::size_t> hull = convex_hull(*positions);
        if (hull.size() >= 3) {
            std::vector<Pin> pins;
            pins.reserve(hull.size());
            for (std::size_t v : hull) pins.push_back({v, (*positions)[v].x, (*positions)[v].y});
            return PinSpec::hard(std::move(pins));
        }
        // fall through: degenerate position set, use the standard triangle
    }
    if (g.vertex_count() < 3) throw invalid_input("default_hard_pins: need at least three vertices");
    return PinSpec::hard({{0, 0.0, 0.0}, {1, 0.0, 1.0}, {2, 1.0, 0.0}});
}

DrawReport draw(const Graph& g, const DrawOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool soft = opts.pins.mode == PinMode::soft_ground;

    Graph sys_graph;
    std::vector<std::size_t> index_map; // original vertex -> system graph vertex
    if (soft) {
        DummyFaceResult aug = add_dummy_outer_face(g, opts.outer);
        sys_graph = std::move(aug.graph);
        index_map = std::move(aug.index_map);
    } else {
        sys_graph = g;
        index_map.resize(g.vertex_count());
        std::iota(index_map.begin(), index_map.end(), std::size_t{0});
    }
    opts.pins.validate(sys_graph.vertex_count());

    if (!soft && opts.pins.pinned.size() == sys_graph.vertex_count()) {
        // Every vertex pinned (e.g. a small hull covering the whole graph):
        // there is nothing to solve, the drawing is the pin set itself.
        DrawReport rep;
        rep.embedding.source = SolutionSource::classical;
        rep.embedding.coords.resize(g.vertex_count());
        for (const Pin& p : opts.pins.pinned) rep.embedding.coords[p.vertex] = {p.x, p.y};
        rep.crossings = crossing_count(g, rep.embedding.coords);
        rep.embedding.metrics.barycenter_residual = 0.0;
        rep.embedding.metrics.crossings = rep.crossings;
        rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    const TutteSystem sys = build_system(sys_graph, opts.pins);

    DrawReport rep;
    std::vector<double> x, y;
    if (opts.backend == Backend::classical) {
        TutteSolution sol = solve(sys);
        x = std::move(sol.x);
        y = std::move(sol.y);
    } else {
        if (opts.hhl.mode == CompileMode::strict && padded_dimension(sys.dim) > 128)
            throw invalid_input("draw: strict quantum mode refuses systems beyond 2^7 padded rows");
        auto fx = std::async(std::launch::async, [&] { return solve_hhl(sys, Axis::x, opts.hhl); });
        HhlResult ry = solve_hhl(sys, Axis::y, opts.hhl);
        HhlResult rx = fx.get();
        x = rx.solution;
        y = ry.solution;
        rep.fidelity = std::min(rx.fidelity_vs_classical, ry.fidelity_vs_classical);
        rep.hhl_x = std::move(rx);
        rep.hhl_y = std::move(ry);
    }

    std::vector<Vec2> full(sys_graph.vertex_count());
    if (!soft)
        for (const Pin& p : opts.pins.pinned) full[p.vertex] = {p.x, p.y};
    for (std::size_t row = 0; row < sys.dim; ++row) full[sys.free_index_map[row]] = {x[row], y[row]};

    Embedding full_emb;
    full_emb.coords = full;
    full_emb.source = opts.backend == Backend::classical ? SolutionSource::classical : SolutionSource::quantum;
    rep.barycenter_residual = barycenter_residual(sys_graph, opts.pins, full_emb);

    rep.embedding.source = full_emb.source;
    rep.embedding.coords.resize(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) rep.embedding.coords[v] = full[index_map[v]];
    rep.crossings = crossing_count(g, rep.embedding.coords);
    rep.embedding.metrics.fidelity = rep.fidelity;
    rep.embedding.metrics.barycenter_residual = rep.barycenter_residual;
    rep.embedding.metrics.crossings = rep.crossings;

    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

std::pair<std::size_t, std::size_t> grid_shape(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r > 1 && n % r != 0) --r;
    return {r, n / r};
}

std::size_t expander_side(std::size_t n) {
    const std::size_t k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return std::max<std::size_t>(2, k);
}

Graph make_study_graph(GraphClass cls, std::size_t n, std::uint64_t seed) {
    switch (cls) {
        case GraphClass::planar: return random_planar_delaunay(n, Seed{seed}).graph;
        case GraphClass::grid: {
            const auto [r, c] = grid_shape(n);
            return grid(r, c);
        }
        case GraphClass::expander: return margulis_gabber_galil(expander_side(n));
        case GraphClass::random_er: {
            const double p = std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
            return erdos_renyi(n, p, Seed{seed});
        }
    }
    throw invalid_input("make_study_graph: unknown class");
}

struct SampleOutcome {
    bool ok = false;
    std::size_t actual_n = 0;
    double kappa = 0.0;
};

SampleOutcome run_study_sample(GraphClass cls, std::size_t n, std::uint64_t seed, std::size_t max_retries,
                               const std::function<Matrix(const Graph&)>& override_fn) {
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
        const Graph g = make_study_graph(cls, n, derive_seed(seed, attempt));
        if (!g.is_connected()) continue;
        const DummyFaceResult aug = add_dummy_outer_face(g, {0, 1, 2});
        const Matrix a =
            override_fn ? override_fn(aug.graph) : build_system(aug.graph, PinSpec::soft_ground()).a;
        SampleOutcome out;
        out.ok = true;
        out.actual_n = g.vertex_count();
        out.kappa = condition_number(a);
        return out;
    }
    return {};
}

} // namespace

StudyTable condition_number_study(const StudyOptions& opts) {
    if (opts.classes.empty() || opts.sizes.empty()) throw invalid_input("study: classes and sizes must be nonempty");
    if (opts.samples == 0) throw invalid_input("study: need at least one sample per point");
    for (std::size_t n : opts.sizes)
        if (n < 4) throw invalid_input("study: sizes below 4 are not meaningful here");

    StudyTable table;
    for (std::size_t ci = 0; ci < opts.classes.size(); ++ci) {
        const GraphClass cls = opts.classes[ci];
        for (std::size_t si = 0; si < opts.sizes.size(); ++si) {
            const std::size_t n = opts.sizes[si];
            std::vector<std::future<SampleOutcome>> futures;
            futures.reserve(opts.samples);
            for (std::size_t s = 0; s < opts.samples; ++s) {
                const std::uint64_t seed = derive_seed(opts.seed, (ci << 20) | si, s);
                futures.push_back(std::async(std::launch::async, run_study_sample, cls, n, seed,
                                             opts.max_retries, std::cref(opts.system_override)));
            }

            StudyCell cell;
            cell.cls = cls;
            cell.requested_n = n;
            double sum = 0.0, sum2 = 0.0;
            for (std::size_t s = 0; s < opts.samples; ++s) {
                const SampleOutcome out = futures[s].get();
                if (!out.ok) {
                    ++cell.skipped;
                    continue;
                }
                table.rows.push_back({cls, n, out.actual_n, s, out.kappa});
                cell.actual_n = out.actual_n; // identical across samples of a cell
                ++cell.samples;
                sum += out.kappa;
                sum2 += out.kappa * out.kappa;
            }
            if (cell.samples > 0) {
                cell.mean = sum / static_cast<double>(cell.samples);
                if (cell.samples > 1) {
                    const double var = std::max(
                        0.0, (sum2 - sum * sum / static_cast<double>(cell.samples)) /
                                 static_cast<double>(cell.samples - 1));
                    cell.stddev = std::sqrt(var);
                }
            }
            table.cells.push_back(cell);
        }
    }

    for (GraphClass cls : opts.classes) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (const StudyCell& cell : table.cells) {
            if (cell.cls != cls || cell.samples == 0 || cell.mean <= 0.0) continue;
            const double lx = std::log(static_cast<double>(cell.actual_n));
            const double ly = std::log(cell.mean);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        StudySlope sl;
        sl.cls = cls;
        if (m >= 2) {
            const double denom = static_cast<double>(m) * sxx - sx * sx;
            if (denom != 0.0) {
                sl.slope = (static_cast<double>(m) * sxy - sx * sy) / denom;
                sl.intercept = (sy - sl.slope * sx) / static_cast<double>(m);
            }
        }
        table.slopes.push_back(sl);
    }
    return table;
}

std::string embedding_csv(const Embedding& emb) {
    std::string out = "vertex,x,y\n";
    for (std::size_t v = 0; v < emb.coords.size(); ++v) {
        out += std::to_string(v);
        out += ',';
        out += format_double("%.12g", emb.coords[v].x);
        out += ',';
        out += format_double("%.12g", emb.coords[v].y);
        out += '\n';
    }
    return out;
}

void emit_csv(const Embedding& emb, const std::string& path) { write_text_file(path, embedding_csv(emb)); }

std::string embedding_svg(const Embedding& emb, const Graph& g) {
    if (emb.coords.size() != g.vertex_count()) throw invalid_input("embedding_svg: coordinate count mismatch");
    const auto sx = [](double x) { return 40.0 + 720.0 * x; };
    const auto sy = [](double y) { return 760.0 - 720.0 * y; }; // y grows upward on screen
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
    out += "  <g stroke=\"#444444\" stroke-width=\"2\">\n";
    for (const auto& [u, v] : g.edges()) {
        out += "    <line x1=\"" + format_double("%.3f", sx(emb.coords[u].x)) + "\" y1=\"" +
               format_double("%.3f", sy(emb.coords[u].y)) + "\" x2=\"" +
               format_double("%.3f", sx(emb.coords[v].x)) + "\" y2=\"" +
               format_double("%.3f", sy(emb.coords[v].y)) + "\"/>\n";
    }
    out += "  </g>\n  <g fill=\"#2266aa\">\n";
    for (const Vec2& p : emb.coords) {
        out += "    <circle cx=\"" + format_double("%.3f", sx(p.x)) + "\" cy=\"" +
               format_double("%.3f", sy(p.y)) + "\" r=\"6\"/>\n";
    }
    out += "  </g>\n</svg>\n";
    return out;
}

void emit_svg(const Embedding& emb, const Graph& g, const std::string& path) {
    write_text_file(path, embedding_svg(emb, g));
}

std::string study_csv(const StudyTable& table) {
    std::string out = "class,n,actual_n,sample,kappa\n";
    for (const StudySample& row : table.rows) {
        out += graph_class_name(row.cls);
        out += ',';
        out += std::to_string(row.requested_n);
        out += ',';
        out += std::to_string(row.actual_n);
        out += ',';
        out += std::to_string(row.sample);
        out += ',';
        out += format_double("%.12g", row.kappa);
        out += '\n';
    }
    return out;
}

void emit_csv(const StudyTable& table, const std::string& path) { write_text_file(path, study_csv(table)); }

std::string study_summary(const StudyTable& table) {
    std::ostringstream out;
    out << "class      n  actual  samples  skipped      mean kappa    stddev\n";
    for (const StudyCell& c : table.cells) {
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %4zu %6zu %8zu %8zu %15.4f %9.4f\n",
                      graph_class_name(c.cls).c_str(), c.requested_n, c.actual_n, c.samples, c.skipped,
                      c.mean, c.stddev);
        out << line;
    }
    out << "\nlog-log slope of mean kappa vs n:\n";
    for (const StudySlope& s : table.slopes) {
        char line[96];
        std::snprintf(line, sizeof line, "%-8s %7.3f\n", graph_class_name(s.cls).c_str(), s.slope);
        out << line;
    }
    return out.str();
}

std::vector<Vec2> read_embedding_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open embedding csv: " + path);
    std::string line;
    if (!std::getline(in, line)) throw invalid_input("embedding csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "vertex,x,y") throw invalid_input("embedding csv: bad header");

    std::vector<Vec2> coords;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t vertex = 0;
        double x = 0.0, y = 0.0;
        char trailing = 0;
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf%c", &vertex, &x, &y, &trailing) != 3)
            throw invalid_input("embedding csv: malformed row: " + line);
        if (vertex != expect) throw invalid_input("embedding csv: vertices out of order");
        ++expect;
        coords.push_back({x, y});
    }
    if (coords.empty()) throw invalid_input("embedding csv: no rows");
    return coords;
}

} // namespace qtutte
