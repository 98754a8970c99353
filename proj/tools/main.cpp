// qtutte: Tutte embeddings of planar graphs, solved either directly or on a
// simulated quantum circuit (HHL), plus the experiment and validation verbs.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtutte/classical.hpp"
#include "qtutte/energy.hpp"
#include "qtutte/errors.hpp"
#include "qtutte/generators.hpp"
#include "qtutte/graph.hpp"
#include "qtutte/hhl.hpp"
#include "qtutte/pipeline.hpp"

namespace {

using namespace qtutte;

std::uint64_t parse_seed_string(const std::string& text) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw invalid_input("QTUTTE_SEED is not an integer: " + text);
        return static_cast<std::uint64_t>(v);
    } catch (const std::logic_error&) {
        throw invalid_input("QTUTTE_SEED is not an integer: " + text);
    }
}

/// Flag wins, then QTUTTE_SEED, then 0.
std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
    if (opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("QTUTTE_SEED")) return parse_seed_string(env);
    return 0;
}

std::pair<std::size_t, std::size_t> grid_shape(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r > 1 && n % r != 0) --r;
    return {r, n / r};
}

Graph generate_graph(GraphClass cls, std::size_t n, std::uint64_t seed,
                     std::optional<std::vector<Vec2>>& positions) {
    switch (cls) {
        case GraphClass::planar: {
            DelaunayResult d = random_planar_delaunay(n, Seed{seed});
            positions = std::move(d.points);
            return std::move(d.graph);
        }
        case GraphClass::grid: {
            const auto [r, c] = grid_shape(n);
            return grid(r, c);
        }
        case GraphClass::expander: {
            const std::size_t k =
                std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
            return margulis_gabber_galil(k);
        }
        case GraphClass::random_er: {
            const double p = std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
            for (std::size_t attempt = 0; attempt < 64; ++attempt) {
                Graph g = erdos_renyi(n, p, Seed{derive_seed(seed, attempt)});
                if (g.is_connected()) return g;
            }
            throw numerical_failure("generate: no connected random graph within the retry budget");
        }
    }
    throw invalid_input("generate: unknown class");
}

void print_draw_summary(const char* label, const Graph& g, const DrawReport& rep) {
    std::printf("%s: n=%zu m=%zu crossings=%zu residual=%.3g wall=%.3fs", label, g.vertex_count(),
                g.edge_count(), rep.crossings, rep.barycenter_residual, rep.wall_seconds);
    if (rep.fidelity) std::printf(" fidelity=%.6f", *rep.fidelity);
    if (rep.hhl_x) std::printf(" p1_x=%.4g p1_y=%.4g", rep.hhl_x->success_probability,
                               rep.hhl_y->success_probability);
    std::printf("\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tutte embeddings via a simulated quantum linear-systems solver"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a graph from a named class");
    std::string gen_class = "planar";
    std::size_t gen_n = 8;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--class", gen_class, "planar|grid|expander|random")
        ->check(CLI::IsMember({"planar", "grid", "expander", "random"}));
    gen->add_option("--n", gen_n, "vertex count (grid/expander round to their lattice)")->required();
    auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output graph file")->required();
    gen->callback([&] {
        const std::uint64_t seed = resolve_seed(gen_seed_opt, gen_seed);
        std::optional<std::vector<Vec2>> positions;
        const Graph g = generate_graph(parse_graph_class(gen_class), gen_n, seed, positions);
        write_graph_file(gen_out, g, positions ? &*positions : nullptr);
        std::printf("wrote %s: class=%s n=%zu m=%zu seed=%llu\n", gen_out.c_str(), gen_class.c_str(),
                    g.vertex_count(), g.edge_count(), static_cast<unsigned long long>(seed));
    });

    // draw
    auto* drw = app.add_subcommand("draw", "Compute a Tutte embedding");
    std::string drw_in, drw_backend = "classical", drw_mode = "hard", drw_svg, drw_csv, drw_cfg;
    std::size_t drw_r = 8;
    double drw_eps = 1e-2;
    std::uint64_t drw_seed = 0;
    drw->add_option("--in", drw_in, "input graph file")->required();
    drw->add_option("--backend", drw_backend, "classical|quantum")
        ->check(CLI::IsMember({"classical", "quantum"}));
    drw->add_option("--mode", drw_mode, "hard: pin hull/triangle; soft: grounded dummy face")
        ->check(CLI::IsMember({"hard", "soft"}));
    auto* drw_r_opt = drw->add_option("--r", drw_r, "clock qubits (quantum)");
    auto* drw_eps_opt = drw->add_option("--epsilon", drw_eps, "Trotter budget (quantum strict)");
    drw->add_option("--hhl-config", drw_cfg, "JSON solver config");
    auto* drw_seed_opt = drw->add_option("--seed", drw_seed, "sampling seed (quantum)");
    drw->add_option("--svg", drw_svg, "write drawing as SVG");
    drw->add_option("--csv", drw_csv, "write coordinates as CSV");
    drw->callback([&] {
        const GraphFile gf = read_graph_file(drw_in);
        DrawOptions opts;
        opts.backend = drw_backend == "quantum" ? Backend::quantum : Backend::classical;
        opts.pins = drw_mode == "hard" ? default_hard_pins(gf.graph, gf.positions) : PinSpec::soft_ground();
        HhlConfig hc;
        if (!drw_cfg.empty()) hc = load_hhl_config(drw_cfg);
        if (drw_r_opt->count() > 0) hc.clock_qubits = drw_r;
        if (drw_eps_opt->count() > 0) hc.epsilon = drw_eps;
        if (drw_seed_opt->count() > 0 || std::getenv("QTUTTE_SEED") != nullptr)
            hc.seed = resolve_seed(drw_seed_opt, drw_seed);
        opts.hhl = hc;
        const DrawReport rep = draw(gf.graph, opts);
        print_draw_summary(drw_backend.c_str(), gf.graph, rep);
        if (!drw_svg.empty()) emit_svg(rep.embedding, gf.graph, drw_svg);
        if (!drw_csv.empty()) emit_csv(rep.embedding, drw_csv);
    });

    // study
    auto* stu = app.add_subcommand("study", "Condition-number scaling study");
    std::vector<std::string> stu_classes{"planar", "grid", "expander", "random"};
    std::vector<std::size_t> stu_sizes{8, 16, 32, 64};
    std::size_t stu_samples = 20;
    std::uint64_t stu_seed = 0;
    std::string stu_out;
    stu->add_option("--classes", stu_classes, "comma-separated class list")->delimiter(',');
    stu->add_option("--sizes", stu_sizes, "comma-separated vertex counts")->delimiter(',');
    stu->add_option("--samples", stu_samples, "samples per (class, size)");
    auto* stu_seed_opt = stu->add_option("--seed", stu_seed, "study seed");
    stu->add_option("--out", stu_out, "output CSV path")->required();
    stu->callback([&] {
        StudyOptions so;
        so.classes.clear();
        for (const std::string& name : stu_classes) so.classes.push_back(parse_graph_class(name));
        so.sizes = stu_sizes;
        so.samples = stu_samples;
        so.seed = resolve_seed(stu_seed_opt, stu_seed);
        const StudyTable table = condition_number_study(so);
        emit_csv(table, stu_out);
        std::printf("%s", study_summary(table).c_str());
        std::printf("wrote %s (%zu samples)\n", stu_out.c_str(), table.rows.size());
    });

    // validate
    auto* val = app.add_subcommand("validate", "Energy and crossing checks for a drawing");
    std::string val_in, val_csv;
    val->add_option("--in", val_in, "graph file")->required();
    val->add_option("--csv", val_csv, "embedding CSV")->required();
    val->callback([&] {
        const GraphFile gf = read_graph_file(val_in);
        const std::vector<Vec2> coords = read_embedding_csv(val_csv);
        if (coords.size() != gf.graph.vertex_count())
            throw invalid_input("validate: embedding does not match the graph's vertex count");
        const std::size_t crossings = crossing_count(gf.graph, coords);
        const double energy = total_energy(gf.graph, coords);
        const bool zero = is_zero_energy(gf.graph, coords);
        std::printf("crossings=%zu energy=%.12g zero_energy=%s\n", crossings, energy,
                    zero ? "true" : "false");
    });

    // compare
    auto* cmp = app.add_subcommand("compare", "Classical vs quantum backend on one graph");
    std::string cmp_in, cmp_mode = "hard", cmp_report;
    std::size_t cmp_r = 8;
    cmp->add_option("--in", cmp_in, "graph file")->required();
    cmp->add_option("--r", cmp_r, "clock qubits for the quantum run");
    cmp->add_option("--mode", cmp_mode, "hard|soft")->check(CLI::IsMember({"hard", "soft"}));
    cmp->add_option("--report", cmp_report, "also write the report to this file");
    cmp->callback([&] {
        const GraphFile gf = read_graph_file(cmp_in);
        DrawOptions copts;
        copts.pins = cmp_mode == "hard" ? default_hard_pins(gf.graph, gf.positions) : PinSpec::soft_ground();
        copts.backend = Backend::classical;
        const DrawReport classical = draw(gf.graph, copts);

        DrawOptions qopts = copts;
        qopts.backend = Backend::quantum;
        qopts.hhl.clock_qubits = cmp_r;
        qopts.hhl.mode = CompileMode::oracle;
        const DrawReport quantum = draw(gf.graph, qopts);

        double dev = 0.0;
        for (std::size_t v = 0; v < gf.graph.vertex_count(); ++v) {
            dev = std::max(dev, std::abs(classical.embedding.coords[v].x - quantum.embedding.coords[v].x));
            dev = std::max(dev, std::abs(classical.embedding.coords[v].y - quantum.embedding.coords[v].y));
        }

        char buf[1024];
        int len = std::snprintf(buf, sizeof buf,
                                "graph: %s  n=%zu m=%zu  mode=%s\n"
                                "classical: wall=%.3fs residual=%.3g crossings=%zu\n"
                                "quantum:   wall=%.3fs residual=%.3g crossings=%zu\n",
                                cmp_in.c_str(), gf.graph.vertex_count(), gf.graph.edge_count(),
                                cmp_mode.c_str(), classical.wall_seconds, classical.barycenter_residual,
                                classical.crossings, quantum.wall_seconds, quantum.barycenter_residual,
                                quantum.crossings);
        if (quantum.hhl_x)
            len += std::snprintf(buf + len, sizeof buf - static_cast<std::size_t>(len),
                                 "           fidelity=%.6f r=%zu p1_x=%.4g p1_y=%.4g\n",
                                 quantum.fidelity.value_or(0.0), cmp_r,
                                 quantum.hhl_x->success_probability, quantum.hhl_y->success_probability);
        else
            len += std::snprintf(buf + len, sizeof buf - static_cast<std::size_t>(len),
                                 "           fully pinned input, no linear system solved\n");
        std::snprintf(buf + len, sizeof buf - static_cast<std::size_t>(len),
                      "max coordinate deviation: %.6g\n", dev);
        std::printf("%s", buf);
        if (!cmp_report.empty()) {
            std::ofstream out(cmp_report, std::ios::binary);
            if (!out) throw io_error("cannot open for writing: " + cmp_report);
            out << buf;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const invalid_input& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const numerical_failure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
