#include "qtutte/tutte.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qtutte/errors.hpp"

namespace qtutte {

PinSpec PinSpec::soft_ground() {
    PinSpec spec;
    spec.mode = PinMode::soft_ground;
    spec.pinned.assign(kDummyTrianglePins.begin(), kDummyTrianglePins.end());
    return spec;
}

PinSpec PinSpec::hard(std::vector<Pin> pins) {
    PinSpec spec;
    spec.mode = PinMode::hard_pin;
    spec.pinned = std::move(pins);
    return spec;
}

void PinSpec::validate(std::size_t vertex_count) const {
    if (pinned.empty()) throw invalid_input("pin spec: no pinned vertices");
    std::set<std::size_t> seen;
    for (const Pin& p : pinned) {
        if (p.vertex >= vertex_count)
            throw invalid_input("pin spec: vertex " + std::to_string(p.vertex) + " out of range");
        if (!seen.insert(p.vertex).second)
            throw invalid_input("pin spec: vertex " + std::to_string(p.vertex) + " pinned twice");
    }
    if (mode == PinMode::soft_ground) {
        if (vertex_count < 3) throw invalid_input("pin spec: soft ground needs the dummy triangle");
        bool standard = pinned.size() == 3;
        for (std::size_t i = 0; standard && i < 3; ++i) {
            standard = pinned[i].vertex == kDummyTrianglePins[i].vertex &&
                       pinned[i].x == kDummyTrianglePins[i].x && pinned[i].y == kDummyTrianglePins[i].y;
        }
        if (!standard)
            throw invalid_input("pin spec: soft ground requires dummy vertices 0,1,2 at (0,0),(0,1),(1,0)");
    }
}

Matrix laplacian(const Graph& g) {
    const std::size_t n = g.vertex_count();
    Matrix l(n, n);
    for (std::size_t v = 0; v < n; ++v) l.at(v, v) = static_cast<double>(g.degree(v));
    for (const auto& [u, v] : g.edges()) {
        l.at(u, v) = -1.0;
        l.at(v, u) = -1.0;
    }
    return l;
}

DummyFaceResult add_dummy_outer_face(const Graph& g, const std::array<std::size_t, 3>& outer) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (outer[i] >= g.vertex_count()) throw invalid_input("dummy face: outer vertex out of range");
        for (std::size_t j = i + 1; j < 3; ++j)
            if (outer[i] == outer[j]) throw invalid_input("dummy face: outer vertices must be distinct");
    }

    std::vector<Graph::Edge> edges;
    edges.reserve(g.edge_count() + 6);
    edges.emplace_back(0, 1);
    edges.emplace_back(0, 2);
    edges.emplace_back(1, 2);
    for (std::size_t i = 0; i < 3; ++i) edges.emplace_back(i, outer[i] + 3);
    for (const auto& [u, v] : g.edges()) edges.emplace_back(u + 3, v + 3);

    DummyFaceResult out;
    out.graph = Graph(g.vertex_count() + 3, std::move(edges));
    out.index_map.resize(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.index_map[v] = v + 3;
    return out;
}

TutteSystem build_system(const Graph& g, const PinSpec& pins) {
    pins.validate(g.vertex_count());
    if (!g.is_connected()) throw invalid_input("build_system: graph is not connected");

    TutteSystem sys;
    sys.mode = pins.mode;

    if (pins.mode == PinMode::soft_ground) {
        // a = L + diag(1,1,1,0,...,0); b collects the pin coordinates, which
        // for the standard dummy triangle is exactly b_x = e_2 and b_y = e_1.
        const std::size_t n = g.vertex_count();
        sys.a = laplacian(g);
        sys.b_x.assign(n, 0.0);
        sys.b_y.assign(n, 0.0);
        for (const Pin& p : pins.pinned) {
            sys.a.at(p.vertex, p.vertex) += 1.0;
            sys.b_x[p.vertex] += p.x;
            sys.b_y[p.vertex] += p.y;
        }
        sys.dim = n;
        sys.free_index_map.resize(n);
        for (std::size_t v = 0; v < n; ++v) sys.free_index_map[v] = v;
        return sys;
    }

    std::vector<std::ptrdiff_t> row_of(g.vertex_count(), -1);
    std::vector<double> pin_x(g.vertex_count(), 0.0), pin_y(g.vertex_count(), 0.0);
    std::vector<char> is_pinned(g.vertex_count(), 0);
    for (const Pin& p : pins.pinned) {
        is_pinned[p.vertex] = 1;
        pin_x[p.vertex] = p.x;
        pin_y[p.vertex] = p.y;
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!is_pinned[v]) {
            row_of[v] = static_cast<std::ptrdiff_t>(sys.free_index_map.size());
            sys.free_index_map.push_back(v);
        }
    }
    const std::size_t d = sys.free_index_map.size();
    if (d == 0) throw invalid_input("build_system: hard pins leave no free vertices");

    sys.a = Matrix(d, d);
    sys.b_x.assign(d, 0.0);
    sys.b_y.assign(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t u = sys.free_index_map[r];
        sys.a.at(r, r) = static_cast<double>(g.degree(u)); // full degree, pinned neighbors included
        for (std::size_t w : g.neighbors(u)) {
            if (is_pinned[w]) {
                sys.b_x[r] += pin_x[w];
                sys.b_y[r] += pin_y[w];
            } else {
                sys.a.at(r, static_cast<std::size_t>(row_of[w])) = -1.0;
            }
        }
    }
    sys.dim = d;
    return sys;
}

} // namespace qtutte
