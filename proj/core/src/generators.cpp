#include "qtutte/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qtutte/errors.hpp"

namespace qtutte {

namespace {

struct Triangle {
    std::size_t a, b, c;
};

// Bowyer-Watson over an explicit triangle list. Fine at desk scale; the
// cavity search is linear per insertion.
std::vector<Triangle> bowyer_watson(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    // super-triangle comfortably containing the unit square
    std::vector<Vec2> all = pts;
    all.push_back({-30.0, -30.0});
    all.push_back({60.0, -30.0});
    all.push_back({-30.0, 60.0});
    const std::size_t s0 = n, s1 = n + 1, s2 = n + 2;

    std::vector<Triangle> tris{{s0, s1, s2}};
    std::vector<Triangle> next;
    using HalfEdge = std::pair<std::size_t, std::size_t>;

    for (std::size_t p = 0; p < n; ++p) {
        std::vector<HalfEdge> cavity;
        next.clear();
        for (const Triangle& t : tris) {
            if (in_circumcircle(all[t.a], all[t.b], all[t.c], all[p])) {
                cavity.emplace_back(t.a, t.b);
                cavity.emplace_back(t.b, t.c);
                cavity.emplace_back(t.c, t.a);
            } else {
                next.push_back(t);
            }
        }
        // boundary edges of the cavity appear exactly once (up to direction)
        for (std::size_t i = 0; i < cavity.size(); ++i) {
            bool shared = false;
            for (std::size_t j = 0; j < cavity.size(); ++j) {
                if (i != j && cavity[i].first == cavity[j].second && cavity[i].second == cavity[j].first) {
                    shared = true;
                    break;
                }
            }
            if (!shared) next.push_back({cavity[i].first, cavity[i].second, p});
        }
        tris.swap(next);
    }

    std::vector<Triangle> out;
    for (const Triangle& t : tris)
        if (t.a < n && t.b < n && t.c < n) out.push_back(t);
    return out;
}

} // namespace

DelaunayResult random_planar_delaunay(std::size_t n, Seed seed) {
    if (n < 3) throw invalid_input("delaunay: need at least 3 points");
    Rng rng(seed.value);

    std::vector<Vec2> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        const Vec2 p{rng.next_double(), rng.next_double()};
        bool ok = true;
        for (const Vec2& q : pts) {
            if (dist2(p, q) < 1e-9 * 1e-9) { // reject near-duplicates
                ok = false;
                break;
            }
        }
        if (ok) pts.push_back(p);
    }

    const std::vector<Triangle> tris = bowyer_watson(pts);
    const std::vector<std::size_t> hull = convex_hull(pts);
    if (hull.size() < 3) throw numerical_failure("delaunay: degenerate point set");

    // outer triple: bottom-left-most, top-most, right-most hull corners,
    // mapped onto indices 0, 1, 2 (clockwise from bottom-left)
    std::size_t bl = hull[0], top = hull[0], right = hull[0];
    for (std::size_t h : hull) {
        if (pts[h].x + pts[h].y < pts[bl].x + pts[bl].y) bl = h;
        if (pts[h].y - pts[h].x > pts[top].y - pts[top].x) top = h;
        if (pts[h].x - pts[h].y > pts[right].x - pts[right].y) right = h;
    }
    if (bl == top || bl == right || top == right) {
        // extreme directions collapsed; spread along the hull instead
        bl = hull[0];
        top = hull[hull.size() / 3];
        right = hull[(2 * hull.size()) / 3];
    }

    std::vector<std::size_t> relabel(n, 0);
    relabel[bl] = 0;
    relabel[top] = 1;
    relabel[right] = 2;
    std::size_t fresh = 3;
    for (std::size_t v = 0; v < n; ++v)
        if (v != bl && v != top && v != right) relabel[v] = fresh++;

    DelaunayResult out;
    out.points.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.points[relabel[v]] = pts[v];

    std::set<Graph::Edge> edge_set;
    out.triangles.reserve(tris.size());
    for (const Triangle& t : tris) {
        const std::array<std::size_t, 3> tri{relabel[t.a], relabel[t.b], relabel[t.c]};
        out.triangles.push_back(tri);
        for (std::size_t i = 0; i < 3; ++i) {
            std::size_t u = tri[i], v = tri[(i + 1) % 3];
            if (u > v) std::swap(u, v);
            edge_set.insert({u, v});
        }
    }
    out.graph = Graph(n, std::vector<Graph::Edge>(edge_set.begin(), edge_set.end()));
    out.hull.reserve(hull.size());
    for (std::size_t h : hull) out.hull.push_back(relabel[h]);
    return out;
}

Graph erdos_renyi(std::size_t n, double p, Seed seed) {
    if (p < 0.0 || p > 1.0) throw invalid_input("erdos_renyi: p outside [0, 1]");
    Rng rng(seed.value);
    std::vector<Graph::Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.next_double() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph margulis_gabber_galil(std::size_t side) {
    if (side == 0) throw invalid_input("margulis_gabber_galil: side must be positive");
    const std::size_t k = side;
    auto idx = [k](std::size_t x, std::size_t y) { return x * k + y; };
    std::set<Graph::Edge> edge_set;
    auto join = [&](std::size_t a, std::size_t b) {
        if (a == b) return; // collapse loops
        if (a > b) std::swap(a, b);
        edge_set.insert({a, b});
    };
    for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) {
            const std::size_t v = idx(x, y);
            join(v, idx((x + 2 * y) % k, y));
            join(v, idx((x + k - (2 * y) % k) % k, y));
            join(v, idx((x + 2 * y + 1) % k, y));
            join(v, idx((x + k - (2 * y + 1) % k) % k, y));
            join(v, idx(x, (y + 2 * x) % k));
            join(v, idx(x, (y + k - (2 * x) % k) % k));
            join(v, idx(x, (y + 2 * x + 1) % k));
            join(v, idx(x, (y + k - (2 * x + 1) % k) % k));
        }
    }
    return Graph(k * k, std::vector<Graph::Edge>(edge_set.begin(), edge_set.end()));
}

Graph grid(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw invalid_input("grid: empty dimension");
    std::vector<Graph::Edge> edges;
    auto idx = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(idx(r, c), idx(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(idx(r, c), idx(r + 1, c));
        }
    }
    return Graph(rows * cols, std::move(edges));
}

GraphClass parse_graph_class(const std::string& name) {
    if (name == "planar") return GraphClass::planar;
    if (name == "grid") return GraphClass::grid;
    if (name == "expander") return GraphClass::expander;
    if (name == "random") return GraphClass::random_er;
    throw invalid_input("unknown graph class: " + name);
}

std::string graph_class_name(GraphClass c) {
    switch (c) {
        case GraphClass::planar: return "planar";
        case GraphClass::grid: return "grid";
        case GraphClass::expander: return "expander";
        case GraphClass::random_er: return "random";
    }
    return "?";
}

} // namespace qtutte
