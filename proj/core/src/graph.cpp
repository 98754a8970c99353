#include "qtutte/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qtutte/errors.hpp"

namespace qtutte {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& [u, v] : edges) {
        if (u == v) throw invalid_input("graph: self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (v >= n) throw invalid_input("graph: edge endpoint " + std::to_string(v) + " out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw invalid_input("graph: duplicate edge");
    edges_ = std::move(edges);

    adjacency_.assign(n_, {});
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

std::size_t Graph::max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) return false;
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

GraphFile read_graph(std::istream& in) {
    std::string line;
    std::size_t n = 0, m = 0;
    bool header_seen = false;
    std::vector<Graph::Edge> edges;
    std::vector<std::pair<std::size_t, Vec2>> pos_entries;

    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream cs(line.substr(1));
            std::string tag;
            if (cs >> tag && tag == "pos") {
                std::size_t v;
                double x, y;
                if (cs >> v >> x >> y) pos_entries.emplace_back(v, Vec2{x, y});
            }
            continue;
        }
        std::istringstream ls(line);
        if (!header_seen) {
            if (!(ls >> n >> m)) throw invalid_input("graph file: malformed header at line " + std::to_string(line_no));
            header_seen = true;
            continue;
        }
        std::size_t u, v;
        if (!(ls >> u >> v)) throw invalid_input("graph file: malformed edge at line " + std::to_string(line_no));
        edges.emplace_back(u, v);
    }
    if (!header_seen) throw invalid_input("graph file: missing header");
    if (edges.size() != m)
        throw invalid_input("graph file: header promises " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));

    GraphFile out;
    out.graph = Graph(n, std::move(edges));
    if (!pos_entries.empty()) {
        std::vector<Vec2> positions(n);
        std::vector<char> have(n, 0);
        for (const auto& [v, p] : pos_entries) {
            if (v >= n) throw invalid_input("graph file: position for out-of-range vertex");
            positions[v] = p;
            have[v] = 1;
        }
        if (std::find(have.begin(), have.end(), 0) == have.end()) out.positions = std::move(positions);
    }
    return out;
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const std::vector<Vec2>* positions) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (positions != nullptr) {
        char buf[96];
        for (std::size_t v = 0; v < positions->size(); ++v) {
            std::snprintf(buf, sizeof buf, "# pos %zu %.12g %.12g\n", v, (*positions)[v].x, (*positions)[v].y);
            out << buf;
        }
    }
}

void write_graph_file(const std::string& path, const Graph& g, const std::vector<Vec2>* positions) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write graph file: " + path);
    write_graph(out, g, positions);
    if (!out) throw io_error("error while writing graph file: " + path);
}

} // namespace qtutte
