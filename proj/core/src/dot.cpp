#include "fairdiv/dot.hpp"

#include "fairdiv/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fairdiv {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

// For chores graphs dummy edges are the dashed class; otherwise every edge lighter than
// the heaviest one is.
std::vector<bool> solid_edges(const Multigraph& g) {
    bool chores = false;
    Rational heaviest = 0;
    for (const Edge& e : g.edges) {
        if (e.wa < 0 || e.wb < 0) {
            chores = true;
        }
        heaviest = std::max({heaviest, e.wa, e.wb});
    }
    std::vector<bool> solid;
    for (const Edge& e : g.edges) {
        if (chores) {
            solid.push_back(e.wa != 0 || e.wb != 0);
        } else {
            solid.push_back(heaviest > 0 && std::max(e.wa, e.wb) == heaviest);
        }
    }
    return solid;
}

}  // namespace

std::string export_dot(const Multigraph& g, const std::optional<Orientation>& pi, const DotOptions& options) {
    Receivers recv(g.edges.size(), -1);
    if (pi) {
        for (const auto& [id, v] : pi->assign) {
            auto idx = g.edge_index(id);
            if (!idx) {
                throw InputError("orientation names unknown edge " + id);
            }
            const Edge& e = g.edges[*idx];
            if (v != e.a && v != e.b) {
                throw InputError("edge " + id + " cannot go to vertex " + std::to_string(v));
            }
            recv[*idx] = v;
        }
    }
    const bool directed = pi.has_value();
    const std::string arrow = directed ? " -> " : " -- ";
    auto solid = solid_edges(g);

    std::ostringstream out;
    out << (directed ? "digraph" : "graph") << " {\n";
    for (int v = 0; v < g.vertices; ++v) {
        out << "  " << v << ";\n";
    }
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        int from = e.a;
        int to = e.b;
        if (recv[k] >= 0 && !e.is_loop() && recv[k] == e.a) {
            std::swap(from, to);
        }
        out << "  " << from << arrow << to << " [label=" << quoted(e.id);
        if (directed && recv[k] < 0) {
            out << ", dir=none";
        }
        if (options.weight_classes) {
            out << (solid[k] ? ", style=solid, penwidth=2" : ", style=dashed");
        }
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace fairdiv
