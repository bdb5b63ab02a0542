#include "fairdiv/chores_orient.hpp"

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/two_sat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace fairdiv {

namespace {

using Pair = std::pair<int, int>;

Pair ordered(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// Groups the vertices touched by `edges` (plus, optionally, every vertex) into connected
// components, each listed with its edges. Components are ordered by smallest vertex.
std::vector<NegativeComponent> components_of(const Multigraph& g, const std::vector<int>& edges,
                                             bool all_vertices) {
    std::vector<std::vector<int>> at(g.vertices);
    std::vector<bool> touched(g.vertices, all_vertices);
    for (int k : edges) {
        const Edge& e = g.edges[k];
        at[e.a].push_back(k);
        if (!e.is_loop()) {
            at[e.b].push_back(k);
        }
        touched[e.a] = touched[e.b] = true;
    }
    std::vector<int> comp(g.vertices, -1);
    std::vector<NegativeComponent> out;
    for (int s = 0; s < g.vertices; ++s) {
        if (!touched[s] || comp[s] >= 0) {
            continue;
        }
        NegativeComponent c;
        std::deque<int> queue{s};
        comp[s] = static_cast<int>(out.size());
        std::set<int> seen_edges;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            c.vertices.push_back(x);
            for (int k : at[x]) {
                seen_edges.insert(k);
                int y = g.edges[k].other(x);
                if (comp[y] < 0) {
                    comp[y] = comp[s];
                    queue.push_back(y);
                }
            }
        }
        std::sort(c.vertices.begin(), c.vertices.end());
        c.negative_edges.assign(seen_edges.begin(), seen_edges.end());
        out.push_back(std::move(c));
    }
    return out;
}

// Orients a connected edge set with at most as many edges as vertices so that every
// vertex receives at most one of them: the unique cycle (if any) cyclically from its
// smallest vertex, the rest away from the cycle, or away from `root` for a tree.
void orient_pseudoforest(const Multigraph& g, const NegativeComponent& c, int root, Receivers& recv) {
    std::map<int, std::vector<int>> at;
    std::map<int, int> degree;
    std::optional<int> loop;
    for (int k : c.negative_edges) {
        const Edge& e = g.edges[k];
        if (e.is_loop()) {
            loop = k;
            continue;
        }
        at[e.a].push_back(k);
        at[e.b].push_back(k);
        ++degree[e.a];
        ++degree[e.b];
    }
    std::vector<int> roots;
    std::set<int> on_cycle_edges;
    if (loop) {
        recv[*loop] = g.edges[*loop].a;
        roots.push_back(g.edges[*loop].a);
    } else if (c.negative_edges.size() == c.vertices.size()) {
        // Peel leaves; what remains is the cycle.
        std::set<int> removed_edges;
        std::deque<int> leaves;
        for (int v : c.vertices) {
            if (degree[v] == 1) {
                leaves.push_back(v);
            }
        }
        std::set<int> peeled;
        while (!leaves.empty()) {
            int v = leaves.front();
            leaves.pop_front();
            peeled.insert(v);
            for (int k : at[v]) {
                if (removed_edges.count(k)) {
                    continue;
                }
                removed_edges.insert(k);
                int y = g.edges[k].other(v);
                if (--degree[y] == 1) {
                    leaves.push_back(y);
                }
            }
        }
        int start = -1;
        for (int v : c.vertices) {
            if (!peeled.count(v)) {
                start = v;
                break;
            }
        }
        int prev_edge = -1;
        for (int x = start;;) {
            int next_edge = -1;
            for (int k : at[x]) {
                if (!removed_edges.count(k) && k != prev_edge && !on_cycle_edges.count(k)) {
                    next_edge = k;
                    break;
                }
            }
            if (next_edge < 0) {
                break;
            }
            int y = g.edges[next_edge].other(x);
            recv[next_edge] = y;
            on_cycle_edges.insert(next_edge);
            roots.push_back(x);
            prev_edge = next_edge;
            x = y;
            if (x == start) {
                break;
            }
        }
    } else {
        roots.push_back(root);
    }
    std::set<int> seen(roots.begin(), roots.end());
    std::deque<int> queue(roots.begin(), roots.end());
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int k : at[x]) {
            if (on_cycle_edges.count(k)) {
                continue;
            }
            int y = g.edges[k].other(x);
            if (!seen.count(y)) {
                seen.insert(y);
                recv[k] = y;
                queue.push_back(y);
            }
        }
    }
}

}  // namespace

void require_chores_graph(const Multigraph& g) {
    std::set<Pair> pairs;
    for (const Edge& e : g.edges) {
        if (e.wa > 0 || e.wb > 0) {
            throw InputError("edge " + e.id + " has a positive weight; chores graphs need weights <= 0");
        }
        if (!pairs.insert(ordered(e.a, e.b)).second) {
            throw PreconditionError("edge " + e.id + " is parallel to another edge; multiplicity must be 1");
        }
    }
}

bool chores_graph_ef1(const Multigraph& g, const Receivers& recv) {
    std::vector<int> negatives(g.vertices, 0);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (recv[k] >= 0 && g.edges[k].weight_at(recv[k]) < 0 && ++negatives[recv[k]] > 1) {
            return false;
        }
    }
    return true;
}

std::optional<Orientation> ef1_orient_graph(const Multigraph& g) {
    require_chores_graph(g);
    Receivers recv(g.edges.size(), -1);
    std::vector<int> strict;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        const bool za = e.wa == 0;
        const bool zb = e.is_loop() ? za : e.wb == 0;
        if (za) {
            recv[k] = e.a < e.b || !zb ? e.a : e.b;
        } else if (zb) {
            recv[k] = e.b;
        } else {
            strict.push_back(static_cast<int>(k));
        }
    }
    for (const auto& c : components_of(g, strict, false)) {
        if (c.negative_edges.size() > c.vertices.size()) {
            return std::nullopt;
        }
        orient_pseudoforest(g, c, c.vertices.front(), recv);
    }
    if (!chores_graph_ef1(g, recv)) {
        throw std::logic_error("EF1 construction left a vertex with two negative edges");
    }
    return orientation_from_receivers(g, recv);
}

std::vector<std::string> validate_pd(const PdCoverInstance& pd) {
    std::vector<std::string> errors;
    auto in_range = [&](int v) { return v >= 0 && v < pd.vertices; };
    for (const auto& [a, b] : pd.edges) {
        if (!in_range(a) || !in_range(b)) {
            errors.push_back("edge endpoint out of range");
        }
    }
    std::set<int> used;
    for (const auto& set : pd.p) {
        for (int v : set) {
            if (!in_range(v)) {
                errors.push_back("vertex " + std::to_string(v) + " in P is out of range");
            } else if (!used.insert(v).second) {
                errors.push_back("vertex " + std::to_string(v) + " appears in two sets of P");
            }
        }
    }
    for (int v : pd.d) {
        if (!in_range(v)) {
            errors.push_back("vertex " + std::to_string(v) + " in D is out of range");
        }
    }
    return errors;
}

bool is_pd_cover(const PdCoverInstance& pd, const std::vector<int>& cover) {
    std::set<int> c(cover.begin(), cover.end());
    for (const auto& [a, b] : pd.edges) {
        if (!c.count(a) && !c.count(b)) {
            return false;
        }
    }
    for (const auto& set : pd.p) {
        int hits = 0;
        for (int v : set) {
            hits += c.count(v) ? 1 : 0;
        }
        if (hits > 1) {
            return false;
        }
    }
    for (int v : pd.d) {
        if (c.count(v)) {
            return false;
        }
    }
    return true;
}

std::optional<std::vector<int>> find_pd_vertex_cover(const PdCoverInstance& pd) {
    auto errors = validate_pd(pd);
    if (!errors.empty()) {
        throw InputError(errors.front());
    }
    TwoSatFormula f;
    f.variables = pd.vertices;
    for (const auto& [a, b] : pd.edges) {
        f.clauses.push_back({a + 1, b + 1});
    }
    for (const auto& set : pd.p) {
        for (std::size_t x = 0; x < set.size(); ++x) {
            for (std::size_t y = x + 1; y < set.size(); ++y) {
                f.clauses.push_back({-(set[x] + 1), -(set[y] + 1)});
            }
        }
    }
    for (int v : pd.d) {
        f.clauses.push_back({-(v + 1)});
    }
    auto assignment = solve_2sat(f);
    if (!assignment) {
        return std::nullopt;
    }
    std::vector<int> cover;
    for (int v = 0; v < pd.vertices; ++v) {
        if ((*assignment)[v]) {
            cover.push_back(v);
        }
    }
    if (!is_pd_cover(pd, cover)) {
        throw std::logic_error("2SAT assignment does not give a (P, D)-vertex cover");
    }
    return cover;
}

ObjectiveChoresGraph make_objective(const Multigraph& g) {
    ObjectiveChoresGraph og;
    og.g = g;
    for (const Edge& e : g.edges) {
        if (e.wa > 0 || e.wb > 0) {
            throw InputError("edge " + e.id + " has a positive weight");
        }
        const bool za = e.wa == 0;
        const bool zb = e.is_loop() ? za : e.wb == 0;
        if (za != zb) {
            throw PreconditionError("edge " + e.id + " is zero to one endpoint only");
        }
        og.tags.push_back(za ? EdgeTag::dummy : EdgeTag::negative);
    }
    return og;
}

bool objective_efx0(const ObjectiveChoresGraph& og, const Receivers& recv) {
    std::vector<int> count(og.g.vertices, 0);
    std::vector<int> negatives(og.g.vertices, 0);
    for (std::size_t k = 0; k < recv.size(); ++k) {
        ++count[recv[k]];
        if (og.tags[k] == EdgeTag::negative) {
            ++negatives[recv[k]];
        }
    }
    for (int v = 0; v < og.g.vertices; ++v) {
        if (count[v] > 1 && negatives[v] > 0) {
            return false;
        }
    }
    return true;
}

std::vector<NegativeComponent> negative_components(const ObjectiveChoresGraph& og) {
    std::vector<int> negative;
    for (std::size_t k = 0; k < og.tags.size(); ++k) {
        if (og.tags[k] == EdgeTag::negative) {
            negative.push_back(static_cast<int>(k));
        }
    }
    return components_of(og.g, negative, true);
}

std::optional<Orientation> efx_orient_objective(const ObjectiveChoresGraph& og) {
    const Multigraph& g = og.g;
    require_chores_graph(g);
    auto comps = negative_components(og);
    for (const auto& c : comps) {
        if (c.negative_edges.size() > c.vertices.size()) {
            return std::nullopt;
        }
    }
    PdCoverInstance pd;
    pd.vertices = g.vertices;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (og.tags[k] == EdgeTag::dummy) {
            pd.edges.emplace_back(g.edges[k].a, g.edges[k].b);
        }
    }
    for (const auto& c : comps) {
        if (c.negative_edges.size() + 1 == c.vertices.size()) {
            pd.p.push_back(c.vertices);
        } else {
            pd.d.insert(pd.d.end(), c.vertices.begin(), c.vertices.end());
        }
    }
    auto cover = find_pd_vertex_cover(pd);
    if (!cover) {
        return std::nullopt;
    }
    std::set<int> in_cover(cover->begin(), cover->end());
    Receivers recv(g.edges.size(), -1);
    std::vector<bool> got_dummy(g.vertices, false);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (og.tags[k] != EdgeTag::dummy) {
            continue;
        }
        const Edge& e = g.edges[k];
        const int lo = std::min(e.a, e.b);
        const int hi = std::max(e.a, e.b);
        recv[k] = in_cover.count(lo) ? lo : hi;
        got_dummy[recv[k]] = true;
    }
    for (const auto& c : comps) {
        int root = c.vertices.front();
        for (int v : c.vertices) {
            if (got_dummy[v]) {
                root = v;
                break;
            }
        }
        orient_pseudoforest(g, c, root, recv);
    }
    if (!objective_efx0(og, recv)) {
        throw std::logic_error("objective EFX0 construction failed its own check");
    }
    return orientation_from_receivers(g, recv);
}

std::optional<Orientation> efx_orient_chores(const Multigraph& g) {
    require_chores_graph(g);
    ObjectiveChoresGraph og;
    og.g.vertices = g.vertices;
    // For each original edge: its index in og, and for subdivided edges the zero side.
    std::vector<int> image(g.edges.size());
    std::vector<int> zero_side(g.edges.size(), -1);
    auto add = [&](Edge e, EdgeTag tag) {
        og.g.edges.push_back(std::move(e));
        og.tags.push_back(tag);
        return static_cast<int>(og.g.edges.size()) - 1;
    };
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        const bool za = e.wa == 0;
        const bool zb = e.is_loop() ? za : e.wb == 0;
        if (za == zb) {
            image[k] = add(e, za ? EdgeTag::dummy : EdgeTag::negative);
            continue;
        }
        const int i = za ? e.a : e.b;
        const int j = za ? e.b : e.a;
        const Rational beta = za ? e.wb : e.wa;
        const int mid = og.g.vertices++;
        image[k] = add(Edge{e.id + "/zero", i, mid, 0, 0}, EdgeTag::dummy);
        add(Edge{e.id + "/negative", j, mid, beta, beta}, EdgeTag::negative);
        zero_side[k] = i;
    }
    auto sub = efx_orient_objective(og);
    if (!sub) {
        return std::nullopt;
    }
    Receivers sub_recv = receivers_of(og.g, *sub);
    Receivers recv(g.edges.size());
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const int r = sub_recv[image[k]];
        if (zero_side[k] < 0) {
            recv[k] = r;
        } else {
            recv[k] = r == zero_side[k] ? r : g.edges[k].other(zero_side[k]);
        }
    }
    if (!orientation_is_efx0(g, recv)) {
        throw std::logic_error("lifted orientation is not EFX0");
    }
    return orientation_from_receivers(g, recv);
}

}  // namespace fairdiv
