#include "fairdiv/efx_multigraph.hpp"

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fairdiv {

std::string to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::trivial:
            return "trivial";
        case ComponentKind::type1:
            return "type1";
        case ComponentKind::type2:
            return "type2";
        case ComponentKind::ntom:
            return "ntom";
    }
    return "?";
}

std::string to_string(BivaluedVerdict v) {
    return v == BivaluedVerdict::oriented ? "oriented" : "ntom-blocked";
}

std::vector<std::string> validate_bivalued(const BiValuedGraph& bg) {
    std::vector<std::string> errors = validate_multigraph(bg.g);
    if (!(bg.beta >= 0)) {
        errors.push_back("beta must be non-negative");
    }
    if (!(bg.alpha > bg.beta)) {
        errors.push_back("alpha must exceed beta");
    }
    for (const Edge& e : bg.g.edges) {
        if (e.wa != e.wb) {
            errors.push_back("edge " + e.id + " is not symmetric");
        } else if (e.wa != bg.alpha && e.wa != bg.beta) {
            errors.push_back("edge " + e.id + " has a weight other than alpha or beta");
        }
    }
    return errors;
}

BiValuedGraph infer_bivalued(const Multigraph& g) {
    std::set<Rational> weights;
    for (const Edge& e : g.edges) {
        if (e.wa != e.wb) {
            throw InputError("edge " + e.id + " is not symmetric");
        }
        if (e.wa < 0) {
            throw InputError("edge " + e.id + " has a negative weight");
        }
        weights.insert(e.wa);
    }
    if (weights.size() > 2) {
        throw InputError("a bi-valued graph has at most two distinct weights");
    }
    BiValuedGraph bg;
    bg.g = g;
    if (weights.empty()) {
        bg.beta = 0;
        bg.alpha = 1;
    } else if (weights.size() == 1) {
        bg.beta = *weights.begin();
        bg.alpha = bg.beta + 1;
    } else {
        bg.beta = *weights.begin();
        bg.alpha = *weights.rbegin();
    }
    return bg;
}

namespace {

using Pair = std::pair<int, int>;

Pair ordered(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

std::vector<std::vector<int>> incidence(const Multigraph& g) {
    std::vector<std::vector<int>> at(g.vertices);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        at[e.a].push_back(static_cast<int>(k));
        if (e.b != e.a) {
            at[e.b].push_back(static_cast<int>(k));
        }
    }
    return at;
}

// Heavy non-loop edges forming a BFS spanning tree of the component from `root`; the
// first edge (by index) reaching each new vertex is used.
std::vector<int> heavy_tree(const BiValuedGraph& bg, int root) {
    auto at = incidence(bg.g);
    std::vector<bool> seen(bg.g.vertices, false);
    std::deque<int> queue{root};
    seen[root] = true;
    std::vector<int> tree;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int k : at[x]) {
            const Edge& e = bg.g.edges[k];
            if (e.is_loop() || !bg.heavy(e)) {
                continue;
            }
            int y = e.other(x);
            if (!seen[y]) {
                seen[y] = true;
                tree.push_back(k);
                queue.push_back(y);
            }
        }
    }
    return tree;
}

// Orients `tree` away from the given roots (which count as already reached).
void orient_away(const BiValuedGraph& bg, const std::vector<int>& tree, const std::vector<int>& roots,
                 Receivers& recv) {
    std::vector<std::vector<int>> at(bg.g.vertices);
    for (int k : tree) {
        at[bg.g.edges[k].a].push_back(k);
        at[bg.g.edges[k].b].push_back(k);
    }
    std::vector<bool> seen(bg.g.vertices, false);
    std::deque<int> queue;
    for (int r : roots) {
        seen[r] = true;
        queue.push_back(r);
    }
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int k : at[x]) {
            int y = bg.g.edges[k].other(x);
            if (!seen[y]) {
                seen[y] = true;
                recv[k] = y;
                queue.push_back(y);
            }
        }
    }
}

void require_kind(const HeavyComponent& k, ComponentKind kind) {
    if (k.kind != kind) {
        throw PreconditionError("expected a " + to_string(kind) + " heavy component, got " + to_string(k.kind));
    }
}

struct Subgraph {
    BiValuedGraph bg;
    std::vector<int> edge_map;  // local edge -> edge of the parent graph
};

Subgraph restrict_to(const BiValuedGraph& bg, const std::vector<int>& vertices) {
    std::vector<int> local(bg.g.vertices, -1);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        local[vertices[k]] = static_cast<int>(k);
    }
    Subgraph sub;
    sub.bg.alpha = bg.alpha;
    sub.bg.beta = bg.beta;
    sub.bg.g.vertices = static_cast<int>(vertices.size());
    for (std::size_t k = 0; k < bg.g.edges.size(); ++k) {
        Edge e = bg.g.edges[k];
        if (local[e.a] < 0) {
            continue;
        }
        e.a = local[e.a];
        e.b = local[e.b];
        sub.bg.g.edges.push_back(e);
        sub.edge_map.push_back(static_cast<int>(k));
    }
    return sub;
}

std::vector<std::vector<int>> connected_components(const Multigraph& g) {
    std::vector<int> parent(g.vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const Edge& e : g.edges) {
        parent[find(e.a)] = find(e.b);
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < g.vertices; ++v) {
        groups[find(v)].push_back(v);
    }
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : groups) {
        out.push_back(std::move(vs));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_efx0(const Multigraph& g, const Receivers& recv) { return orientation_is_efx0(g, recv); }

}  // namespace

std::vector<HeavyComponent> classify_components(const BiValuedGraph& bg) {
    const Multigraph& g = bg.g;
    std::vector<int> parent(g.vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const Edge& e : g.edges) {
        if (!e.is_loop() && bg.heavy(e)) {
            parent[find(e.a)] = find(e.b);
        }
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < g.vertices; ++v) {
        groups[find(v)].push_back(v);
    }
    std::vector<HeavyComponent> out;
    for (auto& [root, vs] : groups) {
        HeavyComponent k;
        k.vertices = vs;
        if (vs.size() == 1) {
            out.push_back(std::move(k));
            continue;
        }
        std::set<int> members(vs.begin(), vs.end());
        std::map<Pair, int> multiplicity;
        std::optional<int> heavy_loop;
        for (std::size_t idx = 0; idx < g.edges.size(); ++idx) {
            const Edge& e = g.edges[idx];
            if (!bg.heavy(e) || !members.count(e.a)) {
                continue;
            }
            if (e.is_loop()) {
                if (!heavy_loop) {
                    heavy_loop = static_cast<int>(idx);
                }
            } else {
                ++multiplicity[ordered(e.a, e.b)];
            }
        }
        if (heavy_loop) {
            k.kind = ComponentKind::type2;
            k.witness_edge = heavy_loop;
        } else if (multiplicity.size() + 1 != vs.size()) {
            k.kind = ComponentKind::type2;
            std::set<Pair> tree_pairs;
            for (int t : heavy_tree(bg, vs.front())) {
                tree_pairs.insert(ordered(g.edges[t].a, g.edges[t].b));
            }
            for (std::size_t idx = 0; idx < g.edges.size(); ++idx) {
                const Edge& e = g.edges[idx];
                if (bg.heavy(e) && !e.is_loop() && members.count(e.a) && !tree_pairs.count(ordered(e.a, e.b))) {
                    k.witness_edge = static_cast<int>(idx);
                    break;
                }
            }
        } else {
            for (const auto& [p, count] : multiplicity) {
                if (count % 2 == 0) {
                    k.pair = p;
                    break;
                }
            }
            k.kind = k.pair ? ComponentKind::type1 : ComponentKind::ntom;
            k.ntom = !k.pair;
        }
        out.push_back(std::move(k));
    }
    return out;
}

Type1Orientation orient_type1(const BiValuedGraph& bg, const HeavyComponent& k) {
    require_kind(k, ComponentKind::type1);
    const auto [v, w] = *k.pair;
    Type1Orientation out;
    out.v = v;
    out.w = w;
    out.partial.assign(bg.g.edges.size(), -1);
    std::vector<int> heavy, light;
    for (std::size_t idx = 0; idx < bg.g.edges.size(); ++idx) {
        const Edge& e = bg.g.edges[idx];
        if (ordered(e.a, e.b) == Pair{v, w}) {
            (bg.heavy(e) ? heavy : light).push_back(static_cast<int>(idx));
        }
    }
    for (std::size_t p = 0; p < heavy.size(); ++p) {
        out.partial[heavy[p]] = p < heavy.size() / 2 ? v : w;
    }
    const std::size_t half = light.size() / 2;
    for (std::size_t p = 0; p < 2 * half; ++p) {
        out.partial[light[p]] = p < half ? v : w;
    }
    std::vector<int> tree;
    for (int t : heavy_tree(bg, v)) {
        if (ordered(bg.g.edges[t].a, bg.g.edges[t].b) != Pair{v, w}) {
            tree.push_back(t);
        }
    }
    orient_away(bg, tree, {v, w}, out.partial);
    return out;
}

Receivers orient_type2(const BiValuedGraph& bg, const HeavyComponent& k) {
    require_kind(k, ComponentKind::type2);
    Receivers recv(bg.g.edges.size(), -1);
    const Edge& witness = bg.g.edges[*k.witness_edge];
    const int v = witness.a;
    orient_away(bg, heavy_tree(bg, k.vertices.front()), {v}, recv);
    recv[*k.witness_edge] = v;
    return recv;
}

TwoWaySplit two_agent_efx_split(const std::vector<Rational>& weights) {
    for (const Rational& w : weights) {
        if (w < 0) {
            throw PreconditionError("two-agent split needs non-negative weights");
        }
    }
    std::vector<int> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weights[b] < weights[a]; });
    TwoWaySplit split;
    Rational first = 0, second = 0;
    for (int idx : order) {
        if (second < first) {
            split.second.push_back(idx);
            second += weights[idx];
        } else {
            split.first.push_back(idx);
            first += weights[idx];
        }
    }
    std::sort(split.first.begin(), split.first.end());
    std::sort(split.second.begin(), split.second.end());
    return split;
}

MatchingPartial orient_all_but_matching(const BiValuedGraph& bg) {
    const Multigraph& g = bg.g;
    const int n = g.vertices;
    auto components = classify_components(bg);
    std::vector<int> comp_of(n, -1);
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (components[c].kind == ComponentKind::ntom) {
            throw PreconditionError("a heavy component is an NTOM");
        }
        for (int v : components[c].vertices) {
            comp_of[v] = static_cast<int>(c);
        }
    }
    for (const auto& cc : connected_components(g)) {
        bool anchored = std::any_of(cc.begin(), cc.end(), [&](int v) {
            return components[comp_of[v]].kind != ComponentKind::trivial;
        });
        if (!anchored) {
            throw PreconditionError("every connected component needs a non-trivial heavy component");
        }
    }

    Receivers recv(g.edges.size(), -1);
    std::set<Pair> special;
    auto merge = [&](const Receivers& part) {
        for (std::size_t k = 0; k < part.size(); ++k) {
            if (part[k] >= 0) {
                recv[k] = part[k];
            }
        }
    };
    std::vector<bool> processed(n, false);
    for (const auto& k : components) {
        if (k.kind == ComponentKind::type1) {
            auto t1 = orient_type1(bg, k);
            merge(t1.partial);
            special.insert(ordered(t1.v, t1.w));
        } else if (k.kind == ComponentKind::type2) {
            merge(orient_type2(bg, k));
        } else {
            continue;
        }
        for (int v : k.vertices) {
            processed[v] = true;
        }
    }

    // Each unprocessed vertex takes one light edge from the processed neighbour that
    // reaches it first.
    auto at = incidence(g);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
        if (processed[v]) {
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        std::map<int, int> first_edge;  // neighbour -> smallest edge index
        for (int k : at[i]) {
            const Edge& e = g.edges[k];
            if (!e.is_loop() && !first_edge.count(e.other(i))) {
                first_edge[e.other(i)] = k;
            }
        }
        for (const auto& [j, k] : first_edge) {
            if (!processed[j]) {
                processed[j] = true;
                recv[k] = j;
                queue.push_back(j);
            }
        }
    }

    // Pairwise extension: the unoriented edges between i and j are split so that neither
    // endpoint envies the other; the endpoint already holding an edge of the pair gets the
    // lighter side.
    std::map<Pair, std::vector<int>> between;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (!e.is_loop()) {
            between[ordered(e.a, e.b)].push_back(static_cast<int>(k));
        }
    }
    auto orient_loops = [&](int v) {
        for (int k : at[v]) {
            if (g.edges[k].is_loop() && recv[k] < 0) {
                recv[k] = v;
            }
        }
    };
    for (const auto& [p, edges] : between) {
        if (special.count(p)) {
            continue;
        }
        int holder = p.first;
        std::vector<int> open;
        for (int k : edges) {
            if (recv[k] >= 0) {
                holder = recv[k];
            } else {
                open.push_back(k);
            }
        }
        const int other = holder == p.first ? p.second : p.first;
        std::vector<Rational> weights;
        for (int k : open) {
            weights.push_back(g.edges[k].wa);
        }
        TwoWaySplit split = two_agent_efx_split(weights);
        Rational first = 0, second = 0;
        for (int idx : split.first) first += weights[idx];
        for (int idx : split.second) second += weights[idx];
        const bool other_takes_first = !(first < second);
        for (int idx : split.first) recv[open[idx]] = other_takes_first ? other : holder;
        for (int idx : split.second) recv[open[idx]] = other_takes_first ? holder : other;
        orient_loops(p.first);
        orient_loops(p.second);
    }
    for (int v = 0; v < n; ++v) {
        orient_loops(v);
    }

    MatchingPartial out;
    out.partial = recv;
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (recv[k] >= 0) {
            continue;
        }
        const Edge& e = g.edges[k];
        if (bg.heavy(e) || used[e.a] || used[e.b]) {
            throw std::logic_error("unoriented edges do not form a light matching");
        }
        used[e.a] = used[e.b] = true;
        out.matching.push_back(static_cast<int>(k));
    }
    return out;
}

Receivers finalize_matching(const BiValuedGraph& bg, const Receivers& partial, const std::vector<int>& matching) {
    Receivers recv = partial;
    for (int k : matching) {
        const Edge& e = bg.g.edges[k];
        if (partial[k] >= 0) {
            throw PreconditionError("matching edge " + e.id + " is already oriented");
        }
        auto outside = [&](int x) {
            const int y = e.other(x);
            for (std::size_t t = 0; t < partial.size(); ++t) {
                const Edge& f = bg.g.edges[t];
                if (partial[t] == x && ordered(f.a, f.b) != ordered(x, y)) {
                    return true;
                }
            }
            return false;
        };
        const int lo = std::min(e.a, e.b);
        const int hi = std::max(e.a, e.b);
        const bool lo_out = outside(lo);
        const bool hi_out = outside(hi);
        const int v = (hi_out && !lo_out) ? hi : lo;
        recv[k] = v == lo ? hi : lo;
    }
    return recv;
}

namespace {

Receivers balance_in_degrees(const Multigraph& g) {
    const int n = g.vertices;
    Receivers recv(g.edges.size());
    std::vector<int> indeg(n, 0);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        recv[k] = std::min(g.edges[k].a, g.edges[k].b);
        ++indeg[recv[k]];
    }
    auto at = incidence(g);
    // Moves one unit of in-degree from a vertex to one with in-degree at least two lower,
    // along a path of edges each held by its tail. The sum of squared in-degrees drops
    // every round, so this terminates.
    while (true) {
        std::vector<int> by_degree(n);
        std::iota(by_degree.begin(), by_degree.end(), 0);
        std::stable_sort(by_degree.begin(), by_degree.end(), [&](int a, int b) { return indeg[a] > indeg[b]; });
        bool moved = false;
        for (int h : by_degree) {
            std::vector<int> via(n, -2);
            std::deque<int> queue{h};
            via[h] = -1;
            int low = h;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                if (indeg[x] < indeg[low]) {
                    low = x;
                }
                for (int k : at[x]) {
                    const Edge& e = g.edges[k];
                    if (e.is_loop() || recv[k] != x) {
                        continue;
                    }
                    int y = e.other(x);
                    if (via[y] == -2) {
                        via[y] = k;
                        queue.push_back(y);
                    }
                }
            }
            if (indeg[h] - indeg[low] < 2) {
                continue;
            }
            for (int x = low; x != h;) {
                int k = via[x];
                int prev = g.edges[k].other(x);
                recv[k] = x;
                x = prev;
            }
            --indeg[h];
            ++indeg[low];
            moved = true;
            break;
        }
        if (!moved) {
            return recv;
        }
    }
}

}  // namespace

namespace {

Receivers trivial_orientation(const BiValuedGraph& bg, bool* fallback) {
    for (const auto& k : classify_components(bg)) {
        if (k.kind != ComponentKind::trivial) {
            throw PreconditionError("every heavy component must be trivial");
        }
    }
    const Multigraph& g = bg.g;
    Receivers recv;
    if (bg.beta == 0) {
        for (const Edge& e : g.edges) {
            recv.push_back(std::min(e.a, e.b));
        }
    } else {
        recv = balance_in_degrees(g);
    }
    if (is_efx0(g, recv)) {
        return recv;
    }
    auto found = search_orientation(g, Criterion::efx0);
    if (!found.witness) {
        throw std::logic_error("no EFX0 orientation found for an all-light graph");
    }
    if (fallback) {
        *fallback = true;
    }
    return receivers_of(g, *found.witness);
}

}  // namespace

Receivers orient_trivial_case(const BiValuedGraph& bg) { return trivial_orientation(bg, nullptr); }

BivaluedResult efx_orient_bivalued(const BiValuedGraph& bg) {
    auto errors = validate_bivalued(bg);
    if (!errors.empty()) {
        throw InputError(errors.front());
    }
    BivaluedResult result;
    result.components = classify_components(bg);
    for (const auto& k : result.components) {
        if (k.ntom) {
            result.verdict = BivaluedVerdict::ntom_blocked;
            return result;
        }
    }
    Receivers recv(bg.g.edges.size(), -1);
    for (const auto& cc : connected_components(bg.g)) {
        Subgraph sub = restrict_to(bg, cc);
        bool trivial = true;
        for (const auto& k : classify_components(sub.bg)) {
            trivial = trivial && k.kind == ComponentKind::trivial;
        }
        Receivers local;
        if (trivial) {
            local = trivial_orientation(sub.bg, &result.fallback);
        } else {
            auto partial = orient_all_but_matching(sub.bg);
            local = finalize_matching(sub.bg, partial.partial, partial.matching);
        }
        if (!is_efx0(sub.bg.g, local)) {
            auto found = search_orientation(sub.bg.g, Criterion::efx0);
            if (!found.witness) {
                throw std::logic_error("no EFX0 orientation found for an NTOM-free component");
            }
            local = receivers_of(sub.bg.g, *found.witness);
            result.fallback = true;
        }
        for (std::size_t k = 0; k < local.size(); ++k) {
            recv[sub.edge_map[k]] = cc[local[k]];
        }
    }
    result.orientation = orientation_from_receivers(bg.g, recv);
    return result;
}

}  // namespace fairdiv
