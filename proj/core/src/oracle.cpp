#include "fairdiv/oracle.hpp"

#include "detail/graph_eval.hpp"
#include "fairdiv/errors.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

namespace fairdiv {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found:
            return "found";
        case SearchStatus::none:
            return "none";
        case SearchStatus::unknown:
            return "unknown";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

template <class T>
SearchResult<T> over_budget(const SearchBudget& budget, const std::string& what) {
    if (budget.on_exceed == OnExceed::error) {
        throw BudgetExceeded(what + " exceeds the state budget of " + std::to_string(budget.max_states));
    }
    SearchResult<T> r;
    r.status = SearchStatus::unknown;
    return r;
}

std::uint64_t power_saturating(std::uint64_t base, int exponent) {
    std::uint64_t out = 1;
    for (int k = 0; k < exponent; ++k) {
        if (base != 0 && out > kSaturated / base) {
            return kSaturated;
        }
        out *= base;
    }
    return out;
}

}  // namespace

std::uint64_t orientation_count(const Multigraph& g) {
    int free_edges = 0;
    for (const Edge& e : g.edges) {
        free_edges += e.is_loop() ? 0 : 1;
    }
    return power_saturating(2, free_edges);
}

SearchResult<Orientation> enumerate_orientations(const Multigraph& g, const ReceiversPredicate& visit,
                                                 const SearchBudget& budget) {
    if (orientation_count(g) > budget.max_states) {
        return over_budget<Orientation>(budget, "orientation enumeration");
    }
    const std::size_t m = g.edges.size();
    Receivers recv(m);
    for (std::size_t k = 0; k < m; ++k) {
        recv[k] = g.edges[k].a;
    }
    SearchResult<Orientation> r;
    while (true) {
        ++r.visited;
        if (visit(recv)) {
            r.status = SearchStatus::found;
            r.witness = orientation_from_receivers(g, recv);
            return r;
        }
        // Odometer step: the last edge still at endpoint a flips to b, later edges reset.
        std::size_t k = m;
        while (k > 0) {
            const Edge& e = g.edges[k - 1];
            if (!e.is_loop() && recv[k - 1] == e.a) {
                break;
            }
            --k;
        }
        if (k == 0) {
            break;
        }
        recv[k - 1] = g.edges[k - 1].b;
        for (std::size_t j = k; j < m; ++j) {
            recv[j] = g.edges[j].a;
        }
    }
    r.status = SearchStatus::none;
    return r;
}

SearchResult<Allocation> brute_exists_allocation(const Instance& inst, const OwnersPredicate& predicate,
                                                 const SearchBudget& budget) {
    const int n = inst.agents;
    const int m = inst.item_count();
    if (power_saturating(static_cast<std::uint64_t>(n), m) > budget.max_states) {
        return over_budget<Allocation>(budget, "allocation enumeration");
    }
    Owners owners(m, 0);
    SearchResult<Allocation> r;
    while (true) {
        ++r.visited;
        if (predicate(owners)) {
            r.status = SearchStatus::found;
            r.witness = allocation_from_owners(inst, owners);
            return r;
        }
        int k = m - 1;
        while (k >= 0 && owners[k] == n - 1) {
            owners[k] = 0;
            --k;
        }
        if (k < 0) {
            break;
        }
        ++owners[k];
    }
    r.status = SearchStatus::none;
    return r;
}

namespace {

ReceiversPredicate orientation_predicate(const Multigraph& g, Criterion criterion) {
    if (criterion != Criterion::efx0 && criterion != Criterion::ef1) {
        auto pred = make_predicate(graphical_to_instance(g), criterion);
        return [pred](const Receivers& recv) { return pred(recv); };
    }
    if (auto ev = detail::GraphEvaluator::build(g)) {
        auto shared = std::make_shared<detail::GraphEvaluator>(std::move(*ev));
        if (criterion == Criterion::efx0) {
            return [shared](const Receivers& recv) { return shared->efx0(recv); };
        }
        return [shared](const Receivers& recv) { return shared->ef1(recv); };
    }
    auto pred = make_predicate(graphical_to_instance(g), criterion);
    return [pred](const Receivers& recv) { return pred(recv); };
}

}  // namespace

SearchResult<Orientation> brute_orientation(const Multigraph& g, Criterion criterion,
                                            const SearchBudget& budget) {
    return enumerate_orientations(g, orientation_predicate(g, criterion), budget);
}

namespace {

class PrunedSearch {
public:
    PrunedSearch(const Multigraph& g, detail::GraphEvaluator ev, Criterion criterion,
                 const SearchBudget& budget)
        : g_(g), ev_(std::move(ev)), efx_(criterion == Criterion::efx0), budget_(budget) {
        const int n = ev_.vertices();
        const auto& edges = ev_.edges();
        incident_.assign(n, {});
        for (std::size_t k = 0; k < edges.size(); ++k) {
            incident_[edges[k].a].push_back(static_cast<int>(k));
            if (edges[k].b != edges[k].a) {
                incident_[edges[k].b].push_back(static_cast<int>(k));
            }
        }
        neighbours_.assign(n, {});
        for (const auto& e : edges) {
            if (e.a != e.b) {
                neighbours_[e.a].push_back(e.b);
                neighbours_[e.b].push_back(e.a);
            }
        }
        for (auto& list : neighbours_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        recv_.assign(edges.size(), -1);
        remaining_.assign(n, 0);
        for (int v = 0; v < n; ++v) {
            remaining_[v] = static_cast<int>(incident_[v].size());
        }
        own_.assign(n, 0);
        held_.assign(n, 0);
        pair_value_.assign(n, 0);
        pair_min_.assign(n, 0);
        pair_max_.assign(n, 0);
        pair_count_.assign(n, 0);
        vertex_stamp_.assign(n, 0);
        edge_stamp_.assign(edges.size(), 0);
    }

    SearchResult<Orientation> run() {
        SearchResult<Orientation> r;
        bool found = false;
        try {
            std::vector<int> all(ev_.vertices());
            std::iota(all.begin(), all.end(), 0);
            found = dfs(std::move(all));
        } catch (const Exhausted&) {
            return over_budget<Orientation>(budget_, "pruned orientation search");
        }
        r.visited = visited_;
        if (found) {
            r.status = SearchStatus::found;
            r.witness = orientation_from_receivers(g_, recv_);
        } else {
            r.status = SearchStatus::none;
        }
        return r;
    }

private:
    struct Exhausted {};

    void place(int k, int r, int sign) {
        const auto& e = ev_.edges()[k];
        recv_[k] = sign > 0 ? r : -1;
        own_[r] += sign * (r == e.a ? e.wa : e.wb);
        held_[r] += sign;
        remaining_[e.a] -= sign;
        if (e.b != e.a) {
            remaining_[e.b] -= sign;
        }
    }

    // Checks vertex x against bounds that the undecided edges cannot repair. Goods: x gets at
    // most its undecided edges on top of what it holds, its view of y only grows, and the
    // item EFX0 may drop from y only gets cheaper. Chores: x must be complete, after which
    // everything x compares is fixed.
    bool vertex_ok(int x) {
        const auto& edges = ev_.edges();
        std::int64_t own_min = std::numeric_limits<std::int64_t>::max();
        std::int64_t own_max = std::numeric_limits<std::int64_t>::min();
        touched_.clear();
        std::int64_t open_sum = 0;
        std::int64_t open_max = 0;
        for (int k : incident_[x]) {
            const auto& e = edges[k];
            const std::int64_t wx = x == e.a ? e.wa : e.wb;
            if (recv_[k] < 0) {
                open_sum += wx;
                open_max = std::max(open_max, wx);
                continue;
            }
            if (recv_[k] == x) {
                own_min = std::min(own_min, wx);
                own_max = std::max(own_max, wx);
                continue;
            }
            const int y = recv_[k];
            if (pair_count_[y] == 0) {
                touched_.push_back(y);
                pair_value_[y] = 0;
                pair_min_[y] = std::numeric_limits<std::int64_t>::max();
                pair_max_[y] = std::numeric_limits<std::int64_t>::min();
            }
            ++pair_count_[y];
            pair_value_[y] += wx;
            pair_min_[y] = std::min(pair_min_[y], wx);
            pair_max_[y] = std::max(pair_max_[y], wx);
        }
        bool ok = true;
        if (ev_.goods()) {
            const std::int64_t own_best = own_[x] + open_sum;
            for (int y : touched_) {
                if (!(own_best < pair_value_[y])) {
                    continue;
                }
                std::int64_t removable;
                if (efx_) {
                    removable = held_[y] > pair_count_[y] ? 0 : pair_min_[y];
                } else {
                    removable = std::max(pair_max_[y], open_max);
                }
                if (own_best < pair_value_[y] - removable) {
                    ok = false;
                    break;
                }
            }
        } else if (held_[x] > 0) {
            int charged = 0;
            std::int64_t best_other = std::numeric_limits<std::int64_t>::min();
            for (int y : touched_) {
                if (pair_value_[y] < 0) {
                    ++charged;
                    best_other = std::max(best_other, pair_value_[y]);
                }
            }
            if (charged < ev_.vertices() - 1) {
                best_other = 0;
            }
            ok = own_[x] - (efx_ ? own_max : own_min) >= best_other;
        }
        for (int y : touched_) {
            pair_count_[y] = 0;
        }
        return ok;
    }

    // A vertex whose bounds already fail rules the placement out. Goods with EFX0: r now
    // holding an edge can also zero out what a neighbour of r may drop from r's bundle.
    bool consistent(int k) {
        const auto& e = ev_.edges()[k];
        if (!ev_.goods()) {
            return (remaining_[e.a] != 0 || vertex_ok(e.a)) && (remaining_[e.b] != 0 || vertex_ok(e.b));
        }
        if (!vertex_ok(e.a) || (e.b != e.a && !vertex_ok(e.b))) {
            return false;
        }
        if (efx_) {
            for (int z : neighbours_[recv_[k]]) {
                if (z != e.a && z != e.b && !vertex_ok(z)) {
                    return false;
                }
            }
        }
        return true;
    }

    bool feasible(int k, int r) {
        if (++visited_ > budget_.max_states) {
            throw Exhausted{};
        }
        place(k, r, +1);
        const bool ok = consistent(k);
        place(k, r, -1);
        return ok;
    }

    // Open edges whose feasibility may have changed after vertices in `changed` moved: the
    // edges at those vertices and at their neighbours.
    void collect(const std::vector<int>& changed, std::vector<int>& out) {
        ++stamp_;
        out.clear();
        auto visit = [&](int v) {
            if (vertex_stamp_[v] == stamp_) {
                return;
            }
            vertex_stamp_[v] = stamp_;
            for (int k : incident_[v]) {
                if (recv_[k] < 0 && edge_stamp_[k] != stamp_) {
                    edge_stamp_[k] = stamp_;
                    out.push_back(k);
                }
            }
        };
        for (int v : changed) {
            visit(v);
            for (int z : neighbours_[v]) {
                visit(z);
            }
        }
        std::sort(out.begin(), out.end());
    }

    // Forward checking: open edges near the last change are tried both ways; edges with one
    // consistent direction are placed, a dead edge backtracks, and otherwise the search
    // branches on an open edge at the vertex with the fewest open edges. Bounds only tighten
    // along a branch, so edges far from every change keep both directions.
    bool dfs(std::vector<int> changed) {
        const auto& edges = ev_.edges();
        std::vector<int> forced;
        auto undo = [&] {
            for (auto it = forced.rbegin(); it != forced.rend(); ++it) {
                place(*it, recv_[*it], -1);
            }
            return false;
        };
        std::vector<int> work;
        while (!changed.empty()) {
            collect(changed, work);
            changed.clear();
            for (int k : work) {
                if (recv_[k] >= 0) {
                    continue;
                }
                const auto& e = edges[k];
                int options = 0;
                int last = -1;
                for (int side = 0; side < (e.a == e.b ? 1 : 2); ++side) {
                    const int r = side == 0 ? e.a : e.b;
                    if (!feasible(k, r)) {
                        continue;
                    }
                    ++options;
                    last = r;
                }
                if (options == 0) {
                    return undo();
                }
                if (options == 1) {
                    place(k, last, +1);
                    forced.push_back(k);
                    changed.push_back(e.a);
                    if (e.b != e.a) {
                        changed.push_back(e.b);
                    }
                }
            }
        }
        int branch = -1;
        int branch_rank = std::numeric_limits<int>::max();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (recv_[k] >= 0) {
                continue;
            }
            const int rank = std::min(remaining_[edges[k].a], remaining_[edges[k].b]);
            if (rank < branch_rank) {
                branch_rank = rank;
                branch = static_cast<int>(k);
            }
        }
        if (branch < 0) {
            if (efx_ ? ev_.efx0(recv_) : ev_.ef1(recv_)) {
                return true;
            }
            return undo();
        }
        const auto& e = edges[branch];
        for (int r : {e.a, e.b}) {
            if (++visited_ > budget_.max_states) {
                throw Exhausted{};
            }
            place(branch, r, +1);
            if (consistent(branch) && dfs({e.a, e.b})) {
                return true;
            }
            place(branch, r, -1);
        }
        return undo();
    }

    const Multigraph& g_;
    detail::GraphEvaluator ev_;
    bool efx_;
    SearchBudget budget_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<int>> neighbours_;
    Receivers recv_;
    std::vector<int> remaining_;
    std::vector<std::int64_t> own_;
    std::vector<int> held_;
    std::vector<std::int64_t> pair_value_;
    std::vector<std::int64_t> pair_min_;
    std::vector<std::int64_t> pair_max_;
    std::vector<int> pair_count_;
    std::vector<int> touched_;
    std::vector<std::uint64_t> vertex_stamp_;
    std::vector<std::uint64_t> edge_stamp_;
    std::uint64_t stamp_ = 0;
    std::uint64_t visited_ = 0;
};

}  // namespace

SearchResult<Orientation> search_orientation(const Multigraph& g, Criterion criterion,
                                             const SearchBudget& budget) {
    if (criterion != Criterion::efx0 && criterion != Criterion::ef1) {
        throw PreconditionError("pruned orientation search supports efx0 and ef1 only");
    }
    auto ev = detail::GraphEvaluator::build(g);
    if (!ev) {
        return brute_orientation(g, criterion, budget);
    }
    return PrunedSearch(g, std::move(*ev), criterion, budget).run();
}

std::optional<Equipartition> brute_equipartition(const std::vector<long>& s) {
    if (s.size() > kEquipartitionGuard) {
        throw SizeGuardError("equipartition oracle handles at most 24 numbers");
    }
    const long total = std::accumulate(s.begin(), s.end(), 0L);
    if (total % 2 != 0) {
        return std::nullopt;
    }
    const std::uint32_t limit = std::uint32_t{1} << s.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        long sum = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (mask >> k & 1U) {
                sum += s[k];
            }
        }
        if (2 * sum != total) {
            continue;
        }
        Equipartition out;
        for (std::size_t k = 0; k < s.size(); ++k) {
            (mask >> k & 1U ? out.first : out.second).push_back(s[k]);
        }
        return out;
    }
    return std::nullopt;
}

std::optional<std::vector<bool>> brute_2sat(const TwoSatFormula& f) {
    if (f.variables > kTwoSatOracleGuard) {
        throw SizeGuardError("2SAT oracle handles at most 20 variables");
    }
    const std::uint32_t limit = std::uint32_t{1} << f.variables;
    std::vector<bool> assignment(f.variables);
    for (std::uint32_t code = 0; code < limit; ++code) {
        for (int k = 0; k < f.variables; ++k) {
            assignment[k] = (code >> (f.variables - 1 - k)) & 1U;
        }
        if (satisfies(f, assignment)) {
            return assignment;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<bool>> brute_circuit_sat(const Circuit& c) {
    const int n = circuit_input_count(c);
    if (n > kCircuitOracleGuard) {
        throw SizeGuardError("circuit oracle handles at most 20 inputs");
    }
    const std::uint32_t limit = std::uint32_t{1} << n;
    std::vector<bool> assignment(n);
    for (std::uint32_t code = 0; code < limit; ++code) {
        for (int k = 0; k < n; ++k) {
            assignment[k] = (code >> (n - 1 - k)) & 1U;
        }
        if (evaluate_circuit(c, assignment).at(c.output)) {
            return assignment;
        }
    }
    return std::nullopt;
}

}  // namespace fairdiv
