#include "fairdiv/allocators.hpp"

#include "fairdiv/errors.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace fairdiv {

namespace {

PickingOrder checked_order(const Instance& inst, const PickingOrder& order) {
    if (order.empty()) {
        PickingOrder identity(inst.agents);
        for (int i = 0; i < inst.agents; ++i) {
            identity[i] = i;
        }
        return identity;
    }
    std::vector<bool> seen(inst.agents, false);
    if (static_cast<int>(order.size()) != inst.agents) {
        throw InputError("picking order must list every agent exactly once");
    }
    for (int i : order) {
        if (i < 0 || i >= inst.agents || seen[i]) {
            throw InputError("picking order must be a permutation of 0.." + std::to_string(inst.agents - 1));
        }
        seen[i] = true;
    }
    return order;
}

bool has_positive(const Instance& inst) {
    for (int i = 0; i < inst.agents; ++i) {
        for (int j = 0; j < inst.item_count(); ++j) {
            if (!inst.is_forbidden(i, j) && inst.utilities[i][j] > 0) {
                return true;
            }
        }
    }
    return false;
}

bool has_negative(const Instance& inst) {
    for (int i = 0; i < inst.agents; ++i) {
        for (int j = 0; j < inst.item_count(); ++j) {
            if (inst.is_forbidden(i, j) || inst.utilities[i][j] < 0) {
                return true;
            }
        }
    }
    return false;
}

bool objective_chore(const Instance& inst, int j) {
    for (int i = 0; i < inst.agents; ++i) {
        if (!inst.is_forbidden(i, j) && inst.utilities[i][j] > 0) {
            return false;
        }
    }
    return true;
}

// Round-robin over `items`; entries of -1 are zero-valued dummies that are picked but
// never recorded. With `may_pass` an agent whose best remaining item is worth less than
// nothing to it skips its turn, as if it took a dummy.
void pick_in_turns(const Instance& inst, const std::vector<int>& items, const PickingOrder& order,
                   Owners& owners, bool may_pass = false) {
    std::vector<bool> taken(items.size(), false);
    std::size_t turn = 0;
    for (std::size_t left = items.size(); left > 0; ++turn) {
        const int agent = order[turn % order.size()];
        std::size_t best = items.size();
        Value best_value;
        for (std::size_t p = 0; p < items.size(); ++p) {
            if (taken[p]) {
                continue;
            }
            Value v = items[p] < 0 ? Value() : inst.value(agent, items[p]);
            if (best == items.size() || best_value < v) {
                best = p;
                best_value = v;
            }
        }
        if (may_pass && best_value < Value()) {
            continue;
        }
        taken[best] = true;
        --left;
        if (items[best] >= 0) {
            owners[items[best]] = agent;
        }
    }
}

std::vector<std::vector<Value>> bundle_values(const Instance& inst, const Owners& owners) {
    std::vector<std::vector<Value>> v(inst.agents, std::vector<Value>(inst.agents));
    for (int j = 0; j < inst.item_count(); ++j) {
        if (owners[j] < 0) {
            continue;
        }
        for (int i = 0; i < inst.agents; ++i) {
            v[i][owners[j]] += inst.value(i, j);
        }
    }
    return v;
}

void shift_along(Owners& owners, const std::vector<int>& cycle) {
    // Agent cycle[p] takes the bundle of cycle[p + 1].
    const std::size_t k = cycle.size();
    for (int& o : owners) {
        if (o < 0) {
            continue;
        }
        auto it = std::find(cycle.begin(), cycle.end(), o);
        if (it == cycle.end()) {
            continue;
        }
        std::size_t p = static_cast<std::size_t>(it - cycle.begin());
        o = cycle[(p + k - 1) % k];
    }
}

enum class Receiver { unenvied, envies_nobody };

void eliminate_and_give(const Instance& inst, Owners& owners, int item, EnvyGraphKind kind,
                        const std::vector<bool>& active, Receiver rule, const ShiftObserver& observer) {
    while (true) {
        EnvyGraph g = envy_graph(inst, owners, kind, active);
        if (auto cycle = find_envy_cycle(g)) {
            Owners before = owners;
            shift_along(owners, *cycle);
            if (observer) {
                observer(before, owners);
            }
            continue;
        }
        std::vector<int> indegree(inst.agents, 0);
        for (int i = 0; i < inst.agents; ++i) {
            for (int j : g.out[i]) {
                ++indegree[j];
            }
        }
        for (int i = 0; i < inst.agents; ++i) {
            if (!active.empty() && !active[i]) {
                continue;
            }
            bool ok = rule == Receiver::unenvied ? indegree[i] == 0 : g.out[i].empty();
            if (ok) {
                owners[item] = i;
                return;
            }
        }
        throw std::logic_error("acyclic envy graph without a free vertex");
    }
}

}  // namespace

Allocation round_robin(const Instance& inst, const PickingOrder& order, const RoundRobinOptions& options) {
    if (!options.allow_mixed && has_positive(inst) && has_negative(inst)) {
        throw PreconditionError("round robin needs a goods instance or a chores instance; "
                                "use double round robin for mixed instances");
    }
    PickingOrder sigma = checked_order(inst, order);
    Owners owners(inst.item_count(), -1);
    std::vector<int> items(inst.item_count());
    for (int j = 0; j < inst.item_count(); ++j) {
        items[j] = j;
    }
    pick_in_turns(inst, items, sigma, owners);
    return allocation_from_owners(inst, owners);
}

Allocation double_round_robin(const Instance& inst) {
    const int n = inst.agents;
    std::vector<int> chores;
    std::vector<int> rest;
    for (int j = 0; j < inst.item_count(); ++j) {
        (objective_chore(inst, j) ? chores : rest).push_back(j);
    }
    const int pad = (n - static_cast<int>(chores.size()) % n) % n;
    chores.insert(chores.end(), pad, -1);
    PickingOrder forward = checked_order(inst, {});
    PickingOrder backward(forward.rbegin(), forward.rend());
    Owners owners(inst.item_count(), -1);
    pick_in_turns(inst, chores, forward, owners);
    // Every item in `rest` is worth more than zero to someone, so passing cannot stall.
    pick_in_turns(inst, rest, backward, owners, true);
    return allocation_from_owners(inst, owners);
}

EnvyGraph envy_graph(const Instance& inst, const Owners& owners, EnvyGraphKind kind,
                     const std::vector<bool>& active) {
    const int n = inst.agents;
    auto values = bundle_values(inst, owners);
    EnvyGraph g;
    g.kind = kind;
    g.out.assign(n, {});
    auto in = [&](int i) { return active.empty() || active[i]; };
    for (int i = 0; i < n; ++i) {
        if (!in(i)) {
            continue;
        }
        Value best = values[i][i];
        for (int k = 0; k < n; ++k) {
            best = std::max(best, values[i][k]);
        }
        for (int j = 0; j < n; ++j) {
            if (j == i || !in(j) || !(values[i][i] < values[i][j])) {
                continue;
            }
            if (kind == EnvyGraphKind::top_trading && values[i][j] != best) {
                continue;
            }
            g.out[i].push_back(j);
        }
    }
    return g;
}

std::optional<std::vector<int>> find_envy_cycle(const EnvyGraph& g) {
    const int n = static_cast<int>(g.out.size());
    std::optional<std::vector<int>> best;
    for (int s = 0; s < n; ++s) {
        // Breadth-first from s over vertices >= s, neighbours in increasing order, so the
        // first path found to each vertex is the lexicographically smallest shortest one.
        std::vector<int> parent(n, -2);
        std::deque<int> queue{s};
        parent[s] = -1;
        std::optional<std::vector<int>> found;
        while (!queue.empty() && !found) {
            int v = queue.front();
            queue.pop_front();
            std::vector<int> next = g.out[v];
            std::sort(next.begin(), next.end());
            for (int w : next) {
                if (w == s) {
                    std::vector<int> cycle;
                    for (int x = v; x != -1; x = parent[x]) {
                        cycle.push_back(x);
                    }
                    std::reverse(cycle.begin(), cycle.end());
                    found = cycle;
                    break;
                }
                if (w > s && parent[w] == -2) {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if (found && (!best || found->size() < best->size())) {
            best = found;
        }
    }
    return best;
}

Value total_envy(const Instance& inst, const Owners& owners) {
    auto values = bundle_values(inst, owners);
    Value sum;
    for (int i = 0; i < inst.agents; ++i) {
        for (int j = 0; j < inst.agents; ++j) {
            if (values[i][i] < values[i][j]) {
                sum += values[i][j] - values[i][i];
            }
        }
    }
    return sum;
}

Allocation envy_cycle_elimination(const Instance& inst, const ShiftObserver& observer) {
    if (has_negative(inst)) {
        throw PreconditionError("envy-cycle elimination needs a goods instance; "
                                "use double envy-cycle elimination when chores are present");
    }
    Owners owners(inst.item_count(), -1);
    for (int j = 0; j < inst.item_count(); ++j) {
        eliminate_and_give(inst, owners, j, EnvyGraphKind::plain, {}, Receiver::unenvied, observer);
    }
    return allocation_from_owners(inst, owners);
}

Allocation top_trading_ece(const Instance& inst, const ShiftObserver& observer) {
    if (has_positive(inst)) {
        throw PreconditionError("top-trading envy-cycle elimination needs a chores instance");
    }
    Owners owners(inst.item_count(), -1);
    for (int j = 0; j < inst.item_count(); ++j) {
        eliminate_and_give(inst, owners, j, EnvyGraphKind::top_trading, {}, Receiver::envies_nobody,
                           observer);
    }
    return allocation_from_owners(inst, owners);
}

Allocation double_ece(const Instance& inst, const ShiftObserver& observer) {
    Owners owners(inst.item_count(), -1);
    std::vector<int> chores;
    for (int j = 0; j < inst.item_count(); ++j) {
        if (objective_chore(inst, j)) {
            chores.push_back(j);
            continue;
        }
        std::vector<bool> active(inst.agents, false);
        for (int i = 0; i < inst.agents; ++i) {
            active[i] = !inst.is_forbidden(i, j) && inst.utilities[i][j] >= 0;
        }
        eliminate_and_give(inst, owners, j, EnvyGraphKind::plain, active, Receiver::unenvied, observer);
    }
    for (int j : chores) {
        eliminate_and_give(inst, owners, j, EnvyGraphKind::top_trading, {}, Receiver::envies_nobody,
                           observer);
    }
    return allocation_from_owners(inst, owners);
}

}  // namespace fairdiv
