#pragma once

#include "fairdiv/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fairdiv {

// A permutation of agent indices; agents pick in this order, cyclically.
using PickingOrder = std::vector<int>;

struct RoundRobinOptions {
    // Run on mixed instances too, where the result need not be EF1.
    bool allow_mixed = false;
};

// Every agent picks their best remaining item in turn (smallest item index on ties).
// Requires a goods instance or a chores instance unless options.allow_mixed is set; an
// empty order means 0, 1, ..., n-1.
Allocation round_robin(const Instance& inst, const PickingOrder& order = {},
                       const RoundRobinOptions& options = {});

// Objective chores (padded with zero-valued dummies to a multiple of n) go first with
// order 0..n-1, then the rest with the reversed order. Dummies never reach the output.
Allocation double_round_robin(const Instance& inst);

enum class EnvyGraphKind { plain, top_trading };

// Adjacency over agents. plain: i -> j iff u_i(pi_i) < u_i(pi_j). top_trading: additionally
// u_i(pi_j) is the largest value i sees among all bundles. Agents outside `active` (when
// given) have no edges.
struct EnvyGraph {
    EnvyGraphKind kind = EnvyGraphKind::plain;
    std::vector<std::vector<int>> out;
};

EnvyGraph envy_graph(const Instance& inst, const Owners& owners, EnvyGraphKind kind,
                     const std::vector<bool>& active = {});

// Shortest directed cycle; among the shortest, the one that is lexicographically smallest
// when written from its smallest vertex.
std::optional<std::vector<int>> find_envy_cycle(const EnvyGraph& g);

// Sum over ordered pairs of max(u_i(pi_j) - u_i(pi_i), 0).
Value total_envy(const Instance& inst, const Owners& owners);

// Called after every bundle shift with the owners before and after the shift.
using ShiftObserver = std::function<void(const Owners& before, const Owners& after)>;

// Goods only. Items in index order; envy cycles are shifted away and the item goes to the
// smallest unenvied agent.
Allocation envy_cycle_elimination(const Instance& inst, const ShiftObserver& observer = {});

// Chores only. Cycles of the top-trading envy graph are shifted away and the chore goes to
// the smallest agent who envies nobody.
Allocation top_trading_ece(const Instance& inst, const ShiftObserver& observer = {});

// Items that are a good to someone go through envy-cycle elimination among the agents who
// see them as a good; objective chores then go through the top-trading variant.
Allocation double_ece(const Instance& inst, const ShiftObserver& observer = {});

}  // namespace fairdiv
