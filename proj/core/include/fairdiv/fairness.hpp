#pragma once

#include "fairdiv/budget.hpp"
#include "fairdiv/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairdiv {

enum class Criterion { ef, prop, ef1, efx0, efx_minus, mms, po };

std::string to_string(Criterion c);
// Accepts ef, prop, ef1, efx0, efx-, mms, po.
Criterion parse_criterion(std::string_view name);

struct Witness {
    std::optional<int> envier;
    std::optional<int> envied;
    // Pivotal item: for EFX the item whose removal leaves strong envy, for EF1 the best
    // removal candidate that still fails.
    std::optional<std::string> item;
    std::optional<int> agent;
    std::optional<Value> threshold;
    std::optional<Value> received;
    std::optional<Allocation> dominating;
};

struct FairnessReport {
    Criterion criterion = Criterion::ef;
    bool holds = true;
    std::optional<Witness> witness;
    // Set when EFX was evaluated on a mixed instance through the strong-envy reading,
    // which goes beyond the goods-only and chores-only definitions.
    bool extension = false;
    bool partial = false;
};

struct CheckOptions {
    SearchBudget budget;
    // Only EFX0 accepts partial allocations.
    bool allow_partial = false;
};

FairnessReport check(const Instance& inst, const Allocation& alloc, Criterion criterion,
                     const CheckOptions& options = {});

struct MmsThreshold {
    Value threshold;
    Allocation partition;
};

struct MmsProfile {
    std::vector<Value> thresholds;
    std::vector<Allocation> witnesses;
};

// Largest value m * ceil(log2 n) may take before mms_threshold refuses the instance.
inline constexpr int kMmsGuard = 34;
bool mms_within_guard(int agents, int items);

// Exact maximin share of one agent with an optimal partition (empty bundles allowed).
// Throws SizeGuardError when m * ceil(log2 n) > 34.
MmsThreshold mms_threshold(const Instance& inst, int agent);
MmsProfile mms_profile(const Instance& inst);

FairnessReport check_mms(const Instance& inst, const Allocation& alloc);
FairnessReport check_mms(const Instance& inst, const Allocation& alloc, const MmsProfile& profile);

// Exhaustive dominance search; throws SizeGuardError when n^m exceeds the budget.
FairnessReport check_po(const Instance& inst, const Allocation& alloc, const SearchBudget& budget = {});

// Private envy-freeness between i and j: only non-loop edges joining i and j count.
bool check_pef(const Multigraph& g, const Orientation& pi, int i, int j);

// Fast repeated evaluation over owner vectors (used by the oracles).
using OwnersPredicate = std::function<bool(const Owners&)>;
OwnersPredicate make_predicate(const Instance& inst, Criterion criterion);

// Envy-freeness up to any item for orientations of a graph, evaluated on edges directly.
bool orientation_is_efx0(const Multigraph& g, const Receivers& recv);
bool orientation_is_ef1(const Multigraph& g, const Receivers& recv);

}  // namespace fairdiv
