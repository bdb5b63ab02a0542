#pragma once

#include "fairdiv/budget.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

// Instance with every row sorted non-increasingly. Position k keeps the name of the k-th
// item of the original instance, so an already sorted instance maps to itself.
struct SopInstance {
    Instance inst;
    Instance original;
    // row_permutations[i][k]: original item id that agent i ranks k-th.
    std::vector<std::vector<std::string>> row_permutations;
};

SopInstance to_sop(const Instance& inst);

// Walks positions in rank order; the owner of each position takes their best remaining
// original item (smallest index on ties). Every agent then receives at least what their
// positions were worth to them. The result is checked against the MMS thresholds and,
// when that fails, replaced by an exhaustive search; throws Error if nothing is found.
Allocation lift_from_sop(const SopInstance& sop, const Allocation& alloc);

// A partition into n bundles that all reach the agent's threshold. Preference: one with an
// empty or singleton bundle, then one with n-1 bundles of one or two items, then any.
Allocation mms_partition_for_agent(const Instance& inst, int agent);

struct ReductionStep {
    std::string rule;
    // Agent indices refer to `stage`; agent_labels maps them to agents of the solved instance.
    std::vector<int> removed_agents;
    std::vector<std::string> removed_items;
    std::map<int, std::vector<std::string>> granted;
    Instance stage;
    std::vector<int> agent_labels;
};

// The instance left after deleting the step's agents and items (order preserved).
Instance apply_reduction(const Instance& stage, const ReductionStep& step);

struct StepValidity {
    bool removed_satisfied = true;
    bool thresholds_preserved = true;
    bool valid() const { return removed_satisfied && thresholds_preserved; }
};

// Checks a step against exact thresholds before and after the reduction.
StepValidity check_reduction_step(const Instance& stage, const ReductionStep& step);

// Tries, in order: a single item to a single agent when every agent has an MMS partition
// with a singleton; bundles of one or two items from a partition with n-1 such bundles,
// matched by a perfect matching or through a minimal Hall violator; the last item to a
// chores agent when m <= n + 5. Expects an instance with sorted rows. Only steps that pass
// check_reduction_step are returned.
std::optional<ReductionStep> find_valid_reduction(const Instance& inst);

// Three agents, at most eight items. Always returns an allocation that passes check_mms;
// `fallback` (when given) reports whether the exhaustive search had to step in.
std::optional<Allocation> solve_three_agent(const Instance& inst, bool* fallback = nullptr);

// Every agent with a negative threshold gets the row of `agent`. Throws PreconditionError
// when `agent` itself has a negative threshold.
Instance mimic_instance(const Instance& inst, int agent);

enum class MmsVerdict { found, none, unknown };
std::string to_string(MmsVerdict v);

struct MmsSolution {
    MmsVerdict verdict = MmsVerdict::unknown;
    std::optional<Allocation> allocation;
    std::vector<ReductionStep> trail;
    std::vector<Value> thresholds;
    // Which construction produced the allocation: single-agent, divide-and-choose,
    // three-agent, non-negative-agent, chores-agents, exhaustive.
    std::string route;
    // Set when a constructive route failed its certificate and the exhaustive search
    // produced the answer instead.
    bool fallback = false;
};

// none only comes from a completed exhaustive search; unknown means a size guard or the
// state budget stopped the search.
MmsSolution solve_mms(const Instance& inst, const SearchBudget& budget = {});

}  // namespace fairdiv
