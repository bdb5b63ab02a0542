#pragma once

#include "fairdiv/budget.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/gadgets.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/two_sat.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fairdiv {

// Exhaustive ground truth. These searches are deliberately plain transcriptions of the
// definitions; the faster deciders elsewhere are tested against them.

enum class SearchStatus { found, none, unknown };

std::string to_string(SearchStatus s);

template <class T>
struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<T> witness;
    std::uint64_t visited = 0;
};

using ReceiversPredicate = std::function<bool(const Receivers&)>;

// Visits orientations in lexicographic order: edge 0 is the most significant position and
// endpoint a is tried before endpoint b. Self-loops have a single choice. Needs
// 2^(non-loop edges) <= budget.max_states; otherwise BudgetExceeded is thrown or, with
// OnExceed::unknown, status unknown is returned without searching.
SearchResult<Orientation> enumerate_orientations(const Multigraph& g, const ReceiversPredicate& visit,
                                                 const SearchBudget& budget = {});

// Visits complete allocations in lexicographic order of the owner vector (item 0 most
// significant, agent 0 first). Needs n^m <= budget.max_states.
SearchResult<Allocation> brute_exists_allocation(const Instance& inst, const OwnersPredicate& predicate,
                                                 const SearchBudget& budget = {});

// Existence of an orientation satisfying EFX0 / EF1 by plain enumeration.
SearchResult<Orientation> brute_orientation(const Multigraph& g, Criterion criterion,
                                            const SearchBudget& budget = {});

// Existence of an EFX0 / EF1 orientation by backtracking with forward checking. A
// direction is ruled out only through bounds that the undecided edges cannot repair, so a
// rejected branch never extends to a fair orientation; every leaf is confirmed with the
// full checker. Reaches graphs far beyond plain enumeration. budget.max_states bounds the
// number of tentative placements.
SearchResult<Orientation> search_orientation(const Multigraph& g, Criterion criterion,
                                             const SearchBudget& budget = {});

// Number of orientations plain enumeration would visit (saturates at 2^63).
std::uint64_t orientation_count(const Multigraph& g);

struct Equipartition {
    std::vector<long> first;
    std::vector<long> second;
};

inline constexpr std::size_t kEquipartitionGuard = 24;

// Scans subsets in increasing bitmask order (bit k = element k) and returns the first with
// half the total. Throws SizeGuardError for more than 24 elements.
std::optional<Equipartition> brute_equipartition(const std::vector<long>& s);

inline constexpr int kTwoSatOracleGuard = 20;

// Truth-table scan; variable 0 is the most significant position and false precedes true.
// Throws SizeGuardError for more than 20 variables.
std::optional<std::vector<bool>> brute_2sat(const TwoSatFormula& f);

inline constexpr int kCircuitOracleGuard = 20;

// Truth-table scan over the INPUT gates in order of appearance, first input most
// significant and false before true; returns the first assignment making the output true.
// Throws SizeGuardError for more than 20 inputs.
std::optional<std::vector<bool>> brute_circuit_sat(const Circuit& c);

}  // namespace fairdiv
