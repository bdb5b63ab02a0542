#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fairdiv {

// Literal +k / -k refers to variable k-1 positively / negatively (DIMACS style).
struct TwoSatFormula {
    int variables = 0;
    std::vector<std::vector<int>> clauses;  // each clause holds one or two literals
};

std::vector<std::string> validate_formula(const TwoSatFormula& f);

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment);

// Implication graph + strongly connected components (Tarjan, vertices visited in index
// order). Returns a satisfying assignment or nullopt.
std::optional<std::vector<bool>> solve_2sat(const TwoSatFormula& f);

}  // namespace fairdiv
