#pragma once

#include <utility>

#include "hints/energy.hpp"

namespace hints {

struct OracleConfig {
    // Guard on |L|^|omega|; exceeding it raises BudgetError before any work.
    double max_labelings = 5e6;
};

// Global minimizer over all feasible labelings, ties broken to the
// lexicographically smallest labeling. Forbidden data costs exclude a label
// from a pixel's candidate set. Throws InfeasibleError when no feasible
// labeling exists and BudgetError when the search space exceeds the budget.
//
// Production path: depth-first search with incremental energy, feasibility
// pruning and an admissible remaining-data bound, parallelized over the
// first pixels. Exact: pruning uses strict comparison only.
std::pair<Labeling, EnergyBreakdown> exhaustive_minimize(const Instance& inst,
                                                         const OracleConfig& cfg = {});

// Reference implementation: plain odometer enumeration pricing every
// labeling with evaluate_serial. Kept for testing the search path.
std::pair<Labeling, EnergyBreakdown> exhaustive_minimize_serial(const Instance& inst,
                                                                const OracleConfig& cfg = {});

}  // namespace hints
