#pragma once

#include "hints/instance.hpp"

namespace hints {

// Finite energy components plus hard-constraint violation counts. The
// infinitely-large hard penalties are never materialized as numbers; a
// labeling is feasible iff both violation counts are zero and no forbidden
// data cost is used.
struct EnergyBreakdown {
    double data_sum = 0;
    double smoothness_sum = 0;       // unweighted by lambda
    long long margin_violations = 0; // violated (l, p, q) triples
    long long shape_violations = 0;  // violated (l, p, q) pairs
    long long forbidden_uses = 0;
    double total_finite = 0;         // data_sum + lambda * smoothness_sum
    bool feasible = false;
};

// Production kernel: deterministic row-partial reduction, OpenMP when
// available. Result is independent of thread count.
EnergyBreakdown evaluate(const Instance& inst, const Labeling& f);

// Straightforward reference implementation kept for testing the kernel.
EnergyBreakdown evaluate_serial(const Instance& inst, const Labeling& f);

}  // namespace hints
