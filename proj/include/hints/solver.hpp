#pragma once

#include <cstdint>

#include "hints/move_graph.hpp"

namespace hints {

enum class Algorithm { PathMoves, BinaryExpansion };
enum class ExpansionOrder { FixedAscending, Shuffled };

struct SolverConfig {
    Algorithm algorithm = Algorithm::PathMoves;
    ExpansionOrder order = ExpansionOrder::FixedAscending;
    uint64_t seed = 0;      // used by Shuffled order only
    int max_sweeps = 100;
    double tolerance = 1e-9;  // accept a move iff it lowers energy by more than this
};

struct TraceEntry {
    int sweep = 0;
    Label alpha = 0;
    bool accepted = false;
    double energy = 0;  // total_finite of the current labeling after this step
    bool feasible = false;
    double wall_ms = 0;
};

struct SolveReport {
    Labeling final_labeling;
    EnergyBreakdown final_energy;
    std::vector<TraceEntry> trace;
    std::vector<Labeling> accepted_labelings;  // labeling after each accepted move
    int sweeps = 0;
    int moves_accepted = 0;
};

// All pixels at the root label; feasible for every instance.
Labeling init_trivial(const Instance& inst);

// One optimal Path-Move on alpha: build, min-cut, decode.
Labeling path_move(const Instance& inst, const Labeling& current, Label alpha);

// Binary expansion baseline: each pixel keeps its label or switches to
// alpha; hard constraints become infinite pairwise terms in a 2-label cut.
Labeling binary_expansion_move(const Instance& inst, const Labeling& current, Label alpha);

// Sweeps over labels in the configured order, accepting strict improvements,
// until a full sweep accepts nothing or max_sweeps is reached.
SolveReport solve(const Instance& inst, const Labeling& init, const SolverConfig& cfg);

}  // namespace hints
