#pragma once

#include <optional>

#include "hints/energy.hpp"
#include "hints/instance.hpp"
#include "hints/maxflow.hpp"

namespace hints {

// Ishikawa-style chain for one pixel: labels u_1..u_h = path(f'_p, alpha)
// with h-1 interior nodes. Cutting the i-th forward edge of (s, chain, t)
// assigns u_i; backward infinite edges force exactly one cut per chain.
struct PixelChain {
    const std::vector<Label>* labels = nullptr;  // borrowed from the tree's path table
    int first_node = -1;                         // ids first_node .. first_node+h-2

    int length() const { return int(labels->size()); }
    Label label_at(int pos) const { return (*labels)[pos - 1]; }  // pos in 1..h
};

// Flow network for one Path-Move plus the decode map. Cut cost semantics:
// flow + constant == E(decoded) + |omega| * shift_k for every finite cut.
struct MoveGraph {
    FlowNetwork net;
    std::vector<PixelChain> chains;  // per pixel, row-major
    int width = 0;
    int height = 0;
    Label alpha = 0;
    double shift_k = 0;
    double constant = 0;  // accumulated costs of pixels with trivial chains

    // Interior node id for the boundary between positions pos and pos+1 of
    // pixel p's chain; pos in 1..h-1.
    int node(int p, int pos) const { return chains[p].first_node + pos - 1; }
};

// K = max(0, -min finite data cost): shifts all chain edge weights >= 0.
double shift_constant(const Instance& inst);

// Builds the full move graph: data chains, smoothness gadgets for every
// neighbor pair, min-margin and star-shape infinite edges. The current
// labeling must be feasible; construction refuses otherwise.
MoveGraph build_move_graph(const Instance& inst, const Labeling& current, Label alpha);

// Reads the unique severed chain edge per pixel off a finite cut.
Labeling decode(const MoveGraph& g, const CutResult& cut);

// Independent price of one move-space assignment: E(assignment) + |omega|*K,
// or nullopt when a hard constraint or forbidden cost is hit. Throws if the
// assignment leaves the move's feasible set.
std::optional<double> move_cost_oracle(const Instance& inst, const Labeling& current, Label alpha,
                                       const Labeling& assignment);

// The unique side assignment whose severed chain edges realize the given
// move-space assignment; with g.net.cut_cost this prices any assignment.
std::vector<Side> assignment_sides(const MoveGraph& g, const Labeling& assignment);

}  // namespace hints
