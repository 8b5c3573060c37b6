#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hints/types.hpp"

namespace hints {

enum class Side : uint8_t { Source, Sink };

struct CutResult {
    double flow = 0;              // equals the capacity of the reported cut
    std::vector<Side> side;       // per added node
};

// Min s-t cut over a sparse directed network with an infinite-capacity
// sentinel. Augmenting-path (Dinic) solver; deterministic for a fixed
// insertion order. One network is built and solved by a single thread.
class FlowNetwork {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    int add_node();
    // Directed capacities u->v and v->u; either may be 0 or kInf.
    void add_arc(int u, int v, double cap_uv, double cap_vu);
    // Capacities source->u and u->sink; accumulates across calls.
    void add_terminal(int u, double cap_src, double cap_snk);

    int num_nodes() const { return int(term_src_.size()); }

    // Throws InfeasibleError when every s-t cut contains an infinite arc.
    // Equal-cost cuts resolve to the solver's final residual reachability:
    // a node ends on the Source side iff it is residual-reachable from s.
    // Operates on a residual copy, so repeated solves are identical.
    CutResult solve() const;

    // Price of an arbitrary side assignment: severed arcs plus terminal
    // arcs, saturating at infinity.
    double cut_cost(const std::vector<Side>& side) const;

    int infinite_arc_count() const;  // infinite non-terminal arcs

private:
    struct Arc {
        int to;
        double cap;  // residual
    };
    void check_node(int u) const {
        if (u < 0 || u >= num_nodes()) throw ValidationError("invalid node id");
    }
    static void check_cap(double c) {
        if (!(c >= 0)) throw ValidationError("negative capacity");
    }

    std::vector<Arc> arcs_;                 // paired: arc i's reverse is i^1
    std::vector<std::vector<int>> out_;     // per node, arc indices
    std::vector<double> term_src_, term_snk_;
    std::vector<std::pair<int, double>> original_arcs_;  // (arc index, capacity) for cut pricing
};

}  // namespace hints
