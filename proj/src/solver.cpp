#include "hints/solver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace hints {

namespace {

constexpr double kInf = FlowNetwork::kInf;

// Deterministic cross-platform shuffle (Fisher-Yates on splitmix64).
uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void shuffle_labels(std::vector<Label>& order, uint64_t& state) {
    for (int i = int(order.size()) - 1; i > 0; --i) {
        int j = int(splitmix64(state) % uint64_t(i + 1));
        std::swap(order[i], order[j]);
    }
}

}  // namespace

Labeling init_trivial(const Instance& inst) {
    return Labeling(inst.width, inst.height, inst.tree.root());
}

Labeling path_move(const Instance& inst, const Labeling& current, Label alpha) {
    MoveGraph g = build_move_graph(inst, current, alpha);
    CutResult cut = g.net.solve();
    return decode(g, cut);
}

Labeling binary_expansion_move(const Instance& inst, const Labeling& current, Label alpha) {
    const LabelTree& tree = inst.tree;
    const int N = inst.num_pixels();
    if (alpha < 0 || alpha >= tree.size()) throw ValidationError("unknown alpha label");

    // Node per pixel that can actually switch; side Source = stay, Sink = alpha.
    FlowNetwork net;
    std::vector<int> node(N, -1);
    std::vector<double> cap_src(N, 0), cap_snk(N, 0);  // accumulated unary terms
    for (int p = 0; p < N; ++p) {
        Label fp = current.at[p];
        if (inst.data_cost(p, fp) == kForbiddenCost)
            throw InfeasibleError("current labeling uses a forbidden data cost");
        if (fp == alpha) continue;
        node[p] = net.add_node();
        double da = inst.data_cost(p, alpha);
        cap_src[p] += da == kForbiddenCost ? kInf : da;  // cost of choosing alpha
        cap_snk[p] += inst.data_cost(p, fp);             // cost of staying
    }

    // Smoothness: submodular 2x2 tables via the standard decomposition.
    for (const auto& pr : neighbor_pairs(inst)) {
        double w = inst.lambda * pr.s;
        if (!(w > 0)) continue;
        Label fp = current.at[pr.p], fq = current.at[pr.q];
        double A = w * tree.metric(fp, fq);       // stay, stay
        double B = w * tree.metric(fp, alpha);    // stay, switch
        double C = w * tree.metric(alpha, fq);    // switch, stay
        if (node[pr.p] < 0 && node[pr.q] < 0) continue;
        if (node[pr.p] < 0) {                     // p fixed at alpha
            cap_snk[pr.q] += C;                   // charged if q stays
            continue;
        }
        if (node[pr.q] < 0) {                     // q fixed at alpha
            cap_snk[pr.p] += B;
            continue;
        }
        // E(xp,xq) = A + (C-A)xp + (-C)xq + (B+C-A)(1-xp)xq, D = 0.
        double up = C - A;
        if (up >= 0) cap_src[pr.p] += up; else cap_snk[pr.p] += -up;
        double uq = -C;
        if (uq >= 0) cap_src[pr.q] += uq; else cap_snk[pr.q] += -uq;
        double pq = B + C - A;  // >= 0 by the triangle inequality of the tree metric
        if (pq > 0) net.add_arc(node[pr.p], node[pr.q], pq, 0);
    }

    // Hard constraints: forbid mixed assignments that would violate Eq-style
    // hard terms; the all-stay and all-switch rows are always finite.
    auto add_hard = [&](Label l, const std::vector<std::pair<int, int>>& pairs, bool margin_sem) {
        Label par = tree.parent(l);
        auto inside = [&](Label x) { return tree.in_subtree(x, l); };
        auto viol = [&](Label x) { return margin_sem ? (!inside(x) && x != par) : !inside(x); };
        for (auto [p, q] : pairs) {
            Label fp = current.at[p], fq = current.at[q];
            if (inside(fp) && viol(fq))
                throw InfeasibleError("current labeling violates a hard constraint for label " +
                                      std::to_string(l));
            // Choices: x=0 keeps the current label, x=1 takes alpha. Mixed
            // assignments are the only ones a feasible current labeling can
            // make infinite, and a pixel already at alpha has no node, so
            // both forbidden rows involve two live nodes.
            bool bad10 = inside(alpha) && viol(fq);  // p switches, q stays
            bool bad01 = inside(fp) && viol(alpha);  // p stays, q switches
            if (node[p] < 0 || node[q] < 0) continue;
            if (bad10) net.add_arc(node[q], node[p], kInf, 0);
            if (bad01) net.add_arc(node[p], node[q], kInf, 0);
        }
    };
    for (Label l = 0; l < tree.size(); ++l) {
        if (l == tree.root()) continue;
        if (inst.margin[l] > 0) add_hard(l, margin_pairs(inst, l), true);
        if (inst.star_center[l]) add_hard(l, star_pairs(inst, l), false);
    }

    // Unary accumulations may be negative (raw data costs); shifting both
    // terminals of a node by a common constant leaves the cut order intact.
    for (int p = 0; p < N; ++p)
        if (node[p] >= 0) {
            double base = std::min(cap_src[p], cap_snk[p]);
            net.add_terminal(node[p], cap_src[p] - base, cap_snk[p] - base);
        }

    CutResult cut = net.solve();
    Labeling out = current;
    for (int p = 0; p < N; ++p)
        if (node[p] >= 0 && cut.side[node[p]] == Side::Sink) out.at[p] = alpha;
    return out;
}

SolveReport solve(const Instance& inst, const Labeling& init, const SolverConfig& cfg) {
    if (cfg.max_sweeps < 1) throw ValidationError("max sweeps must be >= 1");
    if (!(cfg.tolerance >= 0)) throw ValidationError("tolerance must be >= 0");

    EnergyBreakdown cur_e = evaluate(inst, init);
    if (!cur_e.feasible) throw InfeasibleError("initial labeling is infeasible");

    SolveReport rep;
    rep.final_labeling = init;
    std::vector<Label> order(inst.num_labels());
    std::iota(order.begin(), order.end(), 0);
    uint64_t rng_state = cfg.seed;

    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        rep.sweeps = sweep + 1;
        if (cfg.order == ExpansionOrder::Shuffled) shuffle_labels(order, rng_state);
        bool any_accept = false;
        for (Label alpha : order) {
            auto t0 = std::chrono::steady_clock::now();
            Labeling cand = cfg.algorithm == Algorithm::PathMoves
                                ? path_move(inst, rep.final_labeling, alpha)
                                : binary_expansion_move(inst, rep.final_labeling, alpha);
            EnergyBreakdown cand_e = evaluate(inst, cand);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            bool accept = cand_e.feasible && cand_e.total_finite < cur_e.total_finite - cfg.tolerance;
            if (accept) {
                rep.final_labeling = std::move(cand);
                cur_e = cand_e;
                rep.moves_accepted++;
                rep.accepted_labelings.push_back(rep.final_labeling);
                any_accept = true;
            }
            rep.trace.push_back({sweep, alpha, accept, cur_e.total_finite, cur_e.feasible, ms});
        }
        if (!any_accept) break;
    }
    rep.final_energy = cur_e;
    return rep;
}

}  // namespace hints
