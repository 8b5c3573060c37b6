#include "hints/move_graph.hpp"

#include <algorithm>
#include <cmath>

namespace hints {

double shift_constant(const Instance& inst) {
    double lo = 0;
    for (double d : inst.data)
        if (d != kForbiddenCost) lo = std::min(lo, d);
    return -lo;
}

namespace {

constexpr double kInf = FlowNetwork::kInf;

// Per (current label, constrained label l) classification of the expansion
// path. Blocks are 1-based position ranges; empty when lo > hi.
struct PathBlocks {
    int h = 0;
    int inside_lo = 1, inside_hi = 0;  // positions with label in subtree(l)
    int viol_lo = 1, viol_hi = 0;      // positions violating the hard term
    bool viol_contiguous = true;
};

PathBlocks classify(const LabelTree& tree, const std::vector<Label>& path, Label l,
                    bool margin_semantics) {
    PathBlocks b;
    b.h = int(path.size());
    const Label par = tree.parent(l);
    int in_lo = 0, in_hi = -1, v_lo = 0, v_hi = -1;
    bool v_gap = false;
    for (int i = 0; i < b.h; ++i) {
        bool inside = tree.in_subtree(path[i], l);
        bool viol = margin_semantics ? (!inside && path[i] != par) : !inside;
        if (inside) {
            if (in_hi < in_lo) in_lo = i, in_hi = i;
            else {
                // A tree path crosses the subtree boundary edge at most once
                // in each direction, so the inside block is contiguous.
                if (in_hi != i - 1) throw std::logic_error("non-contiguous subtree block on a path");
                in_hi = i;
            }
        }
        if (viol) {
            if (v_hi < v_lo) v_lo = i, v_hi = i;
            else {
                if (v_hi != i - 1) v_gap = true;
                v_hi = i;
            }
        }
    }
    if (in_hi >= in_lo) { b.inside_lo = in_lo + 1; b.inside_hi = in_hi + 1; } else { b.inside_lo = 1; b.inside_hi = 0; }
    if (v_hi >= v_lo) { b.viol_lo = v_lo + 1; b.viol_hi = v_hi + 1; } else { b.viol_lo = 1; b.viol_hi = 0; }
    b.viol_contiguous = !v_gap;
    return b;
}

}  // namespace

MoveGraph build_move_graph(const Instance& inst, const Labeling& current, Label alpha) {
    const LabelTree& tree = inst.tree;
    const int L = tree.size();
    const int N = inst.num_pixels();
    if (alpha < 0 || alpha >= L) throw ValidationError("unknown alpha label");
    if (current.width != inst.width || current.height != inst.height)
        throw ValidationError("labeling dimensions do not match the instance");

    MoveGraph g;
    g.alpha = alpha;
    g.width = inst.width;
    g.height = inst.height;
    g.shift_k = shift_constant(inst);

    // Data chains.
    g.chains.resize(N);
    for (int p = 0; p < N; ++p) {
        Label fp = current.at[p];
        if (fp < 0 || fp >= L) throw ValidationError("invalid label id in current labeling");
        if (inst.data_cost(p, fp) == kForbiddenCost)
            throw InfeasibleError("current labeling uses a forbidden data cost");
        PixelChain& c = g.chains[p];
        c.labels = &tree.path(fp, alpha);
        int h = c.length();
        if (h == 1) {
            g.constant += inst.data_cost(p, alpha) + g.shift_k;
            continue;
        }
        c.first_node = g.net.num_nodes();
        for (int i = 0; i < h - 1; ++i) g.net.add_node();
        auto edge_cost = [&](int pos) {
            double d = inst.data_cost(p, c.label_at(pos));
            return d == kForbiddenCost ? kInf : d + g.shift_k;
        };
        g.net.add_terminal(c.first_node, edge_cost(1), 0);
        for (int i = 1; i <= h - 2; ++i)
            g.net.add_arc(g.node(p, i), g.node(p, i + 1), edge_cost(i + 1), kInf);
        g.net.add_terminal(g.node(p, h - 1), 0, edge_cost(h));
    }

    // Smoothness gadgets per neighbor pair: Ishikawa cross edges along the
    // shared overlap, per-step branch weights as source-side edges.
    for (const auto& pr : neighbor_pairs(inst)) {
        double w = inst.lambda * pr.s;
        if (!(w > 0)) continue;
        Label fp = current.at[pr.p], fq = current.at[pr.q];
        PathSplit sp = tree.split_overlap(fp, fq, alpha);
        const int m = int(sp.p_branch.size());
        const int n = int(sp.q_branch.size());
        const int k = int(sp.overlap.size());
        auto step_weight = [&](Label a, Label b) { return w * tree.metric(a, b); };
        for (int j = 1; j <= m; ++j) {
            Label next = j < m ? sp.p_branch[j] : sp.overlap[0];
            double cap = step_weight(sp.p_branch[j - 1], next);
            if (cap > 0) g.net.add_terminal(g.node(pr.p, j), cap, 0);
        }
        for (int j = 1; j <= n; ++j) {
            Label next = j < n ? sp.q_branch[j] : sp.overlap[0];
            double cap = step_weight(sp.q_branch[j - 1], next);
            if (cap > 0) g.net.add_terminal(g.node(pr.q, j), cap, 0);
        }
        for (int j = 1; j <= k - 1; ++j) {
            double cap = step_weight(sp.overlap[j - 1], sp.overlap[j]);
            if (cap > 0) g.net.add_arc(g.node(pr.p, m + j), g.node(pr.q, n + j), cap, cap);
        }
    }

    // Hard-constraint infinite edges, shared case dispatch for min-margins
    // (violating = outside subtree(l) and parent(l)) and star shapes
    // (violating = outside subtree(l)).
    auto add_constraint_edges = [&](Label l, const std::vector<std::pair<int, int>>& pairs,
                                    bool margin_semantics) {
        const Label par = tree.parent(l);
        const bool alpha_inside = tree.in_subtree(alpha, l);
        std::vector<PathBlocks> cls(L);
        std::vector<char> have(L, 0);
        auto blocks_for = [&](Label cur) -> const PathBlocks& {
            if (!have[cur]) {
                cls[cur] = classify(tree, tree.path(cur, alpha), l, margin_semantics);
                have[cur] = 1;
            }
            return cls[cur];
        };
        for (auto [p, q] : pairs) {
            Label fp = current.at[p], fq = current.at[q];
            bool p_cur_inside = tree.in_subtree(fp, l);
            bool q_cur_viol = margin_semantics ? (!tree.in_subtree(fq, l) && fq != par)
                                               : !tree.in_subtree(fq, l);
            if (p_cur_inside && q_cur_viol)
                throw InfeasibleError("current labeling violates a hard constraint for label " +
                                      std::to_string(l));
            const PathBlocks& bp = blocks_for(fp);
            const PathBlocks& bq = blocks_for(fq);
            bool inside_any = bp.inside_hi >= bp.inside_lo;
            bool viol_any = bq.viol_hi >= bq.viol_lo;
            if (!inside_any || !viol_any) continue;
            if (!bq.viol_contiguous)
                throw std::logic_error("non-contiguous violating block on a feasible-path case");
            if (alpha_inside) {
                // Inside block is a suffix of p's path, violations a prefix
                // of q's path. p_cur_inside would have thrown above.
                g.net.add_arc(g.node(p, bp.inside_lo - 1), g.node(q, bq.viol_hi), kInf, 0);
            } else {
                // Inside block is a prefix, violations a suffix.
                g.net.add_arc(g.node(q, bq.viol_lo - 1), g.node(p, bp.inside_hi), kInf, 0);
            }
        }
    };

    for (Label l = 0; l < L; ++l) {
        if (l == tree.root()) continue;  // vacuous: subtree(root) is the whole label set
        if (inst.margin[l] > 0) add_constraint_edges(l, margin_pairs(inst, l), true);
    }
    for (Label l = 0; l < L; ++l) {
        if (!inst.star_center[l]) continue;
        if (l == tree.root()) continue;
        add_constraint_edges(l, star_pairs(inst, l), false);
    }
    return g;
}

Labeling decode(const MoveGraph& g, const CutResult& cut) {
    Labeling out(g.width, g.height);
    for (size_t p = 0; p < g.chains.size(); ++p) {
        const PixelChain& c = g.chains[p];
        int h = c.length();
        if (h == 1) {
            out.at[p] = c.label_at(1);
            continue;
        }
        int i = h;  // severed edge index if every node is on the source side
        for (int j = 1; j <= h - 1; ++j) {
            if (cut.side[c.first_node + j - 1] == Side::Sink) {
                i = j;
                break;
            }
        }
        // Backward infinite edges guarantee the source side is a prefix.
        for (int j = i; j <= h - 1; ++j)
            if (cut.side[c.first_node + j - 1] == Side::Source)
                throw std::logic_error("non-monotone chain cut; backward edges violated");
        out.at[p] = c.label_at(i);
    }
    return out;
}

std::vector<Side> assignment_sides(const MoveGraph& g, const Labeling& assignment) {
    std::vector<Side> side(g.net.num_nodes(), Side::Source);
    for (size_t p = 0; p < g.chains.size(); ++p) {
        const PixelChain& c = g.chains[p];
        int h = c.length();
        int pos = -1;
        for (int i = 1; i <= h; ++i)
            if (c.label_at(i) == assignment.at[p]) {
                pos = i;
                break;
            }
        if (pos < 0) throw ValidationError("assignment outside the move's feasible set");
        for (int j = 1; j <= h - 1; ++j)
            side[c.first_node + j - 1] = pos <= j ? Side::Sink : Side::Source;
    }
    return side;
}

std::optional<double> move_cost_oracle(const Instance& inst, const Labeling& current, Label alpha,
                                       const Labeling& assignment) {
    const LabelTree& tree = inst.tree;
    if (assignment.at.size() != current.at.size())
        throw ValidationError("assignment dimensions do not match");
    for (int p = 0; p < inst.num_pixels(); ++p) {
        const auto& path = tree.path(current.at[p], alpha);
        if (std::find(path.begin(), path.end(), assignment.at[p]) == path.end())
            throw ValidationError("assignment outside the move's feasible set");
    }
    EnergyBreakdown e = evaluate(inst, assignment);
    if (!e.feasible) return std::nullopt;
    return e.total_finite + inst.num_pixels() * shift_constant(inst);
}

}  // namespace hints
