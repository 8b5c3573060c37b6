#pragma once

#include <vector>

#include "hints/types.hpp"

namespace hints {

// Expansion-path decomposition for a neighbor pair when expanding alpha:
// path(fp, alpha) = p_branch + overlap, path(fq, alpha) = q_branch + overlap,
// where overlap is the maximal common suffix (it always contains alpha).
struct PathSplit {
    std::vector<Label> p_branch;
    std::vector<Label> q_branch;
    std::vector<Label> overlap;
};

// Rooted tree over dense label ids 0..size()-1 with non-negative edge
// weights. Immutable after construction; paths, subtrees and the induced
// tree metric are precomputed since they are queried per pixel per move.
class LabelTree {
public:
    // parent[root] == kNoLabel; edge_weight[x] is the weight of the edge
    // between x and parent[x] (ignored for the root).
    LabelTree(std::vector<Label> parent, std::vector<double> edge_weight);

    int size() const { return int(parent_.size()); }
    Label root() const { return root_; }
    Label parent(Label x) const { check(x); return parent_[x]; }
    double edge_weight(Label x) const { check(x); return weight_[x]; }
    int depth(Label x) const { check(x); return depth_[x]; }

    // x is contained in the subtree rooted at `of` (inclusive).
    bool in_subtree(Label x, Label of) const { check(x); check(of); return in_subtree_[size_t(of) * size() + x]; }
    const std::vector<Label>& subtree(Label x) const { check(x); return subtree_[x]; }

    // Ordered labels from a to b inclusive; length >= 1.
    const std::vector<Label>& path(Label a, Label b) const { check(a); check(b); return paths_[size_t(a) * size() + b]; }

    // Sum of edge weights along path(a, b); symmetric, zero on the diagonal.
    double metric(Label a, Label b) const { check(a); check(b); return metric_[size_t(a) * size() + b]; }

    PathSplit split_overlap(Label fp, Label fq, Label alpha) const;

private:
    void check(Label x) const {
        if (x < 0 || x >= size()) throw ValidationError("unknown label id " + std::to_string(x));
    }

    std::vector<Label> parent_;
    std::vector<double> weight_;
    std::vector<int> depth_;
    Label root_ = kNoLabel;
    std::vector<char> in_subtree_;
    std::vector<std::vector<Label>> subtree_;
    std::vector<std::vector<Label>> paths_;  // size*size, [a*size+b]
    std::vector<double> metric_;
};

}  // namespace hints
