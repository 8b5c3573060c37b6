#include "hints/label_tree.hpp"

#include <algorithm>
#include <cmath>

namespace hints {

LabelTree::LabelTree(std::vector<Label> parent, std::vector<double> edge_weight)
    : parent_(std::move(parent)), weight_(std::move(edge_weight)) {
    const int n = int(parent_.size());
    if (n == 0) throw ValidationError("empty label set");
    if (int(weight_.size()) != n) throw ValidationError("edge weight list does not cover the label set");

    for (Label x = 0; x < n; ++x) {
        if (parent_[x] == kNoLabel) {
            if (root_ != kNoLabel) throw ValidationError("multiple roots");
            root_ = x;
        } else if (parent_[x] < 0 || parent_[x] >= n) {
            throw ValidationError("unknown parent label for label " + std::to_string(x));
        }
        if (parent_[x] != kNoLabel && (!(weight_[x] >= 0) || !std::isfinite(weight_[x])))
            throw ValidationError("negative or non-finite edge weight at label " + std::to_string(x));
    }
    if (root_ == kNoLabel) throw ValidationError("no root label");
    weight_[root_] = 0.0;

    // Depths; a walk longer than n edges means a parent cycle.
    depth_.assign(n, -1);
    for (Label x = 0; x < n; ++x) {
        Label cur = x;
        int steps = 0;
        while (cur != root_) {
            cur = parent_[cur];
            if (++steps > n) throw ValidationError("cycle detected in parent links");
        }
        depth_[x] = steps;
    }

    in_subtree_.assign(size_t(n) * n, 0);
    subtree_.assign(n, {});
    for (Label x = 0; x < n; ++x) {
        Label cur = x;
        while (true) {
            in_subtree_[size_t(cur) * n + x] = 1;
            subtree_[cur].push_back(x);
            if (cur == root_) break;
            cur = parent_[cur];
        }
    }
    for (auto& s : subtree_) std::sort(s.begin(), s.end());

    // All-pairs paths via the root walks, plus the metric as weight sums.
    paths_.assign(size_t(n) * n, {});
    metric_.assign(size_t(n) * n, 0.0);
    for (Label a = 0; a < n; ++a) {
        for (Label b = 0; b < n; ++b) {
            Label u = a, v = b;
            std::vector<Label> up, down;
            while (depth_[u] > depth_[v]) { up.push_back(u); u = parent_[u]; }
            while (depth_[v] > depth_[u]) { down.push_back(v); v = parent_[v]; }
            while (u != v) {
                up.push_back(u); u = parent_[u];
                down.push_back(v); v = parent_[v];
            }
            up.push_back(u);
            up.insert(up.end(), down.rbegin(), down.rend());
            double sum = 0;
            for (size_t i = 0; i + 1 < up.size(); ++i) {
                Label lo = depth_[up[i]] > depth_[up[i + 1]] ? up[i] : up[i + 1];
                sum += weight_[lo];
            }
            metric_[size_t(a) * n + b] = sum;
            paths_[size_t(a) * n + b] = std::move(up);
        }
    }
}

PathSplit LabelTree::split_overlap(Label fp, Label fq, Label alpha) const {
    const auto& pp = path(fp, alpha);
    const auto& qp = path(fq, alpha);
    size_t k = 0;
    while (k < pp.size() && k < qp.size() && pp[pp.size() - 1 - k] == qp[qp.size() - 1 - k]) ++k;
    PathSplit s;
    s.p_branch.assign(pp.begin(), pp.end() - k);
    s.q_branch.assign(qp.begin(), qp.end() - k);
    s.overlap.assign(pp.end() - k, pp.end());
    return s;
}

}  // namespace hints
