#pragma once

#include <optional>

#include "hints/label_tree.hpp"

namespace hints {

// Prohibited configurations [f_p, f_q] for one fixed neighbor direction
// class, over all tree labels.
struct ConstraintTable {
    int num_labels = 0;
    std::vector<uint8_t> prohibited;  // [p * num_labels + q]

    bool at(Label p, Label q) const { return prohibited[size_t(p) * num_labels + q] != 0; }
    void set(Label p, Label q, bool v = true) { prohibited[size_t(p) * num_labels + q] = v; }
    static ConstraintTable all_permissive(int n) { return {n, std::vector<uint8_t>(size_t(n) * n, 0)}; }
};

// A prohibited configuration [a, d] on the expansion paths gamma->alpha and
// beta->alpha that no single infinite edge between the chains can sever
// without also severing the permissible [b, c]: position(a) <= position(b)
// on path(gamma, alpha) and position(c) <= position(d) on path(beta, alpha),
// and the mirrored edge orientation is blocked by another permissible pair.
struct Witness {
    Label alpha = kNoLabel, beta = kNoLabel, gamma = kNoLabel;
    Label a = kNoLabel, b = kNoLabel, c = kNoLabel, d = kNoLabel;
};

struct RepresentabilityVerdict {
    bool representable = true;
    std::optional<Witness> witness;  // present iff not representable
};

// Scans every expansion triple (alpha; current labels gamma, beta) whose
// current configuration [gamma, beta] is itself permissible, and every
// prohibited cell on the two paths. A cell is encodable iff one of the two
// rectangle closures an infinite chain-to-chain edge can realize contains
// no permissible cell. Returns the first uncovered cell as a witness.
RepresentabilityVerdict check_representable(const LabelTree& tree, const ConstraintTable& table);

// prohibited(x, y) = x in subtree(l) and y outside subtree(l) + parent(l).
ConstraintTable margin_constraint_table(const LabelTree& tree, Label l);

}  // namespace hints
