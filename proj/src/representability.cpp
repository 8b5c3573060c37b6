#include "hints/representability.hpp"

namespace hints {

RepresentabilityVerdict check_representable(const LabelTree& tree, const ConstraintTable& table) {
    const int L = tree.size();
    if (table.num_labels != L) throw ValidationError("constraint table does not match the label set");

    for (Label alpha = 0; alpha < L; ++alpha) {
        for (Label gamma = 0; gamma < L; ++gamma) {
            for (Label beta = 0; beta < L; ++beta) {
                if (table.at(gamma, beta)) continue;  // unreachable current pair
                const auto& P = tree.path(gamma, alpha);
                const auto& Q = tree.path(beta, alpha);
                const int hp = int(P.size()), hq = int(Q.size());
                for (int i = 0; i < hp; ++i) {
                    for (int j = 0; j < hq; ++j) {
                        if (!table.at(P[i], Q[j])) continue;
                        // Closure of the edge forbidding (suffix of P from i)
                        // x (prefix of Q to j): blocked by any permissible
                        // cell inside it.
                        int b1 = -1, c1 = -1;
                        for (int bi = i; bi < hp && b1 < 0; ++bi)
                            for (int cj = 0; cj <= j; ++cj)
                                if (!table.at(P[bi], Q[cj])) {
                                    b1 = bi;
                                    c1 = cj;
                                    break;
                                }
                        if (b1 < 0) continue;  // encodable toward alpha
                        // Mirrored closure: (prefix of P to i) x (suffix of Q
                        // from j).
                        bool mirrored_ok = true;
                        for (int bi = 0; bi <= i && mirrored_ok; ++bi)
                            for (int cj = j; cj < hq; ++cj)
                                if (!table.at(P[bi], Q[cj])) {
                                    mirrored_ok = false;
                                    break;
                                }
                        if (mirrored_ok) continue;  // encodable away from alpha
                        Witness w;
                        w.alpha = alpha;
                        w.beta = beta;
                        w.gamma = gamma;
                        w.a = P[i];
                        w.d = Q[j];
                        w.b = P[b1];
                        w.c = Q[c1];
                        return {false, w};
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

ConstraintTable margin_constraint_table(const LabelTree& tree, Label l) {
    if (l == tree.root()) throw ValidationError("margin table undefined for the root label");
    const int L = tree.size();
    ConstraintTable t = ConstraintTable::all_permissive(L);
    Label par = tree.parent(l);
    for (Label x = 0; x < L; ++x)
        for (Label y = 0; y < L; ++y)
            if (tree.in_subtree(x, l) && !tree.in_subtree(y, l) && y != par) t.set(x, y);
    return t;
}

}  // namespace hints
