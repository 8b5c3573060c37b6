#include "hints/scoring.hpp"

namespace hints {

namespace {
double ratio(long long num, long long den) { return den == 0 ? 0.0 : double(num) / double(den); }
double f_measure(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }
}  // namespace

ScoreReport score(const Labeling& predicted, const Labeling& truth, int num_labels) {
    if (predicted.width != truth.width || predicted.height != truth.height)
        throw ValidationError("labeling dimensions do not match");
    ScoreReport rep;
    rep.per_label.resize(num_labels);
    long long unlabeled = 0;
    const long long total = (long long)truth.at.size();
    for (size_t i = 0; i < truth.at.size(); ++i) {
        Label t = truth.at[i];
        Label p = predicted.at[i];
        if (t < 0 || t >= num_labels) throw ValidationError("invalid label id in ground truth");
        rep.per_label[t].truth_count++;
        if (p == kUnlabeled) {
            unlabeled++;
            continue;
        }
        if (p < 0 || p >= num_labels) throw ValidationError("invalid label id in prediction");
        rep.per_label[p].predicted_count++;
        if (p == t) rep.per_label[t].correct++;
    }
    for (int l = 0; l < num_labels; ++l) {
        auto& s = rep.per_label[l];
        s.precision = ratio(s.correct, s.predicted_count);
        s.recall = ratio(s.correct, s.truth_count);
        s.f1 = f_measure(s.precision, s.recall);
        double w = double(s.truth_count) / double(total);
        rep.weighted_precision += w * s.precision;
        rep.weighted_recall += w * s.recall;
    }
    rep.weighted_f1 = f_measure(rep.weighted_precision, rep.weighted_recall);
    rep.unlabeled_fraction = double(unlabeled) / double(total);
    return rep;
}

}  // namespace hints
