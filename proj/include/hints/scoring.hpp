#pragma once

#include "hints/types.hpp"

namespace hints {

// Sentinel in predicted label maps for pixels an external solver left
// unassigned; counts against recall, never against precision.
inline constexpr Label kUnlabeled = 255;

struct LabelScore {
    long long truth_count = 0;
    long long predicted_count = 0;
    long long correct = 0;
    double precision = 0;  // 0/0 defined as 0
    double recall = 0;
    double f1 = 0;
};

struct ScoreReport {
    std::vector<LabelScore> per_label;
    double weighted_precision = 0;  // weights |truth = l| / |omega|
    double weighted_recall = 0;
    double weighted_f1 = 0;  // harmonic mean of the weighted precision/recall
    double unlabeled_fraction = 0;
};

ScoreReport score(const Labeling& predicted, const Labeling& truth, int num_labels);

}  // namespace hints
