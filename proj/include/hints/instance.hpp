#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hints/label_tree.hpp"
#include "hints/types.hpp"

namespace hints {

struct NeighborPair {
    int p = 0;  // pixel indices, row-major
    int q = 0;
    double s = 1.0;  // contrast multiplier s_pq
};

// A full problem instance: grid, tree, cost volume, smoothness weight,
// per-pair contrast, min-margins and star centers. Immutable after load.
struct Instance {
    int width = 0;
    int height = 0;
    Neighborhood neighborhood = Neighborhood::N4;
    LabelTree tree{{kNoLabel}, {0.0}};
    std::vector<std::string> label_names;         // index = label id
    std::vector<double> data;                     // [pixel * L + label], kForbiddenCost allowed
    double lambda = 1.0;
    std::vector<double> margin;                   // per label, pixels; <= 1 is vacuous
    std::vector<std::optional<Pixel>> star_center;// per label
    std::unordered_map<uint64_t, double> contrast;// canonical pair key -> s_pq, default 1.0

    int num_labels() const { return tree.size(); }
    int num_pixels() const { return width * height; }
    int pixel_index(int x, int y) const { return y * width + x; }
    Pixel pixel_at(int idx) const { return {idx % width, idx / width}; }

    double data_cost(int pixel, Label l) const { return data[size_t(pixel) * num_labels() + l]; }

    static uint64_t pair_key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
    }
    double contrast_of(int a, int b) const {
        auto it = contrast.find(pair_key(a, b));
        return it == contrast.end() ? 1.0 : it->second;
    }
};

// Unordered neighbor pairs of the grid under the instance neighborhood,
// each listed once with its contrast weight.
std::vector<NeighborPair> neighbor_pairs(const Instance& inst);

// All ordered pixel pairs (p, q), p != q, with euclidean |p-q| < margin(l).
std::vector<std::pair<int, int>> margin_pairs(const Instance& inst, Label l);

// Consecutive ordered pairs (p, next-toward-center) along discrete lines to
// the star center of l; one pair per pixel p != center.
std::vector<std::pair<int, int>> star_pairs(const Instance& inst, Label l);

// One 8-connected rasterization step from p toward c (p != c).
Pixel line_step_toward(Pixel p, Pixel c);

// Empty iff all Instance invariants hold; otherwise human-readable findings.
std::vector<std::string> validate(const Instance& inst);

}  // namespace hints
