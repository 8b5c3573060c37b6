#include "hints/generators.hpp"

#include <algorithm>
#include <string>

namespace hints {

namespace {

// Cross-platform deterministic generator (splitmix64).
struct Rng {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) / 9007199254740992.0; }  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace

Instance nested_squares_instance(int width, int height) {
    if (width < 1 || height < 1) throw ValidationError("grid dimensions must be >= 1");
    Instance inst;
    inst.width = width;
    inst.height = height;
    inst.neighborhood = Neighborhood::N4;
    inst.label_names = {"R", "A", "B", "C", "D"};
    // R > A > {B, C, D}, unit edge weights.
    inst.tree = LabelTree({kNoLabel, 0, 1, 1, 1}, {0, 1, 1, 1, 1});
    inst.lambda = 1.0;
    inst.margin = {0, 0, 1.5, 1.5, 0};
    inst.star_center.assign(5, std::nullopt);

    enum { R = 0, A = 1, B = 2, C = 3, D = 4 };
    const int dmax = (std::min(width, height) - 1) / 2;
    auto target = [&](int x, int y) {
        int d = std::min(std::min(x, y), std::min(width - 1 - x, height - 1 - y));
        if (d <= 0 || dmax < 2) return R;
        if (d == 1) return A;
        if (dmax >= 5) {
            if (d <= 3) return B;
            if (d == 4) return A;
            return C;
        }
        return C;  // small grids: single interior core
    };

    const int N = width * height;
    inst.data.assign(size_t(N) * 5, 0.0);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            int p = y * width + x;
            int t = target(x, y);
            double* d = &inst.data[size_t(p) * 5];
            d[R] = (t == B || t == C) ? 10.0 : 0.0;
            d[A] = d[R] + 0.1;  // never profitable pixel-wise; forced in as margin shells
            d[B] = t == B ? 0.0 : 12.0;
            d[C] = t == C ? 0.0 : 12.0;
            d[D] = d[R] + 2.0;
        }
    return inst;
}

Instance random_instance(int width, int height, int labels, uint64_t seed) {
    if (width < 1 || height < 1 || labels < 1) throw ValidationError("invalid generator sizes");
    Rng rng{seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL};
    Instance inst;
    inst.width = width;
    inst.height = height;
    inst.neighborhood = rng.uniform() < 0.5 ? Neighborhood::N4 : Neighborhood::N8;
    std::vector<Label> parent(labels, kNoLabel);
    std::vector<double> weight(labels, 0.0);
    for (int l = 1; l < labels; ++l) {
        parent[l] = int(rng.next() % uint64_t(l));
        weight[l] = rng.uniform(0.0, 3.0);
    }
    inst.tree = LabelTree(parent, weight);
    for (int l = 0; l < labels; ++l) inst.label_names.push_back("L" + std::to_string(l));
    inst.lambda = rng.uniform(0.0, 2.0);
    const int N = width * height;
    inst.data.resize(size_t(N) * labels);
    for (auto& v : inst.data) v = rng.uniform(-5.0, 5.0);
    inst.margin.assign(labels, 0.0);
    for (int l = 1; l < labels; ++l)
        if (rng.uniform() < 0.3) inst.margin[l] = 1.5;
    inst.star_center.assign(labels, std::nullopt);
    for (int l = 1; l < labels; ++l)
        if (rng.uniform() < 0.15)
            inst.star_center[l] = Pixel{int(rng.next() % uint64_t(width)), int(rng.next() % uint64_t(height))};
    if (rng.uniform() < 0.5) {
        for (int k = 0; k < 3; ++k) {
            int x = int(rng.next() % uint64_t(width));
            int y = int(rng.next() % uint64_t(height));
            bool horiz = rng.uniform() < 0.5;
            int nx = horiz ? x + 1 : x;
            int ny = horiz ? y : y + 1;
            if (nx >= width || ny >= height) continue;
            inst.contrast[Instance::pair_key(y * width + x, ny * width + nx)] = rng.uniform(0.0, 2.0);
        }
    }
    return inst;
}

}  // namespace hints
