#include "hints/energy.hpp"

#include <cmath>

namespace hints {

namespace {

void check_dims(const Instance& inst, const Labeling& f) {
    if (f.width != inst.width || f.height != inst.height)
        throw ValidationError("labeling dimensions do not match the instance");
    for (Label l : f.at)
        if (l < 0 || l >= inst.num_labels()) throw ValidationError("invalid label id in labeling");
}

}  // namespace

EnergyBreakdown evaluate_serial(const Instance& inst, const Labeling& f) {
    check_dims(inst, f);
    const LabelTree& tree = inst.tree;
    EnergyBreakdown e;
    for (int p = 0; p < inst.num_pixels(); ++p) {
        double d = inst.data_cost(p, f.at[p]);
        if (d == kForbiddenCost) {
            e.forbidden_uses++;
        } else {
            e.data_sum += d;
        }
    }
    for (const auto& pr : neighbor_pairs(inst))
        e.smoothness_sum += pr.s * tree.metric(f.at[pr.p], f.at[pr.q]);
    for (Label l = 0; l < inst.num_labels(); ++l) {
        if (inst.margin[l] > 0) {
            Label par = tree.parent(l);
            for (auto [p, q] : margin_pairs(inst, l)) {
                if (!tree.in_subtree(f.at[p], l)) continue;
                if (!tree.in_subtree(f.at[q], l) && f.at[q] != par) e.margin_violations++;
            }
        }
        if (inst.star_center[l]) {
            for (auto [p, q] : star_pairs(inst, l)) {
                if (tree.in_subtree(f.at[p], l) && !tree.in_subtree(f.at[q], l)) e.shape_violations++;
            }
        }
    }
    e.total_finite = e.data_sum + inst.lambda * e.smoothness_sum;
    e.feasible = e.margin_violations == 0 && e.shape_violations == 0 && e.forbidden_uses == 0;
    return e;
}

EnergyBreakdown evaluate(const Instance& inst, const Labeling& f) {
    check_dims(inst, f);
    const LabelTree& tree = inst.tree;
    const int H = inst.height, W = inst.width, L = inst.num_labels();
    const bool n8 = inst.neighborhood == Neighborhood::N8;

    // Row partials summed serially in row order keep the result bit-stable
    // across thread counts.
    std::vector<double> data_row(H, 0.0), smooth_row(H, 0.0);
    std::vector<long long> forb_row(H, 0), marg_row(H, 0), shape_row(H, 0);

    struct MarginOffsets {
        Label l;
        Label parent;
        std::vector<std::pair<int, int>> offs;
    };
    std::vector<MarginOffsets> margins;
    for (Label l = 0; l < L; ++l) {
        double delta = inst.margin[l];
        if (!(delta > 0)) continue;
        MarginOffsets m{l, tree.parent(l), {}};
        int r = int(std::ceil(delta));
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx) {
                if ((dx || dy) && double(dx) * dx + double(dy) * dy < delta * delta)
                    m.offs.push_back({dx, dy});
            }
        if (!m.offs.empty()) margins.push_back(std::move(m));
    }
    std::vector<std::pair<Label, Pixel>> stars;
    for (Label l = 0; l < L; ++l)
        if (inst.star_center[l]) stars.push_back({l, *inst.star_center[l]});

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < H; ++y) {
        double drow = 0, srow = 0;
        long long forb = 0, marg = 0, shp = 0;
        for (int x = 0; x < W; ++x) {
            const int p = y * W + x;
            const Label fp = f.at[p];
            double d = inst.data_cost(p, fp);
            if (d == kForbiddenCost)
                forb++;
            else
                drow += d;
            auto pair_cost = [&](int nx, int ny) {
                if (nx < 0 || nx >= W || ny < 0 || ny >= H) return;
                int q = ny * W + nx;
                srow += inst.contrast_of(p, q) * tree.metric(fp, f.at[q]);
            };
            pair_cost(x + 1, y);
            pair_cost(x, y + 1);
            if (n8) {
                pair_cost(x + 1, y + 1);
                pair_cost(x - 1, y + 1);
            }
            for (const auto& m : margins) {
                if (!tree.in_subtree(fp, m.l)) continue;
                for (auto [dx, dy] : m.offs) {
                    int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
                    Label fq = f.at[ny * W + nx];
                    if (!tree.in_subtree(fq, m.l) && fq != m.parent) marg++;
                }
            }
            for (const auto& [l, c] : stars) {
                if (p == inst.pixel_index(c.x, c.y)) continue;
                if (!tree.in_subtree(fp, l)) continue;
                Pixel nq = line_step_toward({x, y}, c);
                if (!tree.in_subtree(f.at[inst.pixel_index(nq.x, nq.y)], l)) shp++;
            }
        }
        data_row[y] = drow;
        smooth_row[y] = srow;
        forb_row[y] = forb;
        marg_row[y] = marg;
        shape_row[y] = shp;
    }

    EnergyBreakdown e;
    for (int y = 0; y < H; ++y) {
        e.data_sum += data_row[y];
        e.smoothness_sum += smooth_row[y];
        e.forbidden_uses += forb_row[y];
        e.margin_violations += marg_row[y];
        e.shape_violations += shape_row[y];
    }
    e.total_finite = e.data_sum + inst.lambda * e.smoothness_sum;
    e.feasible = e.margin_violations == 0 && e.shape_violations == 0 && e.forbidden_uses == 0;
    return e;
}

}  // namespace hints
