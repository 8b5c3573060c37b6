#include "hints/instance.hpp"

#include <cmath>
#include <cstdlib>

namespace hints {

std::vector<NeighborPair> neighbor_pairs(const Instance& inst) {
    std::vector<NeighborPair> out;
    const bool n8 = inst.neighborhood == Neighborhood::N8;
    out.reserve(size_t(inst.num_pixels()) * (n8 ? 4 : 2));
    for (int y = 0; y < inst.height; ++y) {
        for (int x = 0; x < inst.width; ++x) {
            int p = inst.pixel_index(x, y);
            auto add = [&](int nx, int ny) {
                if (nx < 0 || nx >= inst.width || ny < 0 || ny >= inst.height) return;
                int q = inst.pixel_index(nx, ny);
                out.push_back({p, q, inst.contrast_of(p, q)});
            };
            add(x + 1, y);
            add(x, y + 1);
            if (n8) {
                add(x + 1, y + 1);
                add(x - 1, y + 1);
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> margin_pairs(const Instance& inst, Label l) {
    std::vector<std::pair<int, int>> out;
    const double delta = inst.margin[l];
    if (!(delta > 0)) return out;
    const int r = int(std::ceil(delta));
    // Offsets with strict euclidean distance < delta.
    std::vector<std::pair<int, int>> offs;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (double(dx) * dx + double(dy) * dy < delta * delta) offs.push_back({dx, dy});
        }
    for (int y = 0; y < inst.height; ++y)
        for (int x = 0; x < inst.width; ++x)
            for (auto [dx, dy] : offs) {
                int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= inst.width || ny < 0 || ny >= inst.height) continue;
                out.push_back({inst.pixel_index(x, y), inst.pixel_index(nx, ny)});
            }
    return out;
}

Pixel line_step_toward(Pixel p, Pixel c) {
    int adx = std::abs(c.x - p.x), ady = std::abs(c.y - p.y);
    int sx = c.x > p.x ? 1 : (c.x < p.x ? -1 : 0);
    int sy = c.y > p.y ? 1 : (c.y < p.y ? -1 : 0);
    int err = adx - ady;
    int e2 = 2 * err;
    Pixel n = p;
    if (e2 > -ady) n.x += sx;
    if (e2 < adx) n.y += sy;
    return n;
}

std::vector<std::pair<int, int>> star_pairs(const Instance& inst, Label l) {
    std::vector<std::pair<int, int>> out;
    if (!inst.star_center[l]) throw ValidationError("no star center configured for label " + std::to_string(l));
    const Pixel c = *inst.star_center[l];
    for (int y = 0; y < inst.height; ++y)
        for (int x = 0; x < inst.width; ++x) {
            Pixel p{x, y};
            if (p == c) continue;
            Pixel q = line_step_toward(p, c);
            out.push_back({inst.pixel_index(p.x, p.y), inst.pixel_index(q.x, q.y)});
        }
    return out;
}

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> diags;
    const int L = inst.num_labels();
    if (inst.width < 1 || inst.height < 1) diags.push_back("grid dimensions must be >= 1");
    if (int(inst.label_names.size()) != L) diags.push_back("label name list does not match the tree size");
    if (inst.data.size() != size_t(inst.num_pixels()) * L)
        diags.push_back("data volume size != width*height*|L|");
    if (!(inst.lambda >= 0) || !std::isfinite(inst.lambda)) diags.push_back("lambda negative or non-finite");
    if (int(inst.margin.size()) != L) diags.push_back("margin list does not cover the label set");
    for (int l = 0; l < L && l < int(inst.margin.size()); ++l)
        if (!(inst.margin[l] >= 0) || !std::isfinite(inst.margin[l]))
            diags.push_back("margin negative or non-finite for label " + std::to_string(l));
    if (int(inst.star_center.size()) != L) diags.push_back("star center list does not cover the label set");
    for (int l = 0; l < L && l < int(inst.star_center.size()); ++l)
        if (inst.star_center[l]) {
            auto c = *inst.star_center[l];
            if (c.x < 0 || c.x >= inst.width || c.y < 0 || c.y >= inst.height)
                diags.push_back("star center outside grid for label " + std::to_string(l));
        }
    for (double v : inst.data)
        if (std::isnan(v) || v == -kForbiddenCost) {
            diags.push_back("data cost NaN or -inf");
            break;
        }
    for (const auto& [key, s] : inst.contrast) {
        if (!(s >= 0) || !std::isfinite(s)) diags.push_back("contrast weight negative or non-finite");
        int a = int(key >> 32), b = int(key & 0xffffffffu);
        if (a < 0 || b < 0 || a >= inst.num_pixels() || b >= inst.num_pixels()) {
            diags.push_back("contrast pair references pixels outside the grid");
            continue;
        }
        Pixel pa = inst.pixel_at(a), pb = inst.pixel_at(b);
        int dx = std::abs(pa.x - pb.x), dy = std::abs(pa.y - pb.y);
        bool neigh = inst.neighborhood == Neighborhood::N8 ? (std::max(dx, dy) == 1)
                                                           : (dx + dy == 1);
        if (!neigh) diags.push_back("contrast pair is not a neighbor pair under the configured neighborhood");
    }
    return diags;
}

}  // namespace hints
