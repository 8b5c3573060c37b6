#include "hints/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace hints {

namespace {

void budget_check(const Instance& inst, const OracleConfig& cfg) {
    double log_space = inst.num_pixels() * std::log(double(inst.num_labels()));
    if (log_space > std::log(cfg.max_labelings) + 1e-12)
        throw BudgetError("oracle budget exceeded: |L|^|omega| > " + std::to_string(cfg.max_labelings));
}

std::vector<std::vector<Label>> allowed_labels(const Instance& inst) {
    std::vector<std::vector<Label>> allowed(inst.num_pixels());
    for (int p = 0; p < inst.num_pixels(); ++p) {
        for (Label l = 0; l < inst.num_labels(); ++l)
            if (inst.data_cost(p, l) != kForbiddenCost) allowed[p].push_back(l);
        if (allowed[p].empty())
            throw InfeasibleError("no feasible labeling: every label forbidden at a pixel");
    }
    return allowed;
}

}  // namespace

std::pair<Labeling, EnergyBreakdown> exhaustive_minimize_serial(const Instance& inst,
                                                                const OracleConfig& cfg) {
    budget_check(inst, cfg);
    auto allowed = allowed_labels(inst);
    const int N = inst.num_pixels();

    Labeling f(inst.width, inst.height);
    std::vector<int> idx(N, 0);
    for (int p = 0; p < N; ++p) f.at[p] = allowed[p][0];

    bool found = false;
    double best = 0;
    Labeling best_f;
    while (true) {
        EnergyBreakdown e = evaluate_serial(inst, f);
        if (e.feasible && (!found || e.total_finite < best)) {
            found = true;
            best = e.total_finite;
            best_f = f;
        }
        int p = N - 1;
        while (p >= 0) {
            if (++idx[p] < int(allowed[p].size())) {
                f.at[p] = allowed[p][idx[p]];
                break;
            }
            idx[p] = 0;
            f.at[p] = allowed[p][0];
            --p;
        }
        if (p < 0) break;
    }
    if (!found) throw InfeasibleError("no feasible labeling exists");
    return {best_f, evaluate_serial(inst, best_f)};
}

namespace {

struct HardCheck {
    int in_px;    // pixel whose label must lie in subtree(l)
    int viol_px;  // pixel whose label must then avoid the violating set
    Label l;
    bool margin_sem;  // margin: violating = outside subtree(l) and parent(l)
};

struct SearchTables {
    std::vector<std::vector<Label>> allowed;
    std::vector<std::vector<std::pair<int, double>>> smooth;  // per p: (q < p, lambda*s)
    std::vector<std::vector<HardCheck>> hard;                 // per max(pixel) of the pair
    std::vector<double> suffix_min_data;                      // sum of per-pixel min data from p on
    int reach = 0;  // max index distance to an earlier smoothness neighbor
};

SearchTables build_tables(const Instance& inst) {
    SearchTables t;
    t.allowed = allowed_labels(inst);
    const int N = inst.num_pixels();
    t.smooth.resize(N);
    for (const auto& pr : neighbor_pairs(inst)) {
        int a = std::max(pr.p, pr.q), b = std::min(pr.p, pr.q);
        t.smooth[a].push_back({b, inst.lambda * pr.s});
    }
    t.hard.resize(N);
    const LabelTree& tree = inst.tree;
    for (Label l = 0; l < tree.size(); ++l) {
        if (l == tree.root()) continue;
        if (inst.margin[l] > 0)
            for (auto [p, q] : margin_pairs(inst, l))
                t.hard[std::max(p, q)].push_back({p, q, l, true});
        if (inst.star_center[l])
            for (auto [p, q] : star_pairs(inst, l))
                t.hard[std::max(p, q)].push_back({p, q, l, false});
    }
    t.suffix_min_data.assign(N + 1, 0.0);
    for (int p = N - 1; p >= 0; --p) {
        double lo = kForbiddenCost;
        for (Label l : t.allowed[p]) lo = std::min(lo, inst.data_cost(p, l));
        t.suffix_min_data[p] = t.suffix_min_data[p + 1] + lo;
    }
    t.reach = inst.neighborhood == Neighborhood::N8 ? inst.width + 1 : inst.width;
    return t;
}

// Shared incumbent value used only to strengthen pruning; stale reads are
// harmless for exactness.
struct SharedBest {
    std::atomic<double> value{std::numeric_limits<double>::infinity()};
    void offer(double v) {
        double cur = value.load(std::memory_order_relaxed);
        while (v < cur && !value.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
        }
    }
};

class DfsWorker {
public:
    DfsWorker(const Instance& inst, const SearchTables& t, SharedBest& best)
        : f_(inst.width, inst.height), inst_(inst), tree_(inst.tree), t_(t), best_(best) {}

    bool hard_ok(int p) const {
        for (const HardCheck& h : t_.hard[p]) {
            Label a = f_.at[h.in_px];
            if (!tree_.in_subtree(a, h.l)) continue;
            Label b = f_.at[h.viol_px];
            if (tree_.in_subtree(b, h.l)) continue;
            if (h.margin_sem && b == tree_.parent(h.l)) continue;
            return false;
        }
        return true;
    }

    double step_cost(int p) const {
        double c = inst_.data_cost(p, f_.at[p]);
        for (auto [q, w] : t_.smooth[p]) c += w * tree_.metric(f_.at[p], f_.at[q]);
        return c;
    }

    // Admissible completion bound given pixels [0, p) are assigned: pixels
    // in the frontier band are charged their best data-plus-assigned-
    // neighbor smoothness, the rest their best data alone. Future-future
    // pair costs are nonnegative and dropped.
    double completion_bound(int p) const {
        const int N = inst_.num_pixels();
        const int band_end = std::min(N, p + t_.reach);
        double b = t_.suffix_min_data[band_end];
        for (int q = p; q < band_end; ++q) {
            double lo = kForbiddenCost;
            for (Label v : t_.allowed[q]) {
                double c = inst_.data_cost(q, v);
                for (auto [a, w] : t_.smooth[q]) {
                    if (a >= p) continue;
                    c += w * tree_.metric(v, f_.at[a]);
                    if (c >= lo) break;
                }
                lo = std::min(lo, c);
            }
            b += lo;
        }
        return b;
    }

    // Assigns pixels [p, N) given a prefix with accumulated energy `acc`.
    void run(int p, double acc) {
        const int N = inst_.num_pixels();
        if (p == N) {
            if (!found_ || acc < best_local_) {
                found_ = true;
                best_local_ = acc;
                best_f_ = f_;
                best_.offer(acc);
            }
            return;
        }
        for (Label v : t_.allowed[p]) {
            f_.at[p] = v;
            if (!hard_ok(p)) continue;
            double acc2 = acc + step_cost(p);
            double bound = acc2 + completion_bound(p + 1);
            if (found_ && bound > best_local_) continue;
            if (bound > best_.value.load(std::memory_order_relaxed)) continue;
            run(p + 1, acc2);
        }
    }

    bool found_ = false;
    double best_local_ = 0;
    Labeling best_f_;
    Labeling f_;

private:
    const Instance& inst_;
    const LabelTree& tree_;
    const SearchTables& t_;
    SharedBest& best_;
};

}  // namespace

std::pair<Labeling, EnergyBreakdown> exhaustive_minimize(const Instance& inst,
                                                         const OracleConfig& cfg) {
    budget_check(inst, cfg);
    SearchTables tables = build_tables(inst);
    const int N = inst.num_pixels();

    // Tasks fix the first pixels; task order is the lexicographic order of
    // the prefixes, so the deterministic reduction below preserves the
    // lexicographic tie-break of a plain depth-first scan.
    int split = N >= 2 ? 2 : 1;
    std::vector<std::vector<Label>> prefixes{{}};
    for (int p = 0; p < split; ++p) {
        std::vector<std::vector<Label>> next;
        for (const auto& pre : prefixes)
            for (Label v : tables.allowed[p]) {
                auto e = pre;
                e.push_back(v);
                next.push_back(std::move(e));
            }
        prefixes = std::move(next);
    }

    SharedBest shared;
    std::vector<DfsWorker> workers;
    workers.reserve(prefixes.size());
    for (size_t i = 0; i < prefixes.size(); ++i) workers.emplace_back(inst, tables, shared);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < int(prefixes.size()); ++i) {
        DfsWorker& w = workers[i];
        double acc = 0;
        bool ok = true;
        for (int p = 0; p < split; ++p) {
            w.f_.at[p] = prefixes[i][p];
            if (!w.hard_ok(p)) {
                ok = false;
                break;
            }
            acc += w.step_cost(p);
        }
        if (ok) w.run(split, acc);
    }

    int best_i = -1;
    for (int i = 0; i < int(workers.size()); ++i) {
        if (!workers[i].found_) continue;
        if (best_i < 0 || workers[i].best_local_ < workers[best_i].best_local_) best_i = i;
    }
    if (best_i < 0) throw InfeasibleError("no feasible labeling exists");
    Labeling best = workers[best_i].best_f_;
    return {best, evaluate(inst, best)};
}

}  // namespace hints
