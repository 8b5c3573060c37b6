#include <doctest.h>

#include "hints/oracle.hpp"
#include "hints/solver.hpp"
#include "test_helpers.hpp"

using namespace hints;
using namespace hints::testutil;

namespace {

Instance random_small(Rng& rng, int max_w = 3, int max_h = 2, int max_labels = 6) {
    int w = 1 + rng.below(max_w), h = 1 + rng.below(max_h);
    int L = 2 + rng.below(max_labels - 1);
    std::vector<Label> parent(L, kNoLabel);
    std::vector<double> weight(L, 0);
    for (int l = 1; l < L; ++l) {
        parent[l] = rng.below(l);
        weight[l] = rng.uniform(0, 4);
    }
    Instance inst = make_instance(w, h, LabelTree(parent, weight), rng.uniform(0, 2));
    for (auto& d : inst.data) d = rng.uniform(-5, 5);
    for (int l = 1; l < L; ++l)
        if (rng.uniform() < 0.4) inst.margin[l] = 1.5;
    return inst;
}

// Uniform sample from the feasible labelings of a tiny instance.
Labeling random_feasible(const Instance& inst, Rng& rng) {
    std::vector<Labeling> feasible;
    Labeling f(inst.width, inst.height, 0);
    const int N = inst.num_pixels(), L = inst.num_labels();
    std::vector<int> idx(N, 0);
    while (true) {
        for (int p = 0; p < N; ++p) f.at[p] = idx[p];
        if (evaluate(inst, f).feasible) feasible.push_back(f);
        int p = N - 1;
        while (p >= 0 && ++idx[p] == L) idx[p--] = 0;
        if (p < 0) break;
    }
    REQUIRE(!feasible.empty());
    return feasible[rng.below(int(feasible.size()))];
}

}  // namespace

TEST_CASE("trivial init is the root everywhere and feasible") {
    Instance inst = make_instance(3, 2, six_label_tree());
    inst.margin[B] = 2.5;
    Labeling f = init_trivial(inst);
    for (Label l : f.at) CHECK(l == R);
    CHECK(evaluate(inst, f).feasible);
}

TEST_CASE("solver config validation") {
    Instance inst = make_instance(2, 1, six_label_tree());
    SolverConfig cfg;
    cfg.max_sweeps = 0;
    CHECK_THROWS_AS(solve(inst, init_trivial(inst), cfg), ValidationError);
    cfg = {};
    Labeling bad(2, 1, B);
    bad.at[1] = C;
    inst.margin[B] = 1.5;
    CHECK_THROWS_AS(solve(inst, bad, cfg), InfeasibleError);
}

TEST_CASE("no-improvement instances converge in one sweep") {
    Instance inst = make_instance(3, 3, six_label_tree());
    for (int p = 0; p < 9; ++p)
        for (Label l = 0; l < 6; ++l) inst.data[size_t(p) * 6 + l] = l == R ? 0.0 : 5.0;
    SolveReport rep = solve(inst, init_trivial(inst), {});
    CHECK(rep.sweeps == 1);
    CHECK(rep.moves_accepted == 0);
    CHECK(rep.final_labeling == init_trivial(inst));
}

TEST_CASE("one path move on the chain end reaches the oracle optimum") {
    Rng rng(31);
    for (int iter = 0; iter < 10; ++iter) {
        int L = 3 + rng.below(3);
        std::vector<Label> parent(L, kNoLabel);
        std::vector<double> weight(L, 0);
        for (int l = 1; l < L; ++l) {
            parent[l] = l - 1;  // chain
            weight[l] = rng.uniform(0, 3);
        }
        Instance inst = make_instance(3, 3, LabelTree(parent, weight), rng.uniform(0, 1.5));
        for (auto& d : inst.data) d = rng.uniform(-5, 5);
        Labeling moved = path_move(inst, init_trivial(inst), L - 1);
        auto [opt, opt_e] = exhaustive_minimize(inst);
        CHECK(close(evaluate(inst, moved).total_finite, opt_e.total_finite));
    }
}

TEST_CASE("binary expansion basics") {
    Instance inst = make_instance(2, 1, six_label_tree());
    Labeling allr = init_trivial(inst);
    CHECK(binary_expansion_move(inst, allr, R) == allr);

    // Exhaustive 4-case check on random 2-pixel instances.
    Rng rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        Instance ri = make_instance(2, 1, six_label_tree(
            {0, rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4),
             rng.uniform(0, 4)}), rng.uniform(0, 2));
        for (auto& d : ri.data) d = rng.uniform(-5, 5);
        if (rng.uniform() < 0.5) ri.margin[1 + rng.below(5)] = 1.5;
        Labeling cur = random_feasible(ri, rng);
        Label alpha = rng.below(6);
        Labeling got = binary_expansion_move(ri, cur, alpha);
        EnergyBreakdown got_e = evaluate(ri, got);
        CHECK(got_e.feasible);

        double best = FlowNetwork::kInf;
        for (int mask = 0; mask < 4; ++mask) {
            Labeling f = cur;
            if (mask & 1) f.at[0] = alpha;
            if (mask & 2) f.at[1] = alpha;
            EnergyBreakdown e = evaluate(ri, f);
            if (e.feasible) best = std::min(best, e.total_finite);
        }
        CHECK(close(got_e.total_finite, best));
    }
}

TEST_CASE("path move dominates binary expansion per move") {
    Rng rng(404);
    for (int iter = 0; iter < 60; ++iter) {
        Instance inst = random_small(rng);
        Labeling cur = random_feasible(inst, rng);
        Label alpha = rng.below(inst.num_labels());
        double path_e = evaluate(inst, path_move(inst, cur, alpha)).total_finite;
        double bin_e = evaluate(inst, binary_expansion_move(inst, cur, alpha)).total_finite;
        CHECK(path_e <= bin_e + 1e-9);
    }
}

TEST_CASE("traces are monotone and deterministic") {
    Rng rng(909);
    for (int iter = 0; iter < 20; ++iter) {
        Instance inst = random_small(rng);
        SolverConfig cfg;
        cfg.order = ExpansionOrder::Shuffled;
        cfg.seed = rng.next();
        cfg.algorithm = iter % 2 ? Algorithm::BinaryExpansion : Algorithm::PathMoves;
        SolveReport a = solve(inst, init_trivial(inst), cfg);
        SolveReport b = solve(inst, init_trivial(inst), cfg);
        REQUIRE(a.trace.size() == b.trace.size());
        for (size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(a.trace[i].alpha == b.trace[i].alpha);
            CHECK(a.trace[i].accepted == b.trace[i].accepted);
            CHECK(a.trace[i].energy == b.trace[i].energy);  // bit-for-bit
        }
        CHECK(a.final_labeling == b.final_labeling);

        double prev = evaluate(inst, init_trivial(inst)).total_finite;
        for (const auto& t : a.trace) {
            CHECK(t.energy <= prev + 1e-12);
            if (t.accepted) CHECK(t.energy < prev - cfg.tolerance + 1e-15);
            CHECK(t.feasible);
            prev = t.energy;
        }
        CHECK(evaluate(inst, a.final_labeling).feasible);
    }
}
