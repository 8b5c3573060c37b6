// Compares the OpenMP kernels against their serial references: energy
// evaluation on generated instances and the exhaustive oracle on a small
// grid. Checks agreement while timing.
#include <chrono>
#include <cstdio>

#include "hints/generators.hpp"
#include "hints/oracle.hpp"
#include "hints/solver.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hints;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        fn();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: unavailable, kernels run serially\n");
#endif

    std::printf("\n== evaluate: serial reference vs parallel kernel ==\n");
    for (int side : {64, 128, 256}) {
        Instance inst = random_instance(side, side, 8, 7);
        for (Label l = 1; l < inst.num_labels(); ++l) inst.margin[l] = l % 2 ? 1.5 : 0.0;
        Labeling f(inst.width, inst.height);
        for (size_t i = 0; i < f.at.size(); ++i) f.at[i] = Label(i % inst.num_labels());
        EnergyBreakdown a, b;
        double t_serial = time_best_of(3, [&] { a = evaluate_serial(inst, f); });
        double t_par = time_best_of(3, [&] { b = evaluate(inst, f); });
        bool same = std::abs(a.total_finite - b.total_finite) <=
                        1e-9 * (1 + std::abs(a.total_finite)) &&
                    a.margin_violations == b.margin_violations &&
                    a.shape_violations == b.shape_violations;
        std::printf("%3dx%-3d serial %8.2f ms  parallel %8.2f ms  speedup %5.2fx  agree %s\n", side,
                    side, t_serial, t_par, t_serial / t_par, same ? "yes" : "NO");
    }

    std::printf("\n== oracle: odometer reference vs pruned parallel search ==\n");
    for (auto [w, h, L] : {std::tuple{3, 3, 3}, {3, 3, 4}, {4, 3, 3}}) {
        Instance inst = random_instance(w, h, L, 11);
        auto t0 = Clock::now();
        auto ref = exhaustive_minimize_serial(inst);
        double t_serial = ms_since(t0);
        t0 = Clock::now();
        auto fast = exhaustive_minimize(inst);
        double t_par = ms_since(t0);
        bool same = ref.first == fast.first;
        std::printf("%dx%d |L|=%d  reference %8.1f ms  search %8.1f ms  speedup %6.1fx  agree %s\n",
                    w, h, L, t_serial, t_par, t_serial / t_par, same ? "yes" : "NO");
    }

    std::printf("\n== nested-squares end to end ==\n");
    {
        Instance inst = nested_squares_instance(12, 12);
        SolverConfig cfg;
        auto t0 = Clock::now();
        SolveReport rep = solve(inst, init_trivial(inst), cfg);
        std::printf("12x12 path-moves: %.1f ms, energy %.3f, %d moves\n", ms_since(t0),
                    rep.final_energy.total_finite, rep.moves_accepted);
        Instance small = nested_squares_instance(6, 6);
        t0 = Clock::now();
        auto oracle = exhaustive_minimize(small, {1e30});
        std::printf("6x6 oracle: %.1f ms, energy %.3f\n", ms_since(t0),
                    oracle.second.total_finite);
    }
    return 0;
}
