#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hints/generators.hpp"
#include "hints/io.hpp"
#include "hints/oracle.hpp"

using namespace hints;

namespace {

// Exit codes: 0 success, 1 usage, 2 parse/validation, 3 infeasible, 4 budget.
enum { kOk = 0, kUsage = 1, kParse = 2, kInfeasible = 3, kBudget = 4 };

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

int run(int argc, char** argv) {
    CLI::App app{"HINTS tree-metric segmentation energies optimized with Path-Moves"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "minimize an instance's energy");
    std::string in_path, out_path = "labels.pgm", report_path, algo = "pathmoves", order = "fixed",
                palette_path;
    uint64_t seed = 0;
    int max_sweeps = 100;
    double tol = 1e-9;
    solve_cmd->add_option("--instance", in_path, "instance JSON")->required();
    solve_cmd->add_option("--algo", algo, "pathmoves|aexp")
        ->check(CLI::IsMember({"pathmoves", "aexp"}));
    solve_cmd->add_option("--order", order, "fixed|shuffle")->check(CLI::IsMember({"fixed", "shuffle"}));
    solve_cmd->add_option("--seed", seed, "shuffle seed");
    solve_cmd->add_option("--max-sweeps", max_sweeps, "sweep limit")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--tol", tol, "acceptance tolerance");
    solve_cmd->add_option("--out", out_path, "output label map (PGM)");
    solve_cmd->add_option("--report", report_path, "solve report (JSON)");
    solve_cmd->add_option("--palette", palette_path, "also write a color PPM rendering");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive feasible minimizer");
    std::string o_in, o_out = "oracle.pgm", o_report;
    double budget = 5e6;
    oracle_cmd->add_option("--instance", o_in, "instance JSON")->required();
    oracle_cmd->add_option("--out", o_out, "output label map (PGM)");
    oracle_cmd->add_option("--report", o_report, "report (JSON)");
    oracle_cmd->add_option("--budget", budget, "labeling-count budget (|L|^|pixels|)");

    // energy
    auto* energy_cmd = app.add_subcommand("energy", "evaluate a labeling");
    std::string e_in, e_labels;
    energy_cmd->add_option("--instance", e_in, "instance JSON")->required();
    energy_cmd->add_option("--labels", e_labels, "label map (PGM)")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "Path-Move representability of constraint tables");
    std::string c_tree, c_constraints;
    check_cmd->add_option("--tree", c_tree, "tree JSON")->required();
    check_cmd->add_option("--constraints", c_constraints, "constraint tables JSON")->required();

    // score
    auto* score_cmd = app.add_subcommand("score", "precision/recall/F1 against ground truth");
    std::string s_pred, s_truth, s_instance;
    score_cmd->add_option("--pred", s_pred, "predicted label map (PGM)")->required();
    score_cmd->add_option("--truth", s_truth, "ground-truth label map (PGM)")->required();
    score_cmd->add_option("--instance", s_instance, "optional instance JSON for label names");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "write a synthetic instance");
    std::string g_preset = "nested-squares", g_out = "instance.json";
    int g_w = 12, g_h = 12, g_labels = 4;
    uint64_t g_seed = 0;
    gen_cmd->add_option("--preset", g_preset, "nested-squares|random")
        ->check(CLI::IsMember({"nested-squares", "random"}));
    gen_cmd->add_option("--width", g_w, "grid width")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--height", g_h, "grid height")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--labels", g_labels, "label count (random preset)")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", g_seed, "random preset seed");
    gen_cmd->add_option("--out", g_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints the message or help text
        return rc == 0 ? kOk : kUsage;
    }

    if (solve_cmd->parsed()) {
        Instance inst = read_instance(in_path);
        SolverConfig cfg;
        cfg.algorithm = algo == "aexp" ? Algorithm::BinaryExpansion : Algorithm::PathMoves;
        cfg.order = order == "shuffle" ? ExpansionOrder::Shuffled : ExpansionOrder::FixedAscending;
        cfg.seed = seed;
        cfg.max_sweeps = max_sweeps;
        cfg.tolerance = tol;
        SolveReport rep = solve(inst, init_trivial(inst), cfg);
        write_label_map(rep.final_labeling, out_path, inst.label_names);
        if (!palette_path.empty()) write_label_ppm(rep.final_labeling, palette_path);
        if (!report_path.empty()) write_text(report_path, report_to_json(inst, cfg, rep));
        std::cout << breakdown_to_json(rep.final_energy);
        return kOk;
    }
    if (oracle_cmd->parsed()) {
        Instance inst = read_instance(o_in);
        OracleConfig ocfg;
        ocfg.max_labelings = budget;
        auto [best, e] = exhaustive_minimize(inst, ocfg);
        write_label_map(best, o_out, inst.label_names);
        if (!o_report.empty()) write_text(o_report, breakdown_to_json(e));
        std::cout << breakdown_to_json(e);
        return kOk;
    }
    if (energy_cmd->parsed()) {
        Instance inst = read_instance(e_in);
        Labeling f = read_label_map(e_labels);
        std::cout << breakdown_to_json(evaluate(inst, f));
        return kOk;
    }
    if (check_cmd->parsed()) {
        NamedTree nt = read_tree(c_tree);
        ConstraintFixture fx = read_constraints(c_constraints);
        if (fx.names != nt.names)
            throw ValidationError("constraint fixture labels do not match the tree labels");
        bool all_ok = true;
        for (const auto& [dir, table] : fx.tables) {
            RepresentabilityVerdict v = check_representable(nt.tree, table);
            if (v.representable) {
                std::cout << dir << ": representable\n";
            } else {
                all_ok = false;
                const Witness& w = *v.witness;
                auto n = [&](Label l) { return nt.names[l]; };
                std::cout << dir << ": NOT representable; witness: expanding " << n(w.alpha)
                          << " with current [" << n(w.gamma) << ", " << n(w.beta) << "] cannot forbid ["
                          << n(w.a) << ", " << n(w.d) << "] while permitting [" << n(w.b) << ", "
                          << n(w.c) << "]\n";
            }
        }
        std::cout << (all_ok ? "representable" : "NOT representable") << "\n";
        return kOk;
    }
    if (score_cmd->parsed()) {
        Labeling pred = read_label_map(s_pred);
        Labeling truth = read_label_map(s_truth);
        std::vector<std::string> names;
        int num_labels = 0;
        if (!s_instance.empty()) {
            Instance inst = read_instance(s_instance);
            names = inst.label_names;
            num_labels = inst.num_labels();
        } else {
            for (Label l : truth.at) num_labels = std::max(num_labels, l + 1);
        }
        std::cout << score_to_json(score(pred, truth, num_labels), names);
        return kOk;
    }
    if (gen_cmd->parsed()) {
        Instance inst = g_preset == "random" ? random_instance(g_w, g_h, g_labels, g_seed)
                                             : nested_squares_instance(g_w, g_h);
        write_instance(inst, g_out);
        std::cout << "wrote " << g_out << "\n";
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
