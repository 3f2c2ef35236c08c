#include "prepctrl/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prepctrl/budget.hpp"
#include "prepctrl/montecarlo.hpp"
#include "prepctrl/output.hpp"

namespace prepctrl {

namespace {

using nlohmann::json;

const std::vector<std::string> kStateNames = {"S", "I", "C", "A", "E"};
const std::vector<std::string> kFullNames = {"S",  "I",  "C",  "A",  "E",  "u",
                                             "p1", "p2", "p3", "p4", "p5", "q1",
                                             "q2", "q3", "q4", "q5"};

std::vector<std::vector<double>> state_matrix(const StateTrajectory& traj) {
    const std::size_t n = traj.states.size();
    std::vector<std::vector<double>> m(5, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const Vec5 x = traj.states[k].as_array();
        for (int j = 0; j < 5; ++j) m[j][k] = x[j];
    }
    return m;
}

std::vector<std::vector<double>> full_matrix(const SweepResult& sw) {
    const std::size_t n = sw.xtraj.states.size();
    std::vector<std::vector<double>> m(16, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const Vec5 x = sw.xtraj.states[k].as_array();
        for (int j = 0; j < 5; ++j) m[j][k] = x[j];
        m[5][k] = sw.control[k];
        for (int j = 0; j < 5; ++j) {
            m[6 + j][k] = sw.adjtraj.states[k].p[j];
            m[11 + j][k] = sw.adjtraj.states[k].q[j];
        }
    }
    return m;
}

std::string path_file(const ScenarioConfig& cfg, int k) {
    return cfg.out_dir + "/path_" + std::to_string(k) + ".csv";
}

json grid_json(const TimeGrid& grid) {
    return {{"t_end", grid.t_end}, {"n_steps", grid.n_steps}, {"dt", grid.dt()}};
}

json config_json(const ScenarioConfig& cfg) {
    return {
        {"n_ref", cfg.params.n_ref},
        {"mu", cfg.params.mu},
        {"lambda_recruit", cfg.params.lambda_recruit},
        {"beta_tilde", cfg.beta_tilde},
        {"sigma_tilde", cfg.sigma_tilde},
        {"beta", cfg.params.beta},
        {"sigma", cfg.params.sigma},
        {"psi", cfg.params.psi},
        {"w1", cfg.weights.w1},
        {"w2", cfg.weights.w2},
        {"x0", {cfg.x0.s, cfg.x0.i, cfg.x0.c, cfg.x0.a, cfg.x0.e}},
    };
}

/// Discrete counterpart of the population bound: totals may not exceed
/// max(N(0), Lambda/mu) by more than 5%.
json population_bound_json(const ScenarioConfig& cfg, double max_total) {
    const double bound =
        std::max(cfg.x0.total(), cfg.params.lambda_recruit / cfg.params.mu) * 1.05;
    return {{"max_total", max_total}, {"bound", bound}, {"within_bound", max_total <= bound}};
}

double max_total_of(const StateTrajectory& traj) {
    double m = 0.0;
    for (const StateVector& x : traj.states) m = std::max(m, x.total());
    return m;
}

void write_summary(const ScenarioConfig& cfg, const json& summary) {
    write_text_file(cfg.out_dir + "/run.json", summary.dump(2) + "\n");
}

json sweep_summary_json(const std::vector<SweepResult>& sweeps) {
    json paths = json::array();
    double total_cost = 0.0;
    for (std::size_t k = 0; k < sweeps.size(); ++k) {
        const SweepResult& sw = sweeps[k];
        paths.push_back({
            {"path", k},
            {"iterations", sw.iterations},
            {"final_residual", sw.final_residual},
            {"converged", sw.converged},
            {"cost", sw.cost},
            {"clamp_events", sw.xtraj.clamp_events},
        });
        total_cost += sw.cost;
    }
    return {{"paths", paths}, {"mean_cost", total_cost / sweeps.size()}};
}

const char* kind_name(BudgetKind kind) {
    switch (kind) {
        case BudgetKind::TypeI: return "type1";
        case BudgetKind::TypeII: return "type2";
        case BudgetKind::None: break;
    }
    return "none";
}

} // namespace

int cmd_simulate(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const std::vector<BrownianPath> paths =
        make_paths(cfg.master_seed, cfg.n_paths, cfg.grid);
    const ControlPath u(cfg.grid.n_points(), cfg.u_fixed);

    EnsembleAccumulator acc(kStateNames, cfg.grid.n_points());
    json path_summaries = json::array();
    std::int64_t clamp_total = 0;
    double max_total = 0.0;
    for (int k = 0; k < cfg.n_paths; ++k) {
        const StateTrajectory traj = simulate(u, paths[k], cfg.x0, cfg.grid, cfg.params);
        write_path_csv(path_file(cfg, k), cfg.grid, traj, nullptr, nullptr);
        acc.add(state_matrix(traj));
        clamp_total += traj.clamp_events;
        max_total = std::max(max_total, max_total_of(traj));
        path_summaries.push_back({{"path", k}, {"clamp_events", traj.clamp_events}});
    }
    write_ensemble_csv(cfg.out_dir + "/ensemble.csv", cfg.grid,
                       acc.finalize(cfg.master_seed));

    const double coordinate_steps =
        5.0 * static_cast<double>(cfg.grid.n_steps) * cfg.n_paths;
    json summary = {
        {"schema_version", 1},
        {"command", "simulate"},
        {"seed", cfg.master_seed},
        {"n_paths", cfg.n_paths},
        {"grid", grid_json(cfg.grid)},
        {"config", config_json(cfg)},
        {"u_fixed", cfg.u_fixed},
        {"paths", path_summaries},
        {"clamp_events_total", clamp_total},
        {"clamp_fraction", clamp_total / coordinate_steps},
        {"population_bound", population_bound_json(cfg, max_total)},
    };
    write_summary(cfg, summary);
    return kExitOk;
}

int cmd_optimize(const ScenarioConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const std::vector<BrownianPath> paths =
        make_paths(cfg.master_seed, cfg.n_paths, cfg.grid);

    EnsembleAccumulator acc(kFullNames, cfg.grid.n_points());
    std::vector<SweepResult> sweeps;
    sweeps.reserve(cfg.n_paths);
    double max_total = 0.0;
    for (int k = 0; k < cfg.n_paths; ++k) {
        SweepResult sw = run_sweep(cfg.x0, cfg.grid, cfg.params, cfg.weights, paths[k],
                                   cfg.sweep);
        write_path_csv(path_file(cfg, k), cfg.grid, sw.xtraj, &sw.control, &sw.adjtraj);
        acc.add(full_matrix(sw));
        max_total = std::max(max_total, max_total_of(sw.xtraj));
        sweeps.push_back(std::move(sw));
    }
    write_ensemble_csv(cfg.out_dir + "/ensemble.csv", cfg.grid,
                       acc.finalize(cfg.master_seed));

    const bool all_converged =
        std::all_of(sweeps.begin(), sweeps.end(),
                    [](const SweepResult& sw) { return sw.converged; });
    json summary = {
        {"schema_version", 1},
        {"command", "optimize"},
        {"seed", cfg.master_seed},
        {"n_paths", cfg.n_paths},
        {"grid", grid_json(cfg.grid)},
        {"config", config_json(cfg)},
        {"sweep", sweep_summary_json(sweeps)},
        {"all_converged", all_converged},
        {"population_bound", population_bound_json(cfg, max_total)},
    };
    write_summary(cfg, summary);
    return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_optimize_budget(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.budget.kind == BudgetKind::None) {
        throw std::invalid_argument("budget_kind: must be type1 or type2 for optimize-budget");
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::vector<BrownianPath> paths =
        make_paths(cfg.master_seed, cfg.n_paths, cfg.grid);

    const ConstrainedResult res = solve_constrained(cfg.x0, cfg.grid, cfg.params,
                                                    cfg.weights, paths, cfg.sweep,
                                                    cfg.budget);

    EnsembleAccumulator acc(kFullNames, cfg.grid.n_points());
    double max_total = 0.0;
    for (int k = 0; k < cfg.n_paths; ++k) {
        const SweepResult& sw = res.sweeps[k];
        write_path_csv(path_file(cfg, k), cfg.grid, sw.xtraj, &sw.control, &sw.adjtraj);
        acc.add(full_matrix(sw));
        max_total = std::max(max_total, max_total_of(sw.xtraj));
    }
    write_ensemble_csv(cfg.out_dir + "/ensemble.csv", cfg.grid,
                       acc.finalize(cfg.master_seed));

    const bool all_converged =
        std::all_of(res.sweeps.begin(), res.sweeps.end(),
                    [](const SweepResult& sw) { return sw.converged; });
    json budget = {
        {"kind", kind_name(res.multiplier.kind)},
        {"cap", cfg.budget.cap},
        {"tol_rel", cfg.budget.tol_rel},
        {"lambda", res.multiplier.lambda},
        {"binding", res.multiplier.binding},
        {"budget", res.multiplier.budget},
        {"slackness", res.multiplier.slackness},
        {"path_budgets", res.path_budget},
        {"mean_budget", res.mean_budget},
        {"evaluations", res.multiplier.evaluations},
    };
    json summary = {
        {"schema_version", 1},
        {"command", "optimize-budget"},
        {"seed", cfg.master_seed},
        {"n_paths", cfg.n_paths},
        {"grid", grid_json(cfg.grid)},
        {"config", config_json(cfg)},
        {"sweep", sweep_summary_json(res.sweeps)},
        {"all_converged", all_converged},
        {"budget", budget},
        {"population_bound", population_bound_json(cfg, max_total)},
    };
    write_summary(cfg, summary);
    return all_converged ? kExitOk : kExitNotConverged;
}

int run_command(const std::string& name, const ScenarioConfig& cfg) {
    try {
        if (name == "simulate") return cmd_simulate(cfg);
        if (name == "optimize") return cmd_optimize(cfg);
        if (name == "optimize-budget") return cmd_optimize_budget(cfg);
        std::cerr << "unknown command: " << name << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const infeasible_budget_error& e) {
        std::cerr << "infeasible budget: " << e.what() << "\n";
        return kExitInfeasibleBudget;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace prepctrl
