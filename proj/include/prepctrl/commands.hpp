// commands.hpp: the three pipeline entry points behind the CLI. Each writes
// per-path CSVs, an ensemble CSV and a run.json summary into cfg.out_dir
// and returns a process exit code.
#ifndef PREPCTRL_COMMANDS_HPP
#define PREPCTRL_COMMANDS_HPP

#include <string>

#include "prepctrl/config.hpp"

namespace prepctrl {

// Exit codes shared by the commands and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitInfeasibleBudget = 4;
inline constexpr int kExitNumericError = 5;

/// Fixed-control simulation of the SDE (control == cfg.u_fixed).
int cmd_simulate(const ScenarioConfig& cfg);

/// Unconstrained sweep to the maximum-principle control, one sweep per path.
int cmd_optimize(const ScenarioConfig& cfg);

/// Budget-constrained sweep (Type I or Type II multiplier search).
int cmd_optimize_budget(const ScenarioConfig& cfg);

/// Dispatches by command name and maps exceptions to exit codes
/// (2 config, 4 infeasible budget, 5 numerical). Messages go to stderr.
int run_command(const std::string& name, const ScenarioConfig& cfg);

} // namespace prepctrl

#endif
