// config.hpp: scenario configuration. Flat "key = value" text files with
// '#' comments; unknown keys are rejected and every module precondition is
// validated at load time.
#ifndef PREPCTRL_CONFIG_HPP
#define PREPCTRL_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "prepctrl/budget.hpp"
#include "prepctrl/model.hpp"
#include "prepctrl/sweep.hpp"

namespace prepctrl {

struct ScenarioConfig {
    ModelParams params;   // beta/sigma already scaled by n_ref
    StateVector x0;
    TimeGrid grid;
    CostWeights weights;
    double u_fixed = 0.0; // constant control for the simulate command
    SweepConfig sweep;
    BudgetSpec budget;
    std::uint64_t master_seed = 42;
    int n_paths = 10;
    std::string out_dir = "out";

    // Unscaled transmission/noise inputs, kept for the run summary.
    double beta_tilde = 0.0;
    double sigma_tilde = 0.0;

    void validate() const; // throws std::invalid_argument naming the field
};

/// Baseline scenario: the stock parameter set and initial condition
/// (10 000 susceptible, 200 infected, T = 25 years, dt = 1/1000).
ScenarioConfig default_config();

/// Parses a flat key=value file on top of the defaults.
/// Throws std::invalid_argument naming the offending key/line.
ScenarioConfig load_config(const std::string& path);

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> n_paths;
};

void apply_overrides(ScenarioConfig& cfg, const CliOverrides& ov);

} // namespace prepctrl

#endif
