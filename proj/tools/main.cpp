// prepctrl: stochastic optimal control of the HIV/PReP compartment model.
// Subcommands: simulate (fixed control), optimize (maximum-principle sweep),
// optimize-budget (sweep with a Lagrange budget multiplier).
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prepctrl/commands.hpp"
#include "prepctrl/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stochastic optimal control of the HIV/PReP compartment SDE"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> n_paths;

    for (const char* name : {"simulate", "optimize", "optimize-budget"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "scenario config file (key = value lines)");
        sub->add_option("--seed", seed, "master seed override");
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--paths", n_paths, "number of Monte Carlo paths override");
    }
    app.get_subcommand("simulate")->description(
        "simulate the SDE under a fixed control and write path/ensemble CSVs");
    app.get_subcommand("optimize")->description(
        "run the forward-backward sweep to the optimal control per path");
    app.get_subcommand("optimize-budget")->description(
        "optimal control under a Type I or Type II budget constraint");

    CLI11_PARSE(app, argc, argv);

    prepctrl::ScenarioConfig cfg;
    try {
        cfg = config_path ? prepctrl::load_config(*config_path)
                          : prepctrl::default_config();
        prepctrl::apply_overrides(cfg, {seed, out_dir, n_paths});
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return prepctrl::kExitConfigError;
    }

    return prepctrl::run_command(app.get_subcommands().front()->get_name(), cfg);
}
