#include "prepctrl/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace prepctrl {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        // model rates (beta/sigma given unscaled, divided by n_ref at load)
        "n_ref", "mu", "lambda_recruit", "beta_tilde", "sigma_tilde", "eta_c",
        "eta_a", "phi", "rho", "alpha", "omega", "d", "psi", "theta",
        // cost weights
        "w1", "w2",
        // initial state
        "s0", "i0", "c0", "a0", "e0",
        // grid
        "t_end", "n_steps",
        // fixed-control simulation
        "u_fixed",
        // Monte Carlo
        "seed", "n_paths",
        // sweep
        "sweep_lambda1", "sweep_lambda2", "sweep_tol_rel", "sweep_max_iters",
        "sweep_u_init",
        // budget constraint
        "budget_kind", "budget_cap", "budget_cost_const", "budget_cost_file",
        "budget_tol_rel", "budget_lambda_max0",
        // output
        "out_dir",
    };
    return keys;
}

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config file not readable: " + path);
    }
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().count(key)) {
            throw std::invalid_argument("unknown config key: '" + key + "' (line " +
                                        std::to_string(line_no) + ")");
        }
        if (kv.count(key)) {
            throw std::invalid_argument("duplicate config key: '" + key + "'");
        }
        if (value.empty()) {
            throw std::invalid_argument(key + ": empty value");
        }
        kv[key] = value;
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not a number: '" + value + "'");
    }
    if (pos != value.size()) {
        throw std::invalid_argument(key + ": trailing characters in '" + value + "'");
    }
    return v;
}

long long parse_integer(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not an integer: '" + value + "'");
    }
    if (pos != value.size()) {
        throw std::invalid_argument(key + ": trailing characters in '" + value + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not an unsigned integer: '" + value + "'");
    }
    if (pos != value.size()) {
        throw std::invalid_argument(key + ": trailing characters in '" + value + "'");
    }
    return v;
}

std::vector<double> read_cost_file(const std::string& key, const std::string& path,
                                   int expected) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument(key + ": file not readable: " + path);
    }
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        values.push_back(parse_double(key, line));
    }
    if (static_cast<int>(values.size()) != expected) {
        throw std::invalid_argument(key + ": expected " + std::to_string(expected) +
                                    " samples (n_steps+1), got " +
                                    std::to_string(values.size()));
    }
    return values;
}

} // namespace

ScenarioConfig default_config() {
    ScenarioConfig cfg;
    const double n_ref = 10200.0;
    const double mu = 1.0 / 69.54;
    cfg.beta_tilde = 0.752;
    cfg.sigma_tilde = 0.2;
    cfg.params = ModelParams{
        .lambda_recruit = n_ref * mu,
        .beta = cfg.beta_tilde / n_ref,
        .eta_c = 0.04,
        .eta_a = 1.35,
        .mu = mu,
        .psi = 0.0,
        .theta = 0.001,
        .phi = 1.0,
        .rho = 0.1,
        .omega = 0.09,
        .alpha = 0.33,
        .d = 1.0,
        .sigma = cfg.sigma_tilde / n_ref,
        .n_ref = n_ref,
    };
    cfg.x0 = StateVector{10000.0, 200.0, 0.0, 0.0, 0.0};
    cfg.grid = TimeGrid{25.0, 25000};
    cfg.weights = CostWeights{20.0, 0.3 * n_ref};
    cfg.u_fixed = 0.0;
    cfg.sweep = SweepConfig{};
    cfg.budget = BudgetSpec{};
    cfg.master_seed = 42;
    cfg.n_paths = 10;
    cfg.out_dir = "out";
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    const KeyValues kv = parse_key_values(path);
    ScenarioConfig cfg = default_config();

    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto num = [&](const char* key, double& target) {
        if (const std::string* v = get(key)) target = parse_double(key, *v);
    };

    // Population scale first: the transmission/noise scaling and the
    // lambda_recruit and w2 defaults all derive from it.
    double n_ref = cfg.params.n_ref;
    double mu = cfg.params.mu;
    num("n_ref", n_ref);
    num("mu", mu);
    cfg.params.n_ref = n_ref;
    cfg.params.mu = mu;
    cfg.params.lambda_recruit = n_ref * mu;
    cfg.weights.w2 = 0.3 * n_ref;

    num("lambda_recruit", cfg.params.lambda_recruit);
    num("beta_tilde", cfg.beta_tilde);
    num("sigma_tilde", cfg.sigma_tilde);
    if (!(n_ref > 0.0) || !std::isfinite(n_ref)) {
        throw std::invalid_argument("n_ref: must be finite and > 0");
    }
    cfg.params.beta = cfg.beta_tilde / n_ref;
    cfg.params.sigma = cfg.sigma_tilde / n_ref;
    num("eta_c", cfg.params.eta_c);
    num("eta_a", cfg.params.eta_a);
    num("phi", cfg.params.phi);
    num("rho", cfg.params.rho);
    num("alpha", cfg.params.alpha);
    num("omega", cfg.params.omega);
    num("d", cfg.params.d);
    num("psi", cfg.params.psi);
    num("theta", cfg.params.theta);

    num("w1", cfg.weights.w1);
    num("w2", cfg.weights.w2);

    num("s0", cfg.x0.s);
    num("i0", cfg.x0.i);
    num("c0", cfg.x0.c);
    num("a0", cfg.x0.a);
    num("e0", cfg.x0.e);

    num("t_end", cfg.grid.t_end);
    if (const std::string* v = get("n_steps")) {
        const long long n = parse_integer("n_steps", *v);
        if (n < 1 || n > 100'000'000) {
            throw std::invalid_argument("n_steps: must be in [1, 1e8]");
        }
        cfg.grid.n_steps = static_cast<int>(n);
    }

    num("u_fixed", cfg.u_fixed);

    if (const std::string* v = get("seed")) {
        cfg.master_seed = parse_u64("seed", *v);
    }
    if (const std::string* v = get("n_paths")) {
        const long long n = parse_integer("n_paths", *v);
        if (n < 1 || n > 1'000'000) {
            throw std::invalid_argument("n_paths: must be in [1, 1e6]");
        }
        cfg.n_paths = static_cast<int>(n);
    }

    num("sweep_lambda1", cfg.sweep.lambda1);
    num("sweep_lambda2", cfg.sweep.lambda2);
    num("sweep_tol_rel", cfg.sweep.tol_rel);
    if (const std::string* v = get("sweep_max_iters")) {
        const long long n = parse_integer("sweep_max_iters", *v);
        if (n < 1 || n > 1'000'000) {
            throw std::invalid_argument("sweep_max_iters: must be in [1, 1e6]");
        }
        cfg.sweep.max_iters = static_cast<int>(n);
    }
    num("sweep_u_init", cfg.sweep.u_init);

    if (const std::string* v = get("budget_kind")) {
        if (*v == "none") {
            cfg.budget.kind = BudgetKind::None;
        } else if (*v == "type1") {
            cfg.budget.kind = BudgetKind::TypeI;
        } else if (*v == "type2") {
            cfg.budget.kind = BudgetKind::TypeII;
        } else {
            throw std::invalid_argument("budget_kind: expected none|type1|type2, got '" +
                                        *v + "'");
        }
    }
    num("budget_cap", cfg.budget.cap);
    num("budget_tol_rel", cfg.budget.tol_rel);
    num("budget_lambda_max0", cfg.budget.lambda_max0);
    if (get("budget_cost_const") && get("budget_cost_file")) {
        throw std::invalid_argument(
            "budget_cost_const and budget_cost_file are mutually exclusive");
    }
    if (const std::string* v = get("budget_cost_const")) {
        const double c = parse_double("budget_cost_const", *v);
        cfg.budget.cost_rate.assign(cfg.grid.n_points(), c);
    }
    if (const std::string* v = get("budget_cost_file")) {
        cfg.budget.cost_rate = read_cost_file("budget_cost_file", *v, cfg.grid.n_points());
    }

    if (const std::string* v = get("out_dir")) {
        cfg.out_dir = *v;
    }

    cfg.validate();
    return cfg;
}

void ScenarioConfig::validate() const {
    params.validate();
    weights.validate();
    grid.validate();
    sweep.validate();
    budget.validate(grid);
    const struct { const char* name; double value; } coords[] = {
        {"s0", x0.s}, {"i0", x0.i}, {"c0", x0.c}, {"a0", x0.a}, {"e0", x0.e},
    };
    for (const auto& [name, value] : coords) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string(name) + ": must be finite and >= 0");
        }
    }
    if (!(u_fixed >= 0.0 && u_fixed <= 1.0)) {
        throw std::invalid_argument("u_fixed: must be in [0,1]");
    }
    if (n_paths < 1) {
        throw std::invalid_argument("n_paths: must be >= 1");
    }
    if (out_dir.empty()) {
        throw std::invalid_argument("out_dir: must not be empty");
    }
}

void apply_overrides(ScenarioConfig& cfg, const CliOverrides& ov) {
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.n_paths) cfg.n_paths = *ov.n_paths;
    cfg.validate();
}

} // namespace prepctrl
