#include "prepctrl/budget.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace prepctrl {

void BudgetSpec::validate(const TimeGrid& grid) const {
    if (!(cap >= 0.0) || !std::isfinite(cap)) {
        throw std::invalid_argument("budget_cap: must be finite and >= 0");
    }
    if (!(tol_rel > 0.0)) {
        throw std::invalid_argument("budget_tol_rel: must be > 0");
    }
    if (!(lambda_max0 > 0.0)) {
        throw std::invalid_argument("budget_lambda_max0: must be > 0");
    }
    if (!cost_rate.empty()) {
        if (static_cast<int>(cost_rate.size()) != grid.n_points()) {
            throw std::invalid_argument("budget cost samples: length must be n_steps+1");
        }
        for (double c : cost_rate) {
            if (!(c >= 0.0) || !std::isfinite(c)) {
                throw std::invalid_argument("budget cost samples: must be finite and >= 0");
            }
        }
    }
}

std::vector<double> BudgetSpec::effective_cost(const TimeGrid& grid) const {
    if (!cost_rate.empty()) return cost_rate;
    return std::vector<double>(grid.n_points(), 1.0);
}

double budget_functional(const StateTrajectory& xtraj, const ControlPath& u,
                         const std::vector<double>& c, const TimeGrid& grid) {
    if (xtraj.states.size() != u.size() || u.size() != c.size() ||
        static_cast<int>(u.size()) != grid.n_points()) {
        throw std::invalid_argument("budget integrand lengths do not match grid");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
        const double f0 = xtraj.states[k].s * u[k] * c[k];
        const double f1 = xtraj.states[k + 1].s * u[k + 1] * c[k + 1];
        sum += 0.5 * (f0 + f1);
    }
    return sum * grid.dt();
}

namespace {

struct Evaluation {
    double lambda = 0.0;
    std::vector<SweepResult> sweeps;
    std::vector<double> budgets;
    double g = 0.0; // mean budget over the evaluated paths
};

/// Records sampled (lambda, g) pairs and aborts when the curve is not
/// non-increasing; a monotone curve is what makes the bisection valid.
class MonotoneLog {
public:
    void record(double lambda, double g) {
        for (const auto& [l_prev, g_prev] : points_) {
            const double slack = 1e-9 * (1.0 + std::abs(g_prev) + std::abs(g));
            const bool bad = (lambda > l_prev && g > g_prev + slack) ||
                             (lambda < l_prev && g_prev > g + slack);
            if (bad) {
                std::ostringstream msg;
                msg << "budget functional not monotone in the multiplier: g(" << l_prev
                    << ") = " << g_prev << " vs g(" << lambda << ") = " << g
                    << "; aborting bisection";
                throw numeric_error(msg.str());
            }
        }
        points_.emplace_back(lambda, g);
    }

private:
    std::vector<std::pair<double, double>> points_;
};

struct SearchResult {
    Evaluation eval;
    bool binding = false;
    int evaluations = 0;
};

/// Shared multiplier search: slack test at lambda = 0, geometric bracketing,
/// then bisection to |g - cap| <= tol_rel*cap (a cap of zero is special: the
/// first multiplier achieving zero budget is returned, since the only
/// feasible control is u == 0).
template <typename EvalFn>
SearchResult find_multiplier(EvalFn&& evaluate, double cap, double tol_rel,
                             double lambda_max0) {
    MonotoneLog log;
    int n_evals = 0;
    auto eval_at = [&](double lambda) {
        Evaluation e = evaluate(lambda);
        ++n_evals;
        log.record(lambda, e.g);
        return e;
    };

    Evaluation e0 = eval_at(0.0);
    if (e0.g <= cap) {
        return {std::move(e0), false, n_evals};
    }

    const auto feasible = [cap](double g) { return cap > 0.0 ? g <= cap : g <= 0.0; };

    double hi = lambda_max0;
    Evaluation e_hi = eval_at(hi);
    int doublings = 0;
    while (!feasible(e_hi.g)) {
        if (++doublings > 60) {
            std::ostringstream msg;
            msg << "no multiplier bracket after 60 doublings (lambda = " << hi
                << ", budget = " << e_hi.g << ", cap = " << cap
                << "); the cap appears unreachable";
            throw infeasible_budget_error(msg.str());
        }
        hi *= 2.0;
        e_hi = eval_at(hi);
    }

    if (cap == 0.0) {
        return {std::move(e_hi), true, n_evals};
    }

    const auto close_enough = [&](const Evaluation& e) {
        const double resid = std::abs(e.g - cap);
        return resid <= tol_rel * cap &&
               std::abs(e.lambda * (e.g - cap)) <= tol_rel * (1.0 + cap);
    };

    if (close_enough(e_hi)) {
        return {std::move(e_hi), true, n_evals};
    }

    double lo = 0.0; // g(lo) > cap, g(hi) <= cap
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        Evaluation e_mid = eval_at(mid);
        if (close_enough(e_mid)) {
            return {std::move(e_mid), true, n_evals};
        }
        if (e_mid.g > cap) {
            lo = mid;
        } else {
            hi = mid;
            e_hi = std::move(e_mid);
        }
    }
    // Interval exhausted; return the feasible endpoint with its residual.
    return {std::move(e_hi), true, n_evals};
}

ConstrainedResult assemble(BudgetKind kind, std::vector<double> lambda,
                           std::vector<bool> binding, std::vector<double> per_lambda_budget,
                           double cap, std::vector<SweepResult> sweeps,
                           std::vector<double> path_budget, int evaluations) {
    ConstrainedResult res;
    res.multiplier.kind = kind;
    res.multiplier.lambda = std::move(lambda);
    res.multiplier.binding = std::move(binding);
    res.multiplier.budget = std::move(per_lambda_budget);
    res.multiplier.evaluations = evaluations;
    res.multiplier.slackness.reserve(res.multiplier.lambda.size());
    for (std::size_t j = 0; j < res.multiplier.lambda.size(); ++j) {
        res.multiplier.slackness.push_back(res.multiplier.lambda[j] *
                                           (res.multiplier.budget[j] - cap));
    }
    res.sweeps = std::move(sweeps);
    res.path_budget = std::move(path_budget);
    double total = 0.0;
    for (double b : res.path_budget) total += b;
    res.mean_budget = res.path_budget.empty() ? 0.0 : total / res.path_budget.size();
    return res;
}

} // namespace

ConstrainedResult solve_type1(const StateVector& x0, const TimeGrid& grid,
                              const ModelParams& params, const CostWeights& weights,
                              const std::vector<BrownianPath>& paths,
                              const SweepConfig& cfg, const BudgetSpec& spec) {
    spec.validate(grid);
    const std::vector<double> c = spec.effective_cost(grid);

    auto evaluate = [&](double lambda) {
        Evaluation e;
        e.lambda = lambda;
        e.sweeps.reserve(paths.size());
        e.budgets.reserve(paths.size());
        double total = 0.0;
        for (const BrownianPath& w : paths) {
            SweepResult sw = run_sweep(x0, grid, params, weights, w, cfg, lambda, c);
            const double b = budget_functional(sw.xtraj, sw.control, c, grid);
            e.budgets.push_back(b);
            total += b;
            e.sweeps.push_back(std::move(sw));
        }
        e.g = total / paths.size();
        return e;
    };

    SearchResult found = find_multiplier(evaluate, spec.cap, spec.tol_rel, spec.lambda_max0);
    return assemble(BudgetKind::TypeI, {found.eval.lambda}, {found.binding},
                    {found.eval.g}, spec.cap, std::move(found.eval.sweeps),
                    std::move(found.eval.budgets), found.evaluations);
}

ConstrainedResult solve_type2(const StateVector& x0, const TimeGrid& grid,
                              const ModelParams& params, const CostWeights& weights,
                              const std::vector<BrownianPath>& paths,
                              const SweepConfig& cfg, const BudgetSpec& spec) {
    spec.validate(grid);
    const std::vector<double> c = spec.effective_cost(grid);

    std::vector<double> lambda;
    std::vector<bool> binding;
    std::vector<double> budgets;
    std::vector<SweepResult> sweeps;
    int evaluations = 0;

    // One almost-sure multiplier realization per path, each found by the
    // same search as the expectation case but on the single-path budget.
    for (const BrownianPath& w : paths) {
        auto evaluate = [&](double lam) {
            Evaluation e;
            e.lambda = lam;
            SweepResult sw = run_sweep(x0, grid, params, weights, w, cfg, lam, c);
            e.g = budget_functional(sw.xtraj, sw.control, c, grid);
            e.budgets.push_back(e.g);
            e.sweeps.push_back(std::move(sw));
            return e;
        };
        SearchResult found =
            find_multiplier(evaluate, spec.cap, spec.tol_rel, spec.lambda_max0);
        lambda.push_back(found.eval.lambda);
        binding.push_back(found.binding);
        budgets.push_back(found.eval.g);
        sweeps.push_back(std::move(found.eval.sweeps.front()));
        evaluations += found.evaluations;
    }

    std::vector<double> per_lambda_budget = budgets;
    return assemble(BudgetKind::TypeII, std::move(lambda), std::move(binding),
                    std::move(per_lambda_budget), spec.cap, std::move(sweeps),
                    std::move(budgets), evaluations);
}

ConstrainedResult solve_constrained(const StateVector& x0, const TimeGrid& grid,
                                    const ModelParams& params, const CostWeights& weights,
                                    const std::vector<BrownianPath>& paths,
                                    const SweepConfig& cfg, const BudgetSpec& spec) {
    switch (spec.kind) {
        case BudgetKind::TypeI:
            return solve_type1(x0, grid, params, weights, paths, cfg, spec);
        case BudgetKind::TypeII:
            return solve_type2(x0, grid, params, weights, paths, cfg, spec);
        case BudgetKind::None:
            break;
    }
    // Identity over run_sweep: unconstrained sweeps, no multiplier.
    const std::vector<double> c = spec.effective_cost(grid);
    std::vector<SweepResult> sweeps;
    std::vector<double> budgets;
    sweeps.reserve(paths.size());
    for (const BrownianPath& w : paths) {
        SweepResult sw = run_sweep(x0, grid, params, weights, w, cfg);
        budgets.push_back(budget_functional(sw.xtraj, sw.control, c, grid));
        sweeps.push_back(std::move(sw));
    }
    return assemble(BudgetKind::None, {}, {}, {}, spec.cap, std::move(sweeps),
                    std::move(budgets), 0);
}

} // namespace prepctrl
