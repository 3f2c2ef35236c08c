// budget.hpp: budget-constraint layer. Computes the treatment-cost
// functional and finds the deterministic (Type I, expectation) or pathwise
// (Type II, almost-sure) Lagrange multiplier making the constrained sweep
// feasible.
#ifndef PREPCTRL_BUDGET_HPP
#define PREPCTRL_BUDGET_HPP

#include <vector>

#include "prepctrl/sweep.hpp"

namespace prepctrl {

enum class BudgetKind { None, TypeI, TypeII };

struct BudgetSpec {
    BudgetKind kind = BudgetKind::None;
    std::vector<double> cost_rate; // c(t) grid samples; empty means c == 1
    double cap = 0.0;              // total cost units
    double tol_rel = 0.01;         // feasibility tolerance on the budget residual
    double lambda_max0 = 1.0;      // initial bracket guess for the multiplier

    void validate(const TimeGrid& grid) const;

    /// Materialized c(t) samples (ones when cost_rate is empty).
    std::vector<double> effective_cost(const TimeGrid& grid) const;
};

/// Multiplier(s) and feasibility diagnostics. For Type I the vectors have
/// one entry (the deterministic multiplier); for Type II one entry per path.
struct MultiplierResult {
    BudgetKind kind = BudgetKind::None;
    std::vector<double> lambda;     // >= 0 everywhere
    std::vector<bool> binding;      // constraint active (lambda > 0)
    std::vector<double> budget;     // realized budget per lambda entry
    std::vector<double> slackness;  // lambda * (budget - cap)
    int evaluations = 0;            // multiplier evaluations spent
};

struct ConstrainedResult {
    MultiplierResult multiplier;
    std::vector<SweepResult> sweeps; // one per Brownian path
    std::vector<double> path_budget; // realized budget per path
    double mean_budget = 0.0;
};

/// Trapezoidal quadrature of S(t)*u(t)*c(t) over the grid.
double budget_functional(const StateTrajectory& xtraj, const ControlPath& u,
                         const std::vector<double>& c, const TimeGrid& grid);

/// Expected-budget constraint: finds lambda0 >= 0 so the mean budget over
/// the given paths matches the cap (or returns lambda0 = 0 when already
/// slack). Throws infeasible_budget_error when no bracket exists and
/// numeric_error when the sampled budget curve is not monotone in lambda.
ConstrainedResult solve_type1(const StateVector& x0, const TimeGrid& grid,
                              const ModelParams& params, const CostWeights& weights,
                              const std::vector<BrownianPath>& paths,
                              const SweepConfig& cfg, const BudgetSpec& spec);

/// Almost-sure constraint: applies the Type I procedure independently per
/// path, yielding one multiplier per path and per-path feasibility.
ConstrainedResult solve_type2(const StateVector& x0, const TimeGrid& grid,
                              const ModelParams& params, const CostWeights& weights,
                              const std::vector<BrownianPath>& paths,
                              const SweepConfig& cfg, const BudgetSpec& spec);

/// Dispatch on spec.kind; None runs the unconstrained sweep per path and is
/// the identity over run_sweep.
ConstrainedResult solve_constrained(const StateVector& x0, const TimeGrid& grid,
                                    const ModelParams& params, const CostWeights& weights,
                                    const std::vector<BrownianPath>& paths,
                                    const SweepConfig& cfg, const BudgetSpec& spec);

} // namespace prepctrl

#endif
