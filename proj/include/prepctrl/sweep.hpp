// sweep.hpp: forward-backward sweep fixed-point iteration. Alternates
// forward simulation, backward adjoint solve and a damped control update
// from the maximum-principle formula; also evaluates the running cost.
#ifndef PREPCTRL_SWEEP_HPP
#define PREPCTRL_SWEEP_HPP

#include <vector>

#include "prepctrl/adjoint.hpp"
#include "prepctrl/forward.hpp"

namespace prepctrl {

struct SweepConfig {
    double lambda1 = 0.9;  // weight on the previous control iterate
    double lambda2 = 0.1;  // weight on the new candidate (lambda1 + lambda2 = 1)
    double tol_rel = 1e-4; // relative sup-norm residual threshold
    int max_iters = 500;
    double u_init = 0.0;   // initial control guess

    void validate() const;
};

struct SweepResult {
    ControlPath control;
    StateTrajectory xtraj;
    AdjointTrajectory adjtraj;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    double cost = 0.0;                // running cost of the returned bundle
    double final_control_delta = 0.0; // sup-norm of the last control update
};

/// Maximum-principle control candidate clamped to [0,1]:
/// clamp( s*(p1 - p5 - lambda*c) / (2*w2) ).
double candidate_control(double s, double p1, double p5, double w2,
                         double lambda_mult, double c);

/// Trapezoidal quadrature of w1*I(t) + w2*u(t)^2 over the grid (single path;
/// the Monte Carlo layer takes the expectation).
double performance(const StateTrajectory& xtraj, const ControlPath& u,
                   const CostWeights& w, const TimeGrid& grid);

/// Runs the sweep on one frozen Brownian path (common random numbers across
/// iterations). Stops when the relative sup-norm residual over the 15
/// tracked processes (S,I,C,A,E,p1..p5,q1..q5) drops below tol_rel.
/// Non-convergence after max_iters yields converged=false, not an error;
/// non-finite values raise numeric_error.
SweepResult run_sweep(const StateVector& x0, const TimeGrid& grid,
                      const ModelParams& params, const CostWeights& weights,
                      const BrownianPath& w, const SweepConfig& cfg,
                      double lambda_mult = 0.0,
                      const std::vector<double>& cost_rate = {});

} // namespace prepctrl

#endif
