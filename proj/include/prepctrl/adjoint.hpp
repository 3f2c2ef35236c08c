// adjoint.hpp: Hamiltonian of the control problem, its analytic state
// gradient, and the pathwise backward integrator for the adjoint system
// with terminal condition p(T) = 0.
#ifndef PREPCTRL_ADJOINT_HPP
#define PREPCTRL_ADJOINT_HPP

#include <vector>

#include "prepctrl/forward.hpp"
#include "prepctrl/model.hpp"

namespace prepctrl {

/// Costate pair at one time point. p has units of cost per individual,
/// q of cost per individual per sqrt(year).
struct AdjointState {
    Vec5 p{};
    Vec5 q{};
};

struct AdjointTrajectory {
    std::vector<AdjointState> states; // n_steps+1, aligned with the forward grid
};

/// H = w1*i + w2*u^2 + lambda*s*u*c + drift(x,u).p + diffusion(x).q.
/// lambda_mult = 0 recovers the unconstrained Hamiltonian.
double hamiltonian(const StateVector& x, double u, const AdjointState& adj,
                   const CostWeights& w, double lambda_mult, double c,
                   const ModelParams& p);

/// Analytic dH/d(s,i,c,a,e), derived from the Hamiltonian expression above.
/// Cross-checked against central finite differences in the tests.
Vec5 grad_hamiltonian_x(const StateVector& x, double u, const AdjointState& adj,
                        const CostWeights& w, double lambda_mult, double c,
                        const ModelParams& p);

/// Backward Euler pass for the adjoint system along one forward path:
/// p(T) = 0, then p_k = p_{k+1} + dH/dx(x_{k+1}, u_{k+1}, adj_{k+1})*dt.
/// The martingale coefficients q are set to zero in the backward drift
/// (pathwise deterministic sweep policy) and stored alongside p.
/// cost_rate holds c(t) grid samples; empty means c == 0. Throws
/// numeric_error with the step index if a costate becomes non-finite.
AdjointTrajectory solve_backward(const StateTrajectory& xtraj, const ControlPath& u,
                                 const BrownianPath& w, const TimeGrid& grid,
                                 const CostWeights& weights, double lambda_mult,
                                 const std::vector<double>& cost_rate,
                                 const ModelParams& p);

} // namespace prepctrl

#endif
