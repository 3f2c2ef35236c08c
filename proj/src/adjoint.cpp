#include "prepctrl/adjoint.hpp"

#include <cmath>
#include <string>

namespace prepctrl {

double hamiltonian(const StateVector& x, double u, const AdjointState& adj,
                   const CostWeights& w, double lambda_mult, double c,
                   const ModelParams& p) {
    const Vec5 b = drift(x, u, p);
    const Vec5 g = diffusion(x, p);
    double h = w.w1 * x.i + w.w2 * u * u + lambda_mult * x.s * u * c;
    for (int k = 0; k < 5; ++k) {
        h += b[k] * adj.p[k] + g[k] * adj.q[k];
    }
    return h;
}

Vec5 grad_hamiltonian_x(const StateVector& x, double u, const AdjointState& adj,
                        const CostWeights& w, double lambda_mult, double c,
                        const ModelParams& p) {
    const auto& pp = adj.p;
    const auto& qq = adj.q;
    const double f = force_of_infection(x, p);
    // Noise enters S and I with opposite signs, so every diffusion
    // derivative couples through q2 - q1.
    const double dq = qq[1] - qq[0];
    return {
        lambda_mult * u * c                                   //
            + pp[0] * (-p.beta * f - p.mu - p.psi - u)        //
            + pp[1] * (p.beta * f)                            //
            + pp[4] * (p.psi + u)                             //
            + dq * p.sigma * f,
        w.w1                                                  //
            + pp[0] * (-p.beta * x.s)                         //
            + pp[1] * (p.beta * x.s - p.xi3())                //
            + pp[2] * p.phi                                   //
            + pp[3] * p.rho                                   //
            + dq * p.sigma * x.s,
        pp[0] * (-p.beta * p.eta_c * x.s)                     //
            + pp[1] * (p.beta * p.eta_c * x.s + p.omega)      //
            + pp[2] * (-p.xi2())                              //
            + dq * p.sigma * p.eta_c * x.s,
        pp[0] * (-p.beta * p.eta_a * x.s)                     //
            + pp[1] * (p.beta * p.eta_a * x.s + p.alpha)      //
            + pp[3] * (-p.xi1())                              //
            + dq * p.sigma * p.eta_a * x.s,
        pp[0] * p.theta + pp[4] * (-p.xi4()),
    };
}

AdjointTrajectory solve_backward(const StateTrajectory& xtraj, const ControlPath& u,
                                 const BrownianPath& w, const TimeGrid& grid,
                                 const CostWeights& weights, double lambda_mult,
                                 const std::vector<double>& cost_rate,
                                 const ModelParams& p) {
    const int n = grid.n_steps;
    if (static_cast<int>(xtraj.states.size()) != n + 1 ||
        static_cast<int>(u.size()) != n + 1) {
        throw std::invalid_argument("trajectory/control length does not match grid");
    }
    if (!cost_rate.empty() && static_cast<int>(cost_rate.size()) != n + 1) {
        throw std::invalid_argument("cost_rate length does not match grid");
    }
    (void)w; // increments unused under the zero-q backward policy

    const double dt = grid.dt();
    AdjointTrajectory adj;
    adj.states.assign(n + 1, AdjointState{}); // terminal condition p(T) = 0
    for (int k = n - 1; k >= 0; --k) {
        const AdjointState& next = adj.states[k + 1];
        const double c = cost_rate.empty() ? 0.0 : cost_rate[k + 1];
        const Vec5 grad =
            grad_hamiltonian_x(xtraj.states[k + 1], u[k + 1], next, weights,
                               lambda_mult, c, p);
        AdjointState& cur = adj.states[k];
        for (int j = 0; j < 5; ++j) {
            cur.p[j] = next.p[j] + grad[j] * dt;
            if (!std::isfinite(cur.p[j])) {
                throw numeric_error("non-finite costate component " + std::to_string(j) +
                                    " at backward step " + std::to_string(k));
            }
        }
        // cur.q stays zero by the backward policy.
    }
    return adj;
}

} // namespace prepctrl
