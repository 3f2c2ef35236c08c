#include "prepctrl/forward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace prepctrl {

void TimeGrid::validate() const {
    if (n_steps < 1) {
        throw std::invalid_argument("n_steps: must be >= 1");
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("t_end: must be finite and > 0");
    }
}

Vec5 drift(const StateVector& x, double u, const ModelParams& p) {
    const double f = force_of_infection(x, p);
    const double infection = p.beta * f * x.s;
    return {
        p.lambda_recruit - infection - p.mu * x.s - p.psi * x.s - u * x.s + p.theta * x.e,
        infection - p.xi3() * x.i + p.alpha * x.a + p.omega * x.c,
        p.phi * x.i - p.xi2() * x.c,
        p.rho * x.i - p.xi1() * x.a,
        p.psi * x.s - p.xi4() * x.e + u * x.s,
    };
}

Vec5 diffusion(const StateVector& x, const ModelParams& p) {
    // Noise moves mass between S and I only; computing the magnitude once
    // keeps the two components exact negatives of each other.
    const double v = p.sigma * force_of_infection(x, p) * x.s;
    return {-v, v, 0.0, 0.0, 0.0};
}

StepResult step(const StateVector& x, double u, double dw, double dt,
                const ModelParams& p, std::int64_t step_index) {
    const Vec5 b = drift(x, u, p);
    const Vec5 g = diffusion(x, p);
    Vec5 next = x.as_array();
    int clamped = 0;
    for (int k = 0; k < 5; ++k) {
        next[k] += b[k] * dt + g[k] * dw;
        if (!std::isfinite(next[k])) {
            throw numeric_error("non-finite state component " + std::to_string(k) +
                                " at step " + std::to_string(step_index) +
                                " (blow-up or bad dt)");
        }
        if (next[k] < 0.0) {
            next[k] = 0.0;
            ++clamped;
        }
    }
    return {StateVector::from_array(next), clamped};
}

StateTrajectory simulate(const ControlPath& u, const BrownianPath& w,
                         const StateVector& x0, const TimeGrid& grid,
                         const ModelParams& p) {
    const int n = grid.n_steps;
    if (static_cast<int>(u.size()) != n + 1) {
        throw std::invalid_argument("control path length does not match grid");
    }
    if (static_cast<int>(w.increments.size()) != n) {
        throw std::invalid_argument("Brownian path length does not match grid");
    }
    const double dt = grid.dt();
    StateTrajectory traj;
    traj.states.reserve(n + 1);
    traj.states.push_back(x0);
    StateVector x = x0;
    for (int k = 0; k < n; ++k) {
        StepResult r = step(x, u[k], w.increments[k], dt, p, k);
        traj.clamp_events += r.clamped;
        x = r.state;
        traj.states.push_back(x);
    }
    return traj;
}

} // namespace prepctrl
