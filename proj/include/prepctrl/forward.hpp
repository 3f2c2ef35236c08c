// forward.hpp: drift/diffusion of the controlled compartment SDE and the
// forward Euler-Maruyama integrator producing state trajectories for a given
// control path and Brownian path.
#ifndef PREPCTRL_FORWARD_HPP
#define PREPCTRL_FORWARD_HPP

#include <cstdint>
#include <vector>

#include "prepctrl/model.hpp"

namespace prepctrl {

/// Uniform grid t_k = k*dt on [0, t_end] with dt = t_end/n_steps.
struct TimeGrid {
    double t_end = 0.0;
    int n_steps = 0;

    double dt() const { return t_end / n_steps; }
    int n_points() const { return n_steps + 1; }
    double time(int k) const { return k * dt(); }

    void validate() const;
};

/// Discretized Brownian motion: n_steps increments, each N(0, dt).
/// Regenerating with the same seed reproduces identical increments.
struct BrownianPath {
    std::uint64_t seed = 0;
    std::vector<double> increments;
};

/// Control levels u(t_k) in [0,1], piecewise constant on [t_k, t_{k+1}).
/// Stored as n_steps+1 samples aligned with the grid.
using ControlPath = std::vector<double>;

struct StateTrajectory {
    std::vector<StateVector> states; // n_steps+1 points
    std::int64_t clamp_events = 0;   // coordinates clipped to zero
};

/// Drift of (S, I, C, A, E) at state x under control level u.
Vec5 drift(const StateVector& x, double u, const ModelParams& p);

/// Diffusion of (S, I, C, A, E); only the S and I components carry noise
/// and they cancel exactly: (-v, +v, 0, 0, 0).
Vec5 diffusion(const StateVector& x, const ModelParams& p);

struct StepResult {
    StateVector state;
    int clamped = 0; // coordinates clipped to zero in this step
};

/// One Euler-Maruyama step x' = clamp0(x + drift*dt + diffusion*dw).
/// Throws numeric_error (with step_index in the message when provided) if
/// the result is non-finite.
StepResult step(const StateVector& x, double u, double dw, double dt,
                const ModelParams& p, std::int64_t step_index = -1);

/// Integrates the controlled SDE over the grid. Deterministic given
/// (u, w, x0, p, grid); u must have n_steps+1 samples and w n_steps
/// increments.
StateTrajectory simulate(const ControlPath& u, const BrownianPath& w,
                         const StateVector& x0, const TimeGrid& grid,
                         const ModelParams& p);

} // namespace prepctrl

#endif
