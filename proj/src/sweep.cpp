#include "prepctrl/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace prepctrl {

void SweepConfig::validate() const {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
        throw std::invalid_argument("sweep_lambda1: must be in [0,1]");
    }
    if (!(lambda2 >= 0.0 && lambda2 <= 1.0)) {
        throw std::invalid_argument("sweep_lambda2: must be in [0,1]");
    }
    if (std::abs(lambda1 + lambda2 - 1.0) > 1e-12) {
        throw std::invalid_argument("sweep_lambda1/sweep_lambda2: must sum to 1");
    }
    if (!(tol_rel > 0.0)) {
        throw std::invalid_argument("sweep_tol_rel: must be > 0");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("sweep_max_iters: must be >= 1");
    }
    if (!(u_init >= 0.0 && u_init <= 1.0)) {
        throw std::invalid_argument("sweep_u_init: must be in [0,1]");
    }
}

double candidate_control(double s, double p1, double p5, double w2,
                         double lambda_mult, double c) {
    const double raw = s * (p1 - p5 - lambda_mult * c) / (2.0 * w2);
    return std::clamp(raw, 0.0, 1.0);
}

namespace {

double trapezoid(const std::vector<double>& f, double dt) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        sum += 0.5 * (f[k] + f[k + 1]);
    }
    return sum * dt;
}

/// Relative sup-norm distance between two sampled processes.
double process_residual(const std::vector<double>& now, const std::vector<double>& before) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < now.size(); ++k) {
        diff = std::max(diff, std::abs(now[k] - before[k]));
        scale = std::max(scale, std::abs(now[k]));
    }
    return diff / (scale + 1e-12);
}

// 15 tracked processes: five compartments, five p's, five q's.
std::array<std::vector<double>, 15> tracked(const StateTrajectory& xtraj,
                                            const AdjointTrajectory& adj) {
    const std::size_t n = xtraj.states.size();
    std::array<std::vector<double>, 15> out;
    for (auto& v : out) v.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec5 x = xtraj.states[k].as_array();
        for (int j = 0; j < 5; ++j) {
            out[j][k] = x[j];
            out[5 + j][k] = adj.states[k].p[j];
            out[10 + j][k] = adj.states[k].q[j];
        }
    }
    return out;
}

} // namespace

double performance(const StateTrajectory& xtraj, const ControlPath& u,
                   const CostWeights& w, const TimeGrid& grid) {
    if (xtraj.states.size() != u.size() ||
        static_cast<int>(u.size()) != grid.n_points()) {
        throw std::invalid_argument("trajectory/control length does not match grid");
    }
    std::vector<double> integrand(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        integrand[k] = w.w1 * xtraj.states[k].i + w.w2 * u[k] * u[k];
    }
    return trapezoid(integrand, grid.dt());
}

SweepResult run_sweep(const StateVector& x0, const TimeGrid& grid,
                      const ModelParams& params, const CostWeights& weights,
                      const BrownianPath& w, const SweepConfig& cfg,
                      double lambda_mult, const std::vector<double>& cost_rate) {
    cfg.validate();
    const int n = grid.n_steps;
    ControlPath u(n + 1, cfg.u_init);

    SweepResult res;
    std::array<std::vector<double>, 15> prev;
    bool have_prev = false;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        StateTrajectory xtraj = simulate(u, w, x0, grid, params);
        AdjointTrajectory adj =
            solve_backward(xtraj, u, w, grid, weights, lambda_mult, cost_rate, params);

        auto cur = tracked(xtraj, adj);
        double residual = std::numeric_limits<double>::infinity();
        if (have_prev) {
            residual = 0.0;
            for (int j = 0; j < 15; ++j) {
                residual = std::max(residual, process_residual(cur[j], prev[j]));
            }
        }

        // Damped maximum-principle update; the convex combination of values
        // in [0,1] keeps the control admissible.
        double delta_u = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double c = cost_rate.empty() ? 0.0 : cost_rate[k];
            const double cand =
                candidate_control(xtraj.states[k].s, adj.states[k].p[0],
                                  adj.states[k].p[4], weights.w2, lambda_mult, c);
            const double u_new = cfg.lambda1 * u[k] + cfg.lambda2 * cand;
            delta_u = std::max(delta_u, std::abs(u_new - u[k]));
            u[k] = u_new;
        }

        res.iterations = iter;
        res.final_residual = residual;
        res.final_control_delta = delta_u;
        res.xtraj = std::move(xtraj);
        res.adjtraj = std::move(adj);
        prev = std::move(cur);
        have_prev = true;

        if (residual < cfg.tol_rel) {
            res.converged = true;
            break;
        }
    }

    res.control = std::move(u);
    res.cost = performance(res.xtraj, res.control, weights, grid);
    return res;
}

} // namespace prepctrl
