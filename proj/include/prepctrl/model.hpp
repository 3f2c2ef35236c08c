// model.hpp: epidemiological parameters, compartment state and the pure
// algebraic quantities (force of infection, derived exit rates) shared by
// the simulator, the adjoint solver and the control update.
#ifndef PREPCTRL_MODEL_HPP
#define PREPCTRL_MODEL_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace prepctrl {

using Vec5 = std::array<double, 5>;

/// Thrown when an integrator produces a non-finite value (blow-up / bad dt)
/// or when a numerical sanity check aborts an iterative procedure.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no Lagrange multiplier can make the budget constraint feasible.
class infeasible_budget_error : public std::runtime_error {
public:
    explicit infeasible_budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// All rates of the controlled HIV/PReP compartment system. beta and sigma
/// are stored already scaled by the reference population n_ref, so the
/// drift/diffusion expressions use them directly.
struct ModelParams {
    double lambda_recruit = 0.0; // recruitment rate, individuals/year
    double beta = 0.0;           // transmission rate, 1/(individual*year), scaled
    double eta_c = 0.0;          // chronic-stage infectiousness modifier
    double eta_a = 0.0;          // AIDS-stage infectiousness modifier
    double mu = 0.0;             // natural death rate, 1/year
    double psi = 0.0;            // baseline PReP transfer rate, 1/year
    double theta = 0.0;          // PReP default rate, 1/year
    double phi = 0.0;            // HIV treatment rate, 1/year
    double rho = 0.0;            // ART-default rate to AIDS, 1/year
    double omega = 0.0;          // chronic default rate, 1/year
    double alpha = 0.0;          // AIDS treatment rate, 1/year
    double d = 0.0;              // AIDS-induced death rate, 1/year
    double sigma = 0.0;          // force-of-infection noise, scaled
    double n_ref = 1.0;          // reference population used for the scaling

    double xi1() const { return alpha + mu + d; }     // AIDS exit rate
    double xi2() const { return omega + mu; }         // chronic exit rate
    double xi3() const { return rho + phi + mu; }     // infected exit rate
    double xi4() const { return mu + theta; }         // PReP exit rate

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// One point in compartment space: susceptible, infected, chronic (under
/// ART), AIDS, under-PReP. Counts are individuals and stay nonnegative
/// after the integrator's clamping.
struct StateVector {
    double s = 0.0;
    double i = 0.0;
    double c = 0.0;
    double a = 0.0;
    double e = 0.0;

    double total() const { return s + i + c + a + e; }

    Vec5 as_array() const { return {s, i, c, a, e}; }
    static StateVector from_array(const Vec5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }
};

/// Weights of the running cost w1*I(t) + w2*u(t)^2.
struct CostWeights {
    double w1 = 0.0; // cost per infected-individual-year
    double w2 = 1.0; // cost per squared-control-year, must be > 0

    void validate() const;
};

/// Deterministic part of the infection pressure: I + eta_C*C + eta_A*A.
/// Callers multiply by beta (drift) or sigma (diffusion).
inline double force_of_infection(const StateVector& x, const ModelParams& p) {
    return x.i + p.eta_c * x.c + p.eta_a * x.a;
}

/// The four derived exit rates (xi1..xi4) as one tuple-like array.
std::array<double, 4> derived_rates(const ModelParams& p);

} // namespace prepctrl

#endif
