#include "prepctrl/model.hpp"

#include <cmath>

namespace prepctrl {

namespace {

void require_nonnegative(double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(field) + ": must be finite and >= 0");
    }
}

} // namespace

void ModelParams::validate() const {
    require_nonnegative(lambda_recruit, "lambda_recruit");
    require_nonnegative(beta, "beta");
    require_nonnegative(eta_c, "eta_c");
    require_nonnegative(eta_a, "eta_a");
    require_nonnegative(mu, "mu");
    require_nonnegative(psi, "psi");
    require_nonnegative(theta, "theta");
    require_nonnegative(phi, "phi");
    require_nonnegative(rho, "rho");
    require_nonnegative(omega, "omega");
    require_nonnegative(alpha, "alpha");
    require_nonnegative(d, "d");
    require_nonnegative(sigma, "sigma");
    if (!(n_ref > 0.0) || !std::isfinite(n_ref)) {
        throw std::invalid_argument("n_ref: must be finite and > 0");
    }
}

void CostWeights::validate() const {
    if (!(w1 >= 0.0) || !std::isfinite(w1)) {
        throw std::invalid_argument("w1: must be finite and >= 0");
    }
    if (!(w2 > 0.0) || !std::isfinite(w2)) {
        throw std::invalid_argument("w2: must be finite and > 0");
    }
}

std::array<double, 4> derived_rates(const ModelParams& p) {
    return {p.xi1(), p.xi2(), p.xi3(), p.xi4()};
}

} // namespace prepctrl
