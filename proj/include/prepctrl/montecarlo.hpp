// montecarlo.hpp: path-set orchestration. Deterministic seeding of Brownian
// paths, ensemble statistics with an associative merge, and the
// strong-convergence harness validating the Euler-Maruyama stepper.
#ifndef PREPCTRL_MONTECARLO_HPP
#define PREPCTRL_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "prepctrl/forward.hpp"

namespace prepctrl {

/// Derived stream seed for path k; distinct k give distinct streams.
std::uint64_t path_seed(std::uint64_t master_seed, int k);

/// Gaussian increments N(0, dt) for one path, reproducible from the seed.
BrownianPath make_path(std::uint64_t seed, const TimeGrid& grid);

/// n_paths pairwise-independent paths seeded from (master_seed, k).
std::vector<BrownianPath> make_paths(std::uint64_t master_seed, int n_paths,
                                     const TimeGrid& grid);

/// Pointwise mean and unbiased variance per tracked process per grid point.
/// With a single path the variance is reported as zero and flagged.
struct EnsembleStats {
    std::vector<std::string> names;           // process names, row order
    std::vector<std::vector<double>> mean;     // [process][grid point]
    std::vector<std::vector<double>> variance; // [process][grid point]
    int n_paths = 0;
    std::uint64_t master_seed = 0;
    bool variance_defined = false; // false when n_paths < 2
};

/// Streaming mean/variance accumulator over fixed-shape sample matrices
/// ([process][grid point]). merge() is associative, so partial accumulators
/// from concurrent workers combine to the same statistics.
class EnsembleAccumulator {
public:
    EnsembleAccumulator(std::vector<std::string> names, int n_points);

    void add(const std::vector<std::vector<double>>& sample);
    void merge(const EnsembleAccumulator& other);
    EnsembleStats finalize(std::uint64_t master_seed) const;

    int count() const { return n_; }

private:
    std::vector<std::string> names_;
    int n_ = 0;
    std::vector<std::vector<double>> mean_;
    std::vector<std::vector<double>> m2_;
};

/// Strong-convergence study of the Euler-Maruyama scheme on the geometric
/// Brownian oracle dX = a X dt + b X dB with exact terminal value
/// X0 * exp((a - b^2/2) T + b B(T)).
struct ConvergenceReport {
    std::vector<double> dts;            // coarse-to-fine step ladder
    std::vector<double> mean_abs_error; // E|X_dt(T) - X_exact(T)| per level
    double slope = 0.0;                 // log-log regression slope
};

/// Runs the stepper at dt = T/2^l for l in [coarsest_log2, finest_log2],
/// coupling each level to the same refined Brownian path, and regresses
/// log error against log dt.
ConvergenceReport convergence_order(double drift_a, double noise_b, double x0,
                                    double t_end, int n_paths, std::uint64_t seed,
                                    int coarsest_log2 = 5, int finest_log2 = 10);

} // namespace prepctrl

#endif
