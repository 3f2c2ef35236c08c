#include "prepctrl/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace prepctrl {

namespace {

// splitmix64 finalizer; bijective, so distinct inputs give distinct seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Box-Muller over mt19937_64. std::normal_distribution is implementation
// defined, so the transform is spelled out to keep streams reproducible.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    double uniform01() {
        // 53-bit mantissa draw in [0, 1).
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

std::uint64_t path_seed(std::uint64_t master_seed, int k) {
    return mix64(master_seed + static_cast<std::uint64_t>(k + 1) * 0x9e3779b97f4a7c15ULL);
}

BrownianPath make_path(std::uint64_t seed, const TimeGrid& grid) {
    GaussianStream rng(seed);
    const double sqrt_dt = std::sqrt(grid.dt());
    BrownianPath path;
    path.seed = seed;
    path.increments.resize(grid.n_steps);
    for (double& dw : path.increments) {
        dw = sqrt_dt * rng.next();
    }
    return path;
}

std::vector<BrownianPath> make_paths(std::uint64_t master_seed, int n_paths,
                                     const TimeGrid& grid) {
    if (n_paths < 1) {
        throw std::invalid_argument("n_paths: must be >= 1");
    }
    std::vector<BrownianPath> paths;
    paths.reserve(n_paths);
    for (int k = 0; k < n_paths; ++k) {
        paths.push_back(make_path(path_seed(master_seed, k), grid));
    }
    return paths;
}

EnsembleAccumulator::EnsembleAccumulator(std::vector<std::string> names, int n_points)
    : names_(std::move(names)),
      mean_(names_.size(), std::vector<double>(n_points, 0.0)),
      m2_(names_.size(), std::vector<double>(n_points, 0.0)) {}

void EnsembleAccumulator::add(const std::vector<std::vector<double>>& sample) {
    if (sample.size() != mean_.size()) {
        throw std::invalid_argument("sample process count does not match accumulator");
    }
    ++n_;
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        if (sample[j].size() != mean_[j].size()) {
            throw std::invalid_argument("sample length does not match accumulator");
        }
        for (std::size_t k = 0; k < mean_[j].size(); ++k) {
            // Welford update.
            const double delta = sample[j][k] - mean_[j][k];
            mean_[j][k] += delta / n_;
            m2_[j][k] += delta * (sample[j][k] - mean_[j][k]);
        }
    }
}

void EnsembleAccumulator::merge(const EnsembleAccumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = n_;
    const double nb = other.n_;
    const double nab = na + nb;
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        for (std::size_t k = 0; k < mean_[j].size(); ++k) {
            const double delta = other.mean_[j][k] - mean_[j][k];
            mean_[j][k] += delta * nb / nab;
            m2_[j][k] += other.m2_[j][k] + delta * delta * na * nb / nab;
        }
    }
    n_ += other.n_;
}

EnsembleStats EnsembleAccumulator::finalize(std::uint64_t master_seed) const {
    EnsembleStats stats;
    stats.names = names_;
    stats.mean = mean_;
    stats.n_paths = n_;
    stats.master_seed = master_seed;
    stats.variance_defined = n_ >= 2;
    stats.variance.assign(mean_.size(), {});
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        stats.variance[j].resize(mean_[j].size(), 0.0);
        if (stats.variance_defined) {
            for (std::size_t k = 0; k < mean_[j].size(); ++k) {
                stats.variance[j][k] = m2_[j][k] / (n_ - 1);
            }
        }
    }
    return stats;
}

ConvergenceReport convergence_order(double drift_a, double noise_b, double x0,
                                    double t_end, int n_paths, std::uint64_t seed,
                                    int coarsest_log2, int finest_log2) {
    if (coarsest_log2 > finest_log2 || coarsest_log2 < 0) {
        throw std::invalid_argument("invalid dt ladder");
    }
    const int n_levels = finest_log2 - coarsest_log2 + 1;
    const int n_fine = 1 << finest_log2;
    const double dt_fine = t_end / n_fine;
    const double sqrt_dt_fine = std::sqrt(dt_fine);

    ConvergenceReport report;
    report.dts.resize(n_levels);
    report.mean_abs_error.assign(n_levels, 0.0);
    for (int l = 0; l < n_levels; ++l) {
        report.dts[l] = t_end / (1 << (coarsest_log2 + l));
    }

    std::vector<double> fine(n_fine);
    for (int path = 0; path < n_paths; ++path) {
        GaussianStream rng(path_seed(seed, path));
        double b_total = 0.0;
        for (double& dw : fine) {
            dw = sqrt_dt_fine * rng.next();
            b_total += dw;
        }
        const double exact =
            x0 * std::exp((drift_a - 0.5 * noise_b * noise_b) * t_end + noise_b * b_total);

        for (int l = 0; l < n_levels; ++l) {
            const int n_coarse = 1 << (coarsest_log2 + l);
            const int stride = n_fine / n_coarse;
            const double dt = t_end / n_coarse;
            double x = x0;
            for (int k = 0; k < n_coarse; ++k) {
                double dw = 0.0;
                for (int m = 0; m < stride; ++m) {
                    dw += fine[k * stride + m];
                }
                x += drift_a * x * dt + noise_b * x * dw;
            }
            report.mean_abs_error[l] += std::abs(x - exact);
        }
    }
    for (double& err : report.mean_abs_error) {
        err /= n_paths;
    }

    // Least-squares slope of log(error) against log(dt).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int l = 0; l < n_levels; ++l) {
        const double lx = std::log(report.dts[l]);
        const double ly = std::log(report.mean_abs_error[l]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    report.slope = (n_levels * sxy - sx * sy) / (n_levels * sxx - sx * sx);
    return report;
}

} // namespace prepctrl
