// output.hpp: CSV and JSON serialization of run results. Floats are written
// with 17 significant digits so reruns with identical config and seed
// reproduce byte-identical files.
#ifndef PREPCTRL_OUTPUT_HPP
#define PREPCTRL_OUTPUT_HPP

#include <string>

#include "prepctrl/adjoint.hpp"
#include "prepctrl/forward.hpp"
#include "prepctrl/montecarlo.hpp"

namespace prepctrl {

/// Shortest round-trippable decimal form ("%.17g").
std::string format_double(double v);

/// Per-path CSV: columns t,S,I,C,A,E and, when u/adj are given,
/// u,p1..p5,q1..q5.
void write_path_csv(const std::string& file, const TimeGrid& grid,
                    const StateTrajectory& xtraj, const ControlPath* u,
                    const AdjointTrajectory* adj);

/// Ensemble CSV: t followed by <name>_mean,<name>_var per tracked process.
void write_ensemble_csv(const std::string& file, const TimeGrid& grid,
                        const EnsembleStats& stats);

void write_text_file(const std::string& file, const std::string& body);

} // namespace prepctrl

#endif
