#include "prepctrl/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace prepctrl {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& file) {
    std::ofstream out(file, std::ios::binary); // fixed newline bytes everywhere
    if (!out) {
        throw std::runtime_error("cannot open output file: " + file);
    }
    return out;
}

} // namespace

void write_path_csv(const std::string& file, const TimeGrid& grid,
                    const StateTrajectory& xtraj, const ControlPath* u,
                    const AdjointTrajectory* adj) {
    std::ofstream out = open_out(file);
    out << "t,S,I,C,A,E";
    if (u && adj) {
        out << ",u,p1,p2,p3,p4,p5,q1,q2,q3,q4,q5";
    }
    out << "\n";
    for (int k = 0; k < grid.n_points(); ++k) {
        const StateVector& x = xtraj.states[k];
        out << format_double(grid.time(k)) << ',' << format_double(x.s) << ','
            << format_double(x.i) << ',' << format_double(x.c) << ','
            << format_double(x.a) << ',' << format_double(x.e);
        if (u && adj) {
            out << ',' << format_double((*u)[k]);
            for (int j = 0; j < 5; ++j) out << ',' << format_double(adj->states[k].p[j]);
            for (int j = 0; j < 5; ++j) out << ',' << format_double(adj->states[k].q[j]);
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + file);
    }
}

void write_ensemble_csv(const std::string& file, const TimeGrid& grid,
                        const EnsembleStats& stats) {
    std::ofstream out = open_out(file);
    out << "t";
    for (const std::string& name : stats.names) {
        out << ',' << name << "_mean," << name << "_var";
    }
    out << "\n";
    for (int k = 0; k < grid.n_points(); ++k) {
        out << format_double(grid.time(k));
        for (std::size_t j = 0; j < stats.names.size(); ++j) {
            out << ',' << format_double(stats.mean[j][k]) << ','
                << format_double(stats.variance[j][k]);
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + file);
    }
}

void write_text_file(const std::string& file, const std::string& body) {
    std::ofstream out = open_out(file);
    out << body;
    if (!out) {
        throw std::runtime_error("write failed: " + file);
    }
}

} // namespace prepctrl
