// sweep.hpp — parameter-sweep driver behind the CLI: configuration, the
// tabulated figure columns, deterministic CSV emission, and the built-in
// consistency check suite.

#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbmtel/qbm_channel.hpp"
#include "qbmtel/teleportation.hpp"

namespace qbmtel::sweep {

// Raised for output/input failures so the CLI can map them to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full run configuration. Defaults reproduce the reference figure settings:
// x = 0.1, s = 1, theta = 100, r = 2, T^2 = 0.9, gain = 1/T.
struct SweepConfig {
    qbm::QbmParams channel;
    double r = 2.0;
    double phi = std::numbers::pi;
    double transmissivity = std::sqrt(0.9);
    double gain = std::numeric_limits<double>::quiet_NaN();  // NaN: derive 1/T
    double tau_max = 3.0;
    std::size_t n_points = 201;
    std::size_t grid_n = 2001;
    double eps = 1e-4;
    std::vector<std::string> outputs;  // empty: all columns
    std::string out_path;              // empty: stdout

    // Derives the default gain and validates every field; throws
    // std::invalid_argument naming the offending key.
    void finalize();

    tele::ProtocolParams protocol() const {
        return tele::ProtocolParams{.r = r, .phi = phi, .transmissivity = transmissivity,
                                    .gain = gain};
    }
};

// Applies a single key=value override; unknown keys and unparsable values are
// rejected with std::invalid_argument.
void apply_override(SweepConfig& cfg, const std::string& key, const std::string& value);

// Parses flat key=value text ('#' comments, blank lines allowed) without
// finalizing, so CLI flags can still override afterwards.
SweepConfig parse_config_text(const std::string& text);

// parse_config_text + finalize: the one-shot path for a standalone file.
SweepConfig parse_config(const std::string& text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// One row per tau node, ordered by tau. Rows are evaluated concurrently and
// assembled in index order, so output is deterministic.
Table run_sweep(SweepConfig cfg);       // figure columns
Table run_coeffs(SweepConfig cfg);      // channel coefficients vs tau
Table run_phase_opt(SweepConfig cfg);   // analytic vs numeric optimal phase

// RFC-4180-style CSV: header row, LF endings, 12 significant digits.
std::string to_csv(const Table& table);

// Writes to cfg-style destination: stdout when path is empty. Throws IoError.
void write_output(const std::string& csv, const std::string& out_path);

// Cross-form, phase-optimum, composition and divisibility-limit consistency
// checks; prints one line per check and returns the number of failures.
int run_check(SweepConfig cfg, std::ostream& out);

}  // namespace qbmtel::sweep
