// qbmtel_main.cpp — command-line driver. Subcommands:
//   coeffs     channel coefficients vs transit time
//   sweep      fidelity / entanglement / non-Markovianity figure columns
//   phase-opt  analytic vs numeric optimal squeezing phase
//   check      internal consistency suite
//
// Exit codes: 0 success, 1 validation error, 2 numeric failure, 3 I/O failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbmtel/sweep.hpp"

namespace {

using qbmtel::sweep::IoError;
using qbmtel::sweep::SweepConfig;

struct CommandState {
    std::string config_path;
    std::string out_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

const std::vector<std::string> kConfigKeys = {
    "x",    "s",       "theta",    "alpha",  "r",       "phi",     "transmissivity",
    "gain", "tau_max", "n_points", "grid_n", "eps",     "outputs", "out_path"};

void add_common_options(CLI::App* cmd, CommandState& state) {
    cmd->add_option("--config", state.config_path, "flat key=value config file");
    cmd->add_option("--out", state.out_path, "output CSV path (stdout when absent)");
    for (const std::string& key : kConfigKeys) {
        cmd->add_option_function<std::string>(
            "--" + key,
            [&state, key](const std::string& value) { state.overrides.emplace_back(key, value); },
            "override config key '" + key + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed while reading '" + path + "'");
    }
    return buf.str();
}

SweepConfig resolve_config(const CommandState& state) {
    SweepConfig cfg;
    if (!state.config_path.empty()) {
        cfg = qbmtel::sweep::parse_config_text(read_file(state.config_path));
    }
    for (const auto& [key, value] : state.overrides) {
        qbmtel::sweep::apply_override(cfg, key, value);
    }
    if (!state.out_path.empty()) {
        cfg.out_path = state.out_path;
    }
    cfg.finalize();
    if (!cfg.channel.weak_coupling()) {
        std::cerr << "warning: alpha = " << cfg.channel.alpha
                  << " is beyond the weak-coupling comfort range (0.2)\n";
    }
    if (!cfg.channel.high_temperature()) {
        std::cerr << "warning: theta = " << cfg.channel.theta
                  << " leaves the high-temperature regime the coefficients assume\n";
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable teleportation through a quantum Brownian motion channel"};
    app.require_subcommand(1);

    CommandState coeffs_state;
    CommandState sweep_state;
    CommandState phase_state;
    CommandState check_state;
    CLI::App* coeffs = app.add_subcommand("coeffs", "channel coefficients vs transit time");
    CLI::App* sweep = app.add_subcommand("sweep", "figure columns vs transit time");
    CLI::App* phase = app.add_subcommand("phase-opt", "analytic vs numeric optimal phase");
    CLI::App* check = app.add_subcommand("check", "run the internal consistency suite");
    add_common_options(coeffs, coeffs_state);
    add_common_options(sweep, sweep_state);
    add_common_options(phase, phase_state);
    add_common_options(check, check_state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (coeffs->parsed()) {
            const SweepConfig cfg = resolve_config(coeffs_state);
            qbmtel::sweep::write_output(qbmtel::sweep::to_csv(qbmtel::sweep::run_coeffs(cfg)),
                                        cfg.out_path);
        } else if (sweep->parsed()) {
            const SweepConfig cfg = resolve_config(sweep_state);
            qbmtel::sweep::write_output(qbmtel::sweep::to_csv(qbmtel::sweep::run_sweep(cfg)),
                                        cfg.out_path);
        } else if (phase->parsed()) {
            const SweepConfig cfg = resolve_config(phase_state);
            qbmtel::sweep::write_output(
                qbmtel::sweep::to_csv(qbmtel::sweep::run_phase_opt(cfg)), cfg.out_path);
        } else if (check->parsed()) {
            const SweepConfig cfg = resolve_config(check_state);
            const int failures = qbmtel::sweep::run_check(cfg, std::cout);
            if (failures > 0) {
                std::cerr << failures << " check(s) failed\n";
                return 2;
            }
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
