#include "qbmtel/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "qbmtel/non_markovianity.hpp"

namespace qbmtel::sweep {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config value for '" + key + "' is not a number: '" +
                                    value + "'");
    }
    if (used != value.size()) {
        throw std::invalid_argument("config value for '" + key + "' is not a number: '" +
                                    value + "'");
    }
    return parsed;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config value for '" + key + "' is not an integer: '" +
                                    value + "'");
    }
    if (used != value.size() || parsed < 0) {
        throw std::invalid_argument("config value for '" + key + "' is not an integer: '" +
                                    value + "'");
    }
    return static_cast<std::size_t>(parsed);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

// Smallest node count >= grid_n whose panels align with the sweep nodes.
std::size_t aligned_grid_n(std::size_t n_points, std::size_t grid_n) {
    const std::size_t panels = n_points - 1;
    const std::size_t stride = (grid_n - 1 + panels - 1) / panels;
    return stride * panels + 1;
}

struct Column {
    std::string name;
    std::function<double(std::size_t row, double tau)> eval;
};

Table evaluate_table(const SweepConfig& cfg, const qbm::CoefficientGrid& grid,
                     const std::vector<Column>& columns) {
    const std::size_t stride = (grid.size() - 1) / (cfg.n_points - 1);
    Table table;
    for (const Column& c : columns) table.header.push_back(c.name);
    table.rows.assign(cfg.n_points, {});

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(cfg.n_points)));
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.n_points) return;
            try {
                const double tau = grid.node(i * stride);
                std::vector<double> row;
                row.reserve(columns.size());
                for (const Column& c : columns) row.push_back(c.eval(i * stride, tau));
                table.rows[i] = std::move(row);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(cfg.n_points);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return table;
}

Table select_outputs(Table table, const std::vector<std::string>& outputs) {
    if (outputs.empty()) return table;
    std::vector<std::size_t> picks;
    for (const std::string& name : outputs) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) {
            throw std::invalid_argument("unknown output column '" + name + "'");
        }
        picks.push_back(static_cast<std::size_t>(it - table.header.begin()));
    }
    Table filtered;
    for (std::size_t p : picks) filtered.header.push_back(table.header[p]);
    filtered.rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        std::vector<double> out;
        out.reserve(picks.size());
        for (std::size_t p : picks) out.push_back(row[p]);
        filtered.rows.push_back(std::move(out));
    }
    return filtered;
}

qbm::CoefficientGrid build_grid(const SweepConfig& cfg) {
    return qbm::build_coefficient_grid(cfg.channel, cfg.tau_max,
                                       aligned_grid_n(cfg.n_points, cfg.grid_n));
}

double circular_distance(double a, double b) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::abs(std::fmod(a - b, two_pi));
    return std::min(d, two_pi - d);
}

}  // namespace

void SweepConfig::finalize() {
    channel.validate();
    if (std::isnan(gain)) {
        if (!(transmissivity > 0.0)) {
            throw std::invalid_argument("SweepConfig: transmissivity must lie in (0, 1]");
        }
        gain = 1.0 / transmissivity;
    }
    protocol().validate();  // r, phi, transmissivity, gain
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
        throw std::invalid_argument("SweepConfig: tau_max must be positive and finite");
    }
    if (n_points < 2) {
        throw std::invalid_argument("SweepConfig: n_points must be >= 2");
    }
    if (grid_n < 9) {
        throw std::invalid_argument("SweepConfig: grid_n must be >= 9");
    }
    if (!(eps > 0.0) || !(eps < tau_max)) {
        throw std::invalid_argument("SweepConfig: eps must lie in (0, tau_max)");
    }
}

void apply_override(SweepConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "x") {
        cfg.channel.x = parse_double(key, value);
    } else if (key == "s") {
        cfg.channel.s = parse_double(key, value);
    } else if (key == "theta") {
        cfg.channel.theta = parse_double(key, value);
    } else if (key == "alpha") {
        cfg.channel.alpha = parse_double(key, value);
    } else if (key == "r") {
        cfg.r = parse_double(key, value);
    } else if (key == "phi") {
        cfg.phi = parse_double(key, value);
    } else if (key == "transmissivity") {
        cfg.transmissivity = parse_double(key, value);
    } else if (key == "gain") {
        cfg.gain = parse_double(key, value);
    } else if (key == "tau_max") {
        cfg.tau_max = parse_double(key, value);
    } else if (key == "n_points") {
        cfg.n_points = parse_count(key, value);
    } else if (key == "grid_n") {
        cfg.grid_n = parse_count(key, value);
    } else if (key == "eps") {
        cfg.eps = parse_double(key, value);
    } else if (key == "outputs") {
        cfg.outputs = split_list(value);
    } else if (key == "out_path") {
        cfg.out_path = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key");
        }
        try {
            apply_override(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                        e.what());
        }
    }
    return cfg;
}

SweepConfig parse_config(const std::string& text) {
    SweepConfig cfg = parse_config_text(text);
    cfg.finalize();
    return cfg;
}

Table run_sweep(SweepConfig cfg) {
    cfg.finalize();
    const qbm::CoefficientGrid grid = build_grid(cfg);
    const double x = cfg.channel.x;
    const std::vector<Column> columns = {
        {"tau", [](std::size_t, double tau) { return tau; }},
        {"phi_opt", [&](std::size_t, double tau) { return tele::optimal_phase(tau, x); }},
        {"f_opt",
         [&](std::size_t, double tau) {
             return tele::fidelity_closed_form(cfg.r, tele::optimal_phase(tau, x),
                                               cfg.transmissivity, grid, tau);
         }},
        {"f_fixed_phase_pi",
         [&](std::size_t, double tau) {
             return tele::fidelity_closed_form(cfg.r, std::numbers::pi, cfg.transmissivity,
                                               grid, tau);
         }},
        {"e_n",
         [&](std::size_t, double tau) {
             return tele::resource_entanglement(cfg.r, tele::optimal_phase(tau, x), grid, tau);
         }},
        {"n_p",
         [&](std::size_t k, double) {
             return nm::np_closed_form(grid.gamma(k), grid.delta(k), grid.pi(k));
         }},
        {"classical_threshold", [](std::size_t, double) { return 0.5; }},
    };
    return select_outputs(evaluate_table(cfg, grid, columns), cfg.outputs);
}

Table run_coeffs(SweepConfig cfg) {
    cfg.finalize();
    const qbm::CoefficientGrid grid = build_grid(cfg);
    const std::vector<Column> columns = {
        {"tau", [](std::size_t, double tau) { return tau; }},
        {"gamma", [&](std::size_t k, double) { return grid.gamma(k); }},
        {"delta", [&](std::size_t k, double) { return grid.delta(k); }},
        {"pi", [&](std::size_t k, double) { return grid.pi(k); }},
        {"big_gamma", [&](std::size_t k, double) { return grid.big_gamma(k); }},
        {"w11", [&](std::size_t k, double) { return grid.wbar(k)(0, 0); }},
        {"w12", [&](std::size_t k, double) { return grid.wbar(k)(0, 1); }},
        {"w22", [&](std::size_t k, double) { return grid.wbar(k)(1, 1); }},
    };
    return select_outputs(evaluate_table(cfg, grid, columns), cfg.outputs);
}

Table run_phase_opt(SweepConfig cfg) {
    cfg.finalize();
    const qbm::CoefficientGrid grid = build_grid(cfg);
    const double x = cfg.channel.x;
    const std::vector<Column> columns = {
        {"tau", [](std::size_t, double tau) { return tau; }},
        {"phi_opt_analytic",
         [&](std::size_t, double tau) { return tele::optimal_phase(tau, x); }},
        {"phi_opt_numeric",
         [&](std::size_t, double tau) {
             return tele::optimize_phase_numeric(cfg.r, cfg.transmissivity, grid, tau).phi;
         }},
        {"f_opt",
         [&](std::size_t, double tau) {
             return tele::optimize_phase_numeric(cfg.r, cfg.transmissivity, grid, tau)
                 .fidelity;
         }},
    };
    return select_outputs(evaluate_table(cfg, grid, columns), cfg.outputs);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c > 0) out += ',';
        out += table.header[c];
    }
    out += '\n';
    char buf[32];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            std::snprintf(buf, sizeof(buf), "%.11e", row[c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_output(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        std::cout.flush();
        if (!std::cout) {
            throw IoError("failed to write to stdout");
        }
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open output file '" + out_path + "'");
    }
    file << csv;
    file.flush();
    if (!file) {
        throw IoError("failed while writing '" + out_path + "'");
    }
}

int run_check(SweepConfig cfg, std::ostream& out) {
    cfg.finalize();
    const qbm::CoefficientGrid grid = build_grid(cfg);
    int failures = 0;
    const auto report = [&](const char* name, bool pass, double worst, const char* bound) {
        out << (pass ? "[ok]   " : "[FAIL] ") << name << " (worst " << worst << ", bound "
            << bound << ")\n";
        if (!pass) ++failures;
    };

    {
        // closed-form fidelity against the determinant route at gain = 1/T
        double worst = 0.0;
        for (double r : {0.5, 1.0, 2.0}) {
            for (double phi : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, cfg.phi}) {
                for (double dtau : {0.0, 0.3, 0.7, 1.5}) {
                    if (dtau > cfg.tau_max) continue;
                    const tele::ProtocolParams pp{.r = r, .phi = phi,
                                                  .transmissivity = cfg.transmissivity};
                    const double det_route = tele::fidelity_det(pp, grid, dtau);
                    const double closed =
                        tele::fidelity_closed_form(r, phi, cfg.transmissivity, grid, dtau);
                    worst = std::max(worst, std::abs(det_route - closed) / closed);
                }
            }
        }
        report("fidelity cross-form agreement", worst < 1e-8, worst, "rel 1e-8");
    }
    {
        // numeric phase optimum against pi + dtau/x
        double worst = 0.0;
        for (double dtau : {0.1, 0.5, 1.0, 2.0}) {
            if (dtau > cfg.tau_max) continue;
            const auto opt = tele::optimize_phase_numeric(cfg.r, cfg.transmissivity, grid, dtau);
            worst = std::max(
                worst, circular_distance(opt.phi, tele::optimal_phase(dtau, cfg.channel.x)));
        }
        report("numeric vs analytic optimal phase", worst < 1e-4, worst, "1e-4 rad");
    }
    {
        // two-step composition of intermediate maps
        std::mt19937 rng(20240517u);
        std::uniform_real_distribution<double> uni(0.05, 0.95 * cfg.tau_max);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            double t1 = uni(rng);
            double t2 = uni(rng);
            if (t1 > t2) std::swap(t1, t2);
            if (t2 - t1 < 1e-3) t2 += 1e-3;
            const auto whole = qbm::channel_pair(grid, t2);
            const auto first = qbm::channel_pair(grid, t1);
            const auto step = nm::intermediate_map(grid, t1, t2 - t1);
            const Eigen::Matrix2d x_comp = step.pair.x_mat * first.x_mat;
            const Eigen::Matrix2d y_comp =
                step.pair.x_mat * first.y_mat * step.pair.x_mat.transpose() + step.pair.y_mat;
            worst = std::max(worst, (x_comp - whole.x_mat).cwiseAbs().maxCoeff());
            worst = std::max(worst, (y_comp - whole.y_mat).cwiseAbs().maxCoeff());
        }
        report("intermediate-map composition identity", worst < 1e-8, worst, "1e-8");
    }
    {
        // spectral divisibility measure against the closed form as eps -> 0
        double worst = 0.0;
        for (double t : {0.2, 0.5, 1.0, 2.0}) {
            if (t + cfg.eps > cfg.tau_max) continue;
            const double spectral = nm::np_spectral_limit(grid, t, cfg.eps);
            const double closed =
                nm::np_closed_form(grid.gamma_at(t), grid.delta_at(t), grid.pi_at(t));
            worst = std::max(worst, std::abs(spectral - closed));
        }
        report("divisibility measure eps->0 limit", worst < 1e-3, worst, "1e-3");
    }
    {
        // emitted quantities stay in their physical ranges
        bool pass = true;
        double worst = 0.0;
        SweepConfig full = cfg;
        full.outputs.clear();
        const Table table = run_sweep(full);
        for (const auto& row : table.rows) {
            const double f = row[2];
            const double en = row[4];
            const double np = row[5];
            if (!(f > 0.0 && f <= 1.0) || !(en >= 0.0) || !(np >= 0.0 && np <= 1.0)) {
                pass = false;
            }
            worst = std::max(worst, f);
        }
        report("sweep output bounds", pass, worst, "0<F<=1, E_N>=0, N_p in [0,1]");
    }
    return failures;
}

}  // namespace qbmtel::sweep
