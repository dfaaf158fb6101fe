#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qbmtel/sweep.hpp"

using namespace qbmtel;
using sweep::SweepConfig;

TEST_CASE("parse_config") {
    SUBCASE("empty text yields the figure defaults") {
        const SweepConfig cfg = sweep::parse_config("");
        CHECK(cfg.channel.x == 0.1);
        CHECK(cfg.channel.s == 1.0);
        CHECK(cfg.channel.theta == 100.0);
        CHECK(cfg.r == 2.0);
        CHECK(std::abs(cfg.transmissivity * cfg.transmissivity - 0.9) <= 1e-15);
        CHECK(std::abs(cfg.gain * cfg.transmissivity - 1.0) <= 1e-15);
        CHECK(cfg.tau_max == 3.0);
        CHECK(cfg.n_points == 201);
    }
    SUBCASE("comments, blank lines, and overrides") {
        const SweepConfig cfg = sweep::parse_config(
            "# Markovian regime\n"
            "\n"
            "x = 10\n"
            "r=1.5   # lower squeezing\n");
        CHECK(cfg.channel.x == 10.0);
        CHECK(cfg.r == 1.5);
    }
    SUBCASE("explicit gain wins over the derived default") {
        const SweepConfig cfg = sweep::parse_config("gain=1.0\ntransmissivity=0.8\n");
        CHECK(cfg.gain == 1.0);
    }
    SUBCASE("malformed line reports its number") {
        CHECK_THROWS_WITH_AS(sweep::parse_config("x=0.1\nnot a pair\n"),
                             doctest::Contains("line 2"), std::invalid_argument);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_WITH_AS(sweep::parse_config("xx=1\n"), doctest::Contains("xx"),
                             std::invalid_argument);
    }
    SUBCASE("out-of-range values name the key") {
        CHECK_THROWS_WITH_AS(sweep::parse_config("n_points=0\n"),
                             doctest::Contains("n_points"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(sweep::parse_config("transmissivity=1.2\n"),
                             doctest::Contains("transmissivity"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(sweep::parse_config("x=-0.5\n"), doctest::Contains("x"),
                             std::invalid_argument);
    }
    SUBCASE("values must parse fully") {
        CHECK_THROWS_WITH_AS(sweep::parse_config("x=0.1abc\n"), doctest::Contains("x"),
                             std::invalid_argument);
    }
}

TEST_CASE("run_sweep") {
    SweepConfig cfg;
    cfg.n_points = 41;
    const sweep::Table table = sweep::run_sweep(cfg);

    SUBCASE("header and shape") {
        CHECK(table.header ==
              std::vector<std::string>{"tau", "phi_opt", "f_opt", "f_fixed_phase_pi", "e_n",
                                       "n_p", "classical_threshold"});
        CHECK(table.rows.size() == 41);
    }
    SUBCASE("first row carries the transit-free reference values") {
        const auto& row = table.rows.front();
        CHECK(row[0] == 0.0);
        CHECK(std::abs(row[1] - std::numbers::pi) <= 1e-12);
        CHECK(std::abs(row[2] - 1.0 / (1.0 + std::exp(-4.0) + 1.0 / 9.0)) <= 1e-9);
        CHECK(std::abs(row[4] - 4.0) <= 1e-9);
        CHECK(row[5] == 0.0);
        CHECK(row[6] == 0.5);
    }
    SUBCASE("tau column is the uniform sweep axis") {
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            CHECK(std::abs(table.rows[i][0] - 3.0 * (static_cast<double>(i) / 40.0)) <= 1e-12);
        }
    }
    SUBCASE("columns stay in their physical ranges") {
        for (const auto& row : table.rows) {
            CHECK(row[2] > 0.0);
            CHECK(row[2] <= 1.0);
            CHECK(row[3] > 0.0);
            CHECK(row[3] <= 1.0);
            CHECK(row[4] >= 0.0);
            CHECK(row[5] >= 0.0);
            CHECK(row[5] <= 1.0);
        }
    }
    SUBCASE("re-running produces byte-identical CSV") {
        const std::string first = sweep::to_csv(table);
        const std::string second = sweep::to_csv(sweep::run_sweep(cfg));
        CHECK(first == second);
    }
}

TEST_CASE("column selection") {
    SweepConfig cfg;
    cfg.n_points = 5;
    cfg.tau_max = 1.0;
    cfg.grid_n = 501;
    cfg.outputs = {"tau", "f_opt"};
    const sweep::Table table = sweep::run_sweep(cfg);
    CHECK(table.header == std::vector<std::string>{"tau", "f_opt"});
    CHECK(table.rows.front().size() == 2);

    cfg.outputs = {"no_such_column"};
    CHECK_THROWS_WITH_AS(sweep::run_sweep(cfg), doctest::Contains("no_such_column"),
                         std::invalid_argument);
}

TEST_CASE("coeffs and phase-opt tables") {
    SweepConfig cfg;
    cfg.n_points = 5;
    cfg.tau_max = 1.0;
    cfg.grid_n = 501;

    const sweep::Table coeffs = sweep::run_coeffs(cfg);
    CHECK(coeffs.header == std::vector<std::string>{"tau", "gamma", "delta", "pi", "big_gamma",
                                                    "w11", "w12", "w22"});
    CHECK(coeffs.rows.front()[1] == 0.0);  // gamma(0)
    CHECK(coeffs.rows.front()[5] == 0.0);  // w11(0)

    const sweep::Table phase = sweep::run_phase_opt(cfg);
    CHECK(phase.header == std::vector<std::string>{"tau", "phi_opt_analytic",
                                                   "phi_opt_numeric", "f_opt"});
    for (const auto& row : phase.rows) {
        double d = std::abs(std::fmod(row[1] - row[2], 2.0 * std::numbers::pi));
        d = std::min(d, 2.0 * std::numbers::pi - d);
        CHECK(d <= 1e-4);
    }
}

TEST_CASE("CSV formatting") {
    sweep::Table table;
    table.header = {"a", "b"};
    table.rows = {{0.5, 1.0}, {-2.25e-3, 3.0e10}};
    const std::string csv = sweep::to_csv(table);
    CHECK(csv ==
          "a,b\n"
          "5.00000000000e-01,1.00000000000e+00\n"
          "-2.25000000000e-03,3.00000000000e+10\n");
}

TEST_CASE("write_output failures surface as I/O errors") {
    CHECK_THROWS_AS(sweep::write_output("x\n", "/nonexistent_dir_qbmtel/out.csv"),
                    sweep::IoError);
}

TEST_CASE("run_check passes on the defaults") {
    SweepConfig cfg;
    cfg.n_points = 41;
    cfg.tau_max = 2.5;
    std::ostringstream sink;
    CHECK(sweep::run_check(cfg, sink) == 0);
    CHECK(sink.str().find("[ok]") != std::string::npos);
    CHECK(sink.str().find("[FAIL]") == std::string::npos);
}
