#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qbmtel/gaussian.hpp"

using namespace qbmtel;

TEST_CASE("tmsv_covariance") {
    SUBCASE("vacuum at r = 0") {
        for (double phi : {0.0, 1.0, 4.0}) {
            CHECK((gauss::tmsv_covariance(0.0, phi) - 0.5 * Eigen::Matrix4d::Identity())
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        }
    }
    SUBCASE("entries at r = 2, phi = pi") {
        const Eigen::Matrix4d sigma = gauss::tmsv_covariance(2.0, std::numbers::pi);
        const double a = 0.5 * std::cosh(4.0);
        const double c = 0.5 * std::sinh(4.0);
        CHECK(std::abs(sigma(0, 0) - a) <= 1e-12 * a);
        CHECK(std::abs(sigma(1, 1) - a) <= 1e-12 * a);
        CHECK(std::abs(sigma(0, 2) - -c) <= 1e-12 * c);
        CHECK(std::abs(sigma(1, 3) - c) <= 1e-12 * c);
        CHECK(std::abs(sigma(0, 3)) <= 1e-12);
    }
    SUBCASE("pure-state determinant 1/16 for all r, phi") {
        for (double r : {0.0, 0.7, 1.5, 2.2, 3.0}) {
            for (double phi : {0.0, 0.9, 2.5, 5.8}) {
                const double det =
                    gauss::covariance_determinant(gauss::tmsv_covariance(r, phi));
                CHECK(std::abs(det - 1.0 / 16.0) <= 1e-10);
            }
        }
    }
    SUBCASE("negative squeezing amplitude is rejected") {
        CHECK_THROWS_AS(gauss::tmsv_covariance(-0.1, 0.0), std::domain_error);
    }
}

TEST_CASE("gaussian_fidelity_coherent") {
    CHECK(gauss::gaussian_fidelity_coherent(0.5 * Eigen::Matrix2d::Identity()) == 1.0);
    CHECK(std::abs(gauss::gaussian_fidelity_coherent(1.5 * Eigen::Matrix2d::Identity()) - 0.5) <=
          1e-15);

    Eigen::Matrix2d aniso = Eigen::Matrix2d::Zero();
    aniso(0, 0) = 0.5;
    aniso(1, 1) = 1.5;
    CHECK(std::abs(gauss::gaussian_fidelity_coherent(aniso) - 1.0 / std::sqrt(2.0)) <= 1e-15);

    SUBCASE("monotonically decreasing in each diagonal entry above 1/2") {
        double previous = 1.0;
        for (double v = 0.6; v < 3.0; v += 0.3) {
            Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
            sigma(0, 0) = v;
            sigma(1, 1) = 0.8;
            const double f = gauss::gaussian_fidelity_coherent(sigma);
            CHECK(f < previous);
            previous = f;
        }
    }
    SUBCASE("unphysical output is rejected") {
        CHECK_THROWS_AS(gauss::gaussian_fidelity_coherent(0.1 * Eigen::Matrix2d::Identity()),
                        std::invalid_argument);
    }
}

TEST_CASE("pt_symplectic_eig_min") {
    SUBCASE("vacuum") {
        CHECK(std::abs(gauss::pt_symplectic_eig_min(0.5 * Eigen::Matrix4d::Identity()) - 0.5) <=
              1e-15);
    }
    SUBCASE("fresh resource against the closed identity 2 nu = e^{-2r}") {
        for (double r : {1.0, 2.0}) {
            const double nu = gauss::pt_symplectic_eig_min(gauss::tmsv_covariance(r, 0.3));
            CHECK(std::abs(2.0 * nu - std::exp(-2.0 * r)) <= 1e-12);
        }
    }
    SUBCASE("matches the brute-force partial-transpose spectrum") {
        std::mt19937 rng(11u);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int i = 0; i < 25; ++i) {
            const double r = 2.0 * uni(rng);
            const double phi = 6.28 * uni(rng);
            const Eigen::Matrix4d sigma = gauss::tmsv_covariance(r, phi);
            CHECK(std::abs(gauss::pt_symplectic_eig_min(sigma) -
                           oracles::pt_symplectic_min_bruteforce(sigma)) <= 1e-10);
        }
    }
    SUBCASE("phase invariance") {
        const double reference = gauss::pt_symplectic_eig_min(gauss::tmsv_covariance(1.5, 0.0));
        for (double phi : {0.4, 1.9, 3.6, 5.1}) {
            CHECK(std::abs(gauss::pt_symplectic_eig_min(gauss::tmsv_covariance(1.5, phi)) -
                           reference) <= 1e-12);
        }
    }
}

TEST_CASE("log_negativity") {
    CHECK(gauss::log_negativity(0.5) == 0.0);                        // separability boundary
    CHECK(std::abs(gauss::log_negativity(0.5 * std::exp(-4.0)) - 4.0) <= 1e-12);
    CHECK(gauss::log_negativity(1.0) == 0.0);                        // clamped
    CHECK_THROWS_AS(gauss::log_negativity(0.0), std::domain_error);
    CHECK_THROWS_AS(gauss::log_negativity(-1.0), std::domain_error);
}

TEST_CASE("entanglement of the fresh resource is 2r") {
    for (double r = 0.0; r <= 3.0; r += 0.25) {
        const double nu = gauss::pt_symplectic_eig_min(gauss::tmsv_covariance(r, 1.1));
        CHECK(std::abs(gauss::log_negativity(nu) - 2.0 * r) <= 1e-10);
    }
}

TEST_CASE("is_physical") {
    CHECK(gauss::is_physical(Eigen::Matrix2d(0.5 * Eigen::Matrix2d::Identity())));
    CHECK_FALSE(gauss::is_physical(Eigen::Matrix2d(0.1 * Eigen::Matrix2d::Identity())));
    CHECK(gauss::is_physical(gauss::tmsv_covariance(2.0, 0.7)));
    Eigen::Matrix4d squeezed_too_far = gauss::tmsv_covariance(1.0, 0.0);
    squeezed_too_far(3, 3) *= 0.2;  // breaks the uncertainty bound
    CHECK_FALSE(gauss::is_physical(squeezed_too_far));
}
