// oracles.hpp — independent reference computations for the test suites. None
// of these reuse the library's quadrature or symplectic routines.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

// Plain composite Simpson on a fixed fine mesh (n odd).
inline double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                            int n = 200001) {
    const double h = (b - a) / (n - 1);
    double acc = 0.0;
    for (int k = 0; k + 2 < n; k += 2) {
        acc += h / 3.0 * (f(a + k * h) + 4.0 * f(a + (k + 1) * h) + f(a + (k + 2) * h));
    }
    return acc;
}

// Closed-form Ohmic (s = 1) frequency integrals.
inline double ohmic_damping_kernel(double u) {
    const double d = 1.0 + u * u;
    return 2.0 * u / (d * d);
}
inline double ohmic_diffusion_kernel(double u) { return 1.0 / (1.0 + u * u); }

// Master-equation coefficients for s = 1 with the analytic inner integral.
inline double gamma_ohmic(double tau, double x, double alpha) {
    return alpha * alpha *
           simpson_fixed([&](double u) { return ohmic_damping_kernel(u) * std::sin(u / x); },
                         0.0, tau);
}
inline double delta_ohmic(double tau, double x, double theta, double alpha) {
    return 2.0 * theta * alpha * alpha *
           simpson_fixed([&](double u) { return ohmic_diffusion_kernel(u) * std::cos(u / x); },
                         0.0, tau);
}
inline double pi_ohmic(double tau, double x, double theta, double alpha) {
    return 2.0 * theta * alpha * alpha *
           simpson_fixed([&](double u) { return ohmic_diffusion_kernel(u) * std::sin(u / x); },
                         0.0, tau);
}

// Smallest partial-transpose symplectic eigenvalue by brute force: the
// spectrum of i Omega sigma~ with sigma~ = P sigma P, P = diag(1, 1, 1, -1).
inline double pt_symplectic_min_bruteforce(const Eigen::Matrix4d& sigma) {
    Eigen::Matrix4d pt = sigma;
    for (int i = 0; i < 4; ++i) {
        pt(i, 3) *= -1.0;
        pt(3, i) *= -1.0;
    }
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    const std::complex<double> iu(0.0, 1.0);
    const Eigen::Matrix4cd m =
        iu * omega.cast<std::complex<double>>() * pt.cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m);
    double nu_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        nu_min = std::min(nu_min, std::abs(solver.eigenvalues()(i)));
    }
    return nu_min;
}

}  // namespace oracles
