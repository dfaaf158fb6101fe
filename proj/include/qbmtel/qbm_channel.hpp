// qbm_channel.hpp — time-dependent coefficients of the quantum Brownian motion
// master equation and the (X, Y) covariance action of the resulting one-mode
// Gaussian channel.
//
// Everything is dimensionless: times are tau = omega_c * t, rates are in units
// of omega_c, and hbar = k_B = 1.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "qbmtel/numerics.hpp"

namespace qbmtel::qbm {

// Channel configuration.
struct QbmParams {
    double x = 0.1;        // omega_c / omega_0; x << 1 gives memory effects
    double s = 1.0;        // spectral exponent: 1 Ohmic, < 1 sub-, > 1 supra-Ohmic
    double theta = 100.0;  // k_B T / (hbar omega_c)
    double alpha = 0.1;    // system-bath coupling

    // Throws std::invalid_argument naming the offending field. alpha is capped
    // at 0.5; the weak-coupling comfort range ends at 0.2 (see weak_coupling()).
    void validate() const;

    bool high_temperature() const { return theta >= 1.0; }
    bool weak_coupling() const { return alpha <= 0.2; }
};

// Knobs for the frequency integrals. The e^{-omega} cutoff makes the tail
// beyond omega_max = 50 smaller than e^{-50}.
struct QuadratureSettings {
    double omega_max = 50.0;
    double inner_tol = 1e-12;  // frequency integral
    double outer_tol = 1e-10;  // time integral
};

// Bath spectral density omega^s e^{-omega}, with omega in units of omega_c.
double spectral_density(double omega, double s);

// Frequency integrals entering the coefficients:
//   damping_kernel(u)   = int_0^inf J(w) sin(w u) dw
//   diffusion_kernel(u) = int_0^inf J(w)/w cos(w u) dw   (high-T weight)
double damping_kernel(double u, double s, const QuadratureSettings& q = {});
double diffusion_kernel(double u, double s, const QuadratureSettings& q = {});

// Master-equation coefficients at a single time, by nested quadrature:
//   gamma(tau) = alpha^2 int_0^tau damping_kernel(u) sin(u/x) du
//   delta(tau) = 2 theta alpha^2 int_0^tau diffusion_kernel(u) cos(u/x) du
//   pi(tau)    = 2 theta alpha^2 int_0^tau diffusion_kernel(u) sin(u/x) du
double gamma_coeff(double tau, const QbmParams& p, const QuadratureSettings& q = {});
double delta_coeff(double tau, const QbmParams& p, const QuadratureSettings& q = {});
double pi_coeff(double tau, const QbmParams& p, const QuadratureSettings& q = {});

// Free rotation through angle tau / x: [[cos, sin], [-sin, cos]].
Eigen::Matrix2d rotation(double tau, double x);

// One-mode Gaussian channel action sigma -> X sigma X^T + Y at transit time tau.
struct ChannelPair {
    Eigen::Matrix2d x_mat = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d y_mat = Eigen::Matrix2d::Zero();
    double tau = 0.0;
};

// Precomputed tau-grid of the channel's time dependence: the three
// coefficients, the decay exponent Gamma(tau) = 2 int_0^tau gamma, and the
// accumulated noise matrix Wbar(tau). Immutable after construction; queries
// are read-only and safe to call concurrently.
//
// Off-node queries interpolate with cubic Hermite segments built from the
// stored integrand values, which keeps finite-difference consumers (the
// intermediate divisibility maps) accurate at increments far below the grid
// spacing.
class CoefficientGrid {
public:
    CoefficientGrid() = default;

    const QbmParams& params() const { return params_; }
    double tau_max() const { return tau_max_; }
    std::size_t size() const { return n_; }
    double spacing() const { return tau_max_ / static_cast<double>(n_ - 1); }
    double node(std::size_t k) const {
        return tau_max_ * (static_cast<double>(k) / static_cast<double>(n_ - 1));
    }

    // Node values.
    double gamma(std::size_t k) const { return gamma_[k]; }
    double delta(std::size_t k) const { return delta_[k]; }
    double pi(std::size_t k) const { return pi_[k]; }
    double big_gamma(std::size_t k) const { return big_gamma_[k]; }
    Eigen::Matrix2d wbar(std::size_t k) const;

    // Interpolated queries; tau outside [0, tau_max] throws std::out_of_range.
    double gamma_at(double tau) const;
    double delta_at(double tau) const;
    double pi_at(double tau) const;
    double big_gamma_at(double tau) const;
    Eigen::Matrix2d wbar_at(double tau) const;

    // Frame-fixed noise integral Q(tau) = int_0^tau e^{Gamma} R^T M R; the
    // noise matrix is Wbar = e^{-Gamma} R Q R^T.
    Eigen::Matrix2d noise_integral_at(double tau) const;

private:
    friend CoefficientGrid build_coefficient_grid(const QbmParams&, double, std::size_t,
                                                  const QuadratureSettings&);

    std::size_t segment(double tau) const;
    double hermite(const std::vector<double>& value, const std::vector<double>& deriv,
                   double tau) const;

    QbmParams params_;
    double tau_max_ = 0.0;
    std::size_t n_ = 0;
    // coefficient samples and their exact derivatives (the outer integrands)
    std::vector<double> gamma_, dgamma_;
    std::vector<double> delta_, ddelta_;
    std::vector<double> pi_, dpi_;
    std::vector<double> big_gamma_;             // derivative is 2 * gamma_
    std::vector<double> q11_, q12_, q22_;       // noise integral entries
    std::vector<double> s11_, s12_, s22_;       // their integrands
    std::vector<double> w11_, w12_, w22_;       // node noise matrix
};

// Samples the coefficients on n nodes over [0, tau_max] and accumulates the
// integrated quantities with the composite cumulative rule; n >= 9.
CoefficientGrid build_coefficient_grid(const QbmParams& p, double tau_max, std::size_t n,
                                       const QuadratureSettings& q = {});

// Channel matrices at transit time tau:
//   X = e^{-Gamma/2} (R^{-1})^T,  Y = 2 Wbar,  det X = e^{-Gamma}.
ChannelPair channel_pair(const CoefficientGrid& grid, double tau);

// Applies the pair to mode 2 of a two-mode covariance matrix; mode 1 is
// untouched. The input must be a physical symmetric covariance.
Eigen::Matrix4d apply_channel_mode2(const Eigen::Matrix4d& sigma, const ChannelPair& pair);

}  // namespace qbmtel::qbm
