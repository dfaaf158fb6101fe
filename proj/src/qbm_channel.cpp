#include "qbmtel/qbm_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbmtel/gaussian.hpp"

namespace qbmtel::qbm {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double e : v) {
        if (!std::isfinite(e)) return false;
    }
    return true;
}

}  // namespace

void QbmParams::validate() const {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("QbmParams: x must be positive and finite");
    }
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("QbmParams: s must be positive and finite");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("QbmParams: theta must be positive and finite");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("QbmParams: alpha must be positive and finite");
    }
    if (alpha > 0.5) {
        throw std::invalid_argument(
            "QbmParams: alpha must be <= 0.5; the coefficients are perturbative in alpha");
    }
}

double spectral_density(double omega, double s) {
    if (omega < 0.0) {
        throw std::domain_error("spectral_density: omega must be >= 0");
    }
    if (!(s > 0.0)) {
        throw std::domain_error("spectral_density: s must be > 0");
    }
    return std::pow(omega, s) * std::exp(-omega);
}

double damping_kernel(double u, double s, const QuadratureSettings& q) {
    // omega^s e^{-omega} sin(omega u) vanishes at 0 for every s > 0
    return num::integrate_adaptive(
        [=](double w) { return std::pow(w, s) * std::exp(-w) * std::sin(w * u); }, 0.0,
        q.omega_max, q.inner_tol);
}

double diffusion_kernel(double u, double s, const QuadratureSettings& q) {
    if (s >= 1.0) {
        return num::integrate_adaptive(
            [=](double w) { return std::pow(w, s - 1.0) * std::exp(-w) * std::cos(w * u); },
            0.0, q.omega_max, q.inner_tol);
    }
    // 0 < s < 1: the substitution omega = v^m removes the omega^{s-1} endpoint
    // singularity once m*s - 1 >= 1.
    const int m = std::max(2, static_cast<int>(std::ceil(2.0 / s)));
    const double md = static_cast<double>(m);
    const double vmax = std::pow(q.omega_max, 1.0 / md);
    return num::integrate_adaptive(
        [=](double v) {
            const double w = std::pow(v, md);
            return md * std::pow(v, md * s - 1.0) * std::exp(-w) * std::cos(w * u);
        },
        0.0, vmax, q.inner_tol);
}

double gamma_coeff(double tau, const QbmParams& p, const QuadratureSettings& q) {
    p.validate();
    if (tau < 0.0) {
        throw std::domain_error("gamma_coeff: tau must be >= 0");
    }
    const double a2 = p.alpha * p.alpha;
    return a2 * num::integrate_adaptive(
                    [&](double u) { return damping_kernel(u, p.s, q) * std::sin(u / p.x); },
                    0.0, tau, q.outer_tol);
}

double delta_coeff(double tau, const QbmParams& p, const QuadratureSettings& q) {
    p.validate();
    if (tau < 0.0) {
        throw std::domain_error("delta_coeff: tau must be >= 0");
    }
    const double pre = 2.0 * p.theta * p.alpha * p.alpha;
    return pre * num::integrate_adaptive(
                     [&](double u) { return diffusion_kernel(u, p.s, q) * std::cos(u / p.x); },
                     0.0, tau, q.outer_tol);
}

double pi_coeff(double tau, const QbmParams& p, const QuadratureSettings& q) {
    p.validate();
    if (tau < 0.0) {
        throw std::domain_error("pi_coeff: tau must be >= 0");
    }
    const double pre = 2.0 * p.theta * p.alpha * p.alpha;
    return pre * num::integrate_adaptive(
                     [&](double u) { return diffusion_kernel(u, p.s, q) * std::sin(u / p.x); },
                     0.0, tau, q.outer_tol);
}

Eigen::Matrix2d rotation(double tau, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("rotation: x must be > 0");
    }
    const double angle = tau / x;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix2d r;
    r << c, s, -s, c;
    return r;
}

Eigen::Matrix2d CoefficientGrid::wbar(std::size_t k) const {
    Eigen::Matrix2d w;
    w << w11_[k], w12_[k], w12_[k], w22_[k];
    return w;
}

std::size_t CoefficientGrid::segment(double tau) const {
    const double slack = 1e-9 * (1.0 + tau_max_);
    if (!(tau >= -slack) || !(tau <= tau_max_ + slack)) {
        throw std::out_of_range("CoefficientGrid: tau " + std::to_string(tau) +
                                " outside [0, " + std::to_string(tau_max_) + "]");
    }
    const double h = spacing();
    const double clamped = std::min(std::max(tau, 0.0), tau_max_);
    const auto k = static_cast<std::size_t>(clamped / h);
    return std::min(k, n_ - 2);
}

double CoefficientGrid::hermite(const std::vector<double>& value,
                                const std::vector<double>& deriv, double tau) const {
    const std::size_t k = segment(tau);
    const double h = spacing();
    const double t = (std::min(std::max(tau, 0.0), tau_max_) - node(k)) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * value[k] + h10 * h * deriv[k] + h01 * value[k + 1] + h11 * h * deriv[k + 1];
}

double CoefficientGrid::gamma_at(double tau) const { return hermite(gamma_, dgamma_, tau); }
double CoefficientGrid::delta_at(double tau) const { return hermite(delta_, ddelta_, tau); }
double CoefficientGrid::pi_at(double tau) const { return hermite(pi_, dpi_, tau); }

double CoefficientGrid::big_gamma_at(double tau) const {
    const std::size_t k = segment(tau);
    const double h = spacing();
    const double t = (std::min(std::max(tau, 0.0), tau_max_) - node(k)) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * big_gamma_[k] + h10 * h * 2.0 * gamma_[k] + h01 * big_gamma_[k + 1] +
           h11 * h * 2.0 * gamma_[k + 1];
}

Eigen::Matrix2d CoefficientGrid::noise_integral_at(double tau) const {
    Eigen::Matrix2d q;
    q(0, 0) = hermite(q11_, s11_, tau);
    q(0, 1) = hermite(q12_, s12_, tau);
    q(1, 0) = q(0, 1);
    q(1, 1) = hermite(q22_, s22_, tau);
    return q;
}

Eigen::Matrix2d CoefficientGrid::wbar_at(double tau) const {
    const Eigen::Matrix2d r = rotation(tau, params_.x);
    const Eigen::Matrix2d w =
        std::exp(-big_gamma_at(tau)) * r * noise_integral_at(tau) * r.transpose();
    return 0.5 * (w + w.transpose());
}

CoefficientGrid build_coefficient_grid(const QbmParams& p, double tau_max, std::size_t n,
                                       const QuadratureSettings& q) {
    p.validate();
    if (!(tau_max > 0.0)) {
        throw std::invalid_argument("build_coefficient_grid: tau_max must be > 0");
    }
    if (n < 9) {
        throw std::invalid_argument("build_coefficient_grid: need n >= 9 nodes");
    }

    CoefficientGrid g;
    g.params_ = p;
    g.tau_max_ = tau_max;
    g.n_ = n;

    const double a2 = p.alpha * p.alpha;
    const double pre = 2.0 * p.theta * a2;

    g.dgamma_.resize(n);
    g.ddelta_.resize(n);
    g.dpi_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = g.node(k);
        const double kd = damping_kernel(u, p.s, q);
        const double kf = diffusion_kernel(u, p.s, q);
        const double cs = std::cos(u / p.x);
        const double sn = std::sin(u / p.x);
        g.dgamma_[k] = a2 * kd * sn;
        g.ddelta_[k] = pre * kf * cs;
        g.dpi_[k] = pre * kf * sn;
    }

    g.gamma_ = num::cumulative_integral(num::UniformGrid(tau_max, g.dgamma_)).values;
    g.delta_ = num::cumulative_integral(num::UniformGrid(tau_max, g.ddelta_)).values;
    g.pi_ = num::cumulative_integral(num::UniformGrid(tau_max, g.dpi_)).values;

    std::vector<double> two_gamma(n);
    for (std::size_t k = 0; k < n; ++k) two_gamma[k] = 2.0 * g.gamma_[k];
    g.big_gamma_ = num::cumulative_integral(num::UniformGrid(tau_max, std::move(two_gamma))).values;

    // frame-fixed noise integrand S = e^{Gamma} R^T M R with
    // M = [[delta, -pi/2], [-pi/2, 0]]
    g.s11_.resize(n);
    g.s12_.resize(n);
    g.s22_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Matrix2d r = rotation(g.node(k), p.x);
        Eigen::Matrix2d m;
        m << g.delta_[k], -0.5 * g.pi_[k], -0.5 * g.pi_[k], 0.0;
        const Eigen::Matrix2d s = std::exp(g.big_gamma_[k]) * r.transpose() * m * r;
        g.s11_[k] = s(0, 0);
        g.s12_[k] = 0.5 * (s(0, 1) + s(1, 0));
        g.s22_[k] = s(1, 1);
    }
    g.q11_ = num::cumulative_integral(num::UniformGrid(tau_max, g.s11_)).values;
    g.q12_ = num::cumulative_integral(num::UniformGrid(tau_max, g.s12_)).values;
    g.q22_ = num::cumulative_integral(num::UniformGrid(tau_max, g.s22_)).values;

    g.w11_.resize(n);
    g.w12_.resize(n);
    g.w22_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Matrix2d r = rotation(g.node(k), p.x);
        Eigen::Matrix2d qk;
        qk << g.q11_[k], g.q12_[k], g.q12_[k], g.q22_[k];
        const Eigen::Matrix2d w = std::exp(-g.big_gamma_[k]) * r * qk * r.transpose();
        g.w11_[k] = w(0, 0);
        g.w12_[k] = 0.5 * (w(0, 1) + w(1, 0));
        g.w22_[k] = w(1, 1);
    }

    for (const auto* v : {&g.gamma_, &g.delta_, &g.pi_, &g.big_gamma_, &g.q11_, &g.q12_,
                          &g.q22_, &g.w11_, &g.w12_, &g.w22_}) {
        if (!all_finite(*v)) {
            throw std::runtime_error("build_coefficient_grid: non-finite coefficient");
        }
    }
    return g;
}

ChannelPair channel_pair(const CoefficientGrid& grid, double tau) {
    const double big_gamma = grid.big_gamma_at(tau);
    const Eigen::Matrix2d r = rotation(tau, grid.params().x);
    ChannelPair pair;
    pair.x_mat = std::exp(-0.5 * big_gamma) * r;  // (R^{-1})^T = R
    pair.y_mat = 2.0 * grid.wbar_at(tau);
    pair.tau = tau;
    return pair;
}

Eigen::Matrix4d apply_channel_mode2(const Eigen::Matrix4d& sigma, const ChannelPair& pair) {
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("apply_channel_mode2: input covariance is not symmetric");
    }
    if (!gauss::is_physical(sigma)) {
        throw std::invalid_argument(
            "apply_channel_mode2: input covariance violates the uncertainty bound");
    }
    Eigen::Matrix4d lift = Eigen::Matrix4d::Identity();
    lift.block<2, 2>(2, 2) = pair.x_mat;
    Eigen::Matrix4d out = lift * sigma * lift.transpose();
    out.block<2, 2>(2, 2) += pair.y_mat;
    return 0.5 * (out + out.transpose());
}

}  // namespace qbmtel::qbm
