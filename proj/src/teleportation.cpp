#include "qbmtel/teleportation.hpp"

#include <cmath>
#include <stdexcept>

namespace qbmtel::tele {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

void ProtocolParams::validate() const {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("ProtocolParams: r must be >= 0 and finite");
    }
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("ProtocolParams: phi must be finite");
    }
    if (!(transmissivity > 0.0) || !(transmissivity <= 1.0)) {
        throw std::invalid_argument("ProtocolParams: transmissivity must lie in (0, 1]");
    }
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("ProtocolParams: gain must be > 0 and finite");
    }
}

Eigen::Matrix2d output_covariance(const ProtocolParams& pp, const qbm::CoefficientGrid& grid,
                                  double dtau) {
    pp.validate();
    const double big_gamma = grid.big_gamma_at(dtau);
    const Eigen::Matrix2d wbar = grid.wbar_at(dtau);
    const double t = pp.transmissivity;
    const double refl_sq = 1.0 - t * t;
    const double g = pp.gain;
    const double ch = std::cosh(2.0 * pp.r);
    const double sh = std::sinh(2.0 * pp.r);
    const double phase = std::cos(pp.phi - dtau / grid.params().x);

    const double bracket = std::exp(big_gamma) * g * g * (t * t * ch + 2.0 * refl_sq + t * t) +
                           2.0 * std::exp(0.5 * big_gamma) * g * t * sh * phase + ch;
    return 0.5 * std::exp(-big_gamma) * bracket * Eigen::Matrix2d::Identity() + 2.0 * wbar;
}

double fidelity_det(const ProtocolParams& pp, const qbm::CoefficientGrid& grid, double dtau) {
    return gauss::gaussian_fidelity_coherent(output_covariance(pp, grid, dtau));
}

double fidelity_closed_form(double r, double phi, double transmissivity,
                            const qbm::CoefficientGrid& grid, double dtau) {
    if (!(transmissivity > 0.0) || !(transmissivity <= 1.0)) {
        throw std::invalid_argument("fidelity_closed_form: transmissivity must lie in (0, 1]");
    }
    if (!(r >= 0.0)) {
        throw std::invalid_argument("fidelity_closed_form: r must be >= 0");
    }
    const double big_gamma = grid.big_gamma_at(dtau);
    const Eigen::Matrix2d wbar = grid.wbar_at(dtau);
    const double ratio = (1.0 - transmissivity * transmissivity) /
                         (transmissivity * transmissivity);
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    const double phase = std::cos(phi - dtau / grid.params().x);
    const double eg = std::exp(big_gamma);
    const double eg_half = std::exp(0.5 * big_gamma);

    const double lam1 = ch + eg * (2.0 + 4.0 * wbar(0, 0) + 2.0 * ratio + ch) +
                        2.0 * eg_half * phase * sh;
    const double lam2 = ch + eg * (2.0 + 4.0 * wbar(1, 1) + 2.0 * ratio + ch) +
                        2.0 * eg_half * phase * sh;
    const double radicand =
        0.25 * std::exp(-2.0 * big_gamma) * lam1 * lam2 - 4.0 * wbar(0, 1) * wbar(0, 1);
    if (!(radicand > 0.0)) {
        throw std::runtime_error("fidelity_closed_form: nonpositive radicand (unphysical regime)");
    }
    return 1.0 / std::sqrt(radicand);
}

double optimal_phase(double dtau, double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("optimal_phase: x must be > 0");
    }
    return wrap_phase(std::numbers::pi + dtau / x);
}

PhaseOptimum optimize_phase_numeric(double r, double transmissivity,
                                    const qbm::CoefficientGrid& grid, double dtau) {
    constexpr int kScanPoints = 513;
    const auto fidelity = [&](double phi) {
        return fidelity_closed_form(r, phi, transmissivity, grid, dtau);
    };

    double best_phi = 0.0;
    double best_f = -1.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double phi = kTwoPi * static_cast<double>(i) / kScanPoints;
        const double f = fidelity(phi);
        if (f > best_f) {
            best_f = f;
            best_phi = phi;
        }
    }

    // golden-section refinement around the scan winner
    const double step = kTwoPi / kScanPoints;
    double a = best_phi - step;
    double b = best_phi + step;
    const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_gold * (b - a);
    double d = a + inv_gold * (b - a);
    double fc = fidelity(c);
    double fd = fidelity(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gold * (b - a);
            fc = fidelity(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gold * (b - a);
            fd = fidelity(d);
        }
    }
    const double phi_star = wrap_phase(0.5 * (a + b));
    return {phi_star, fidelity(phi_star)};
}

double resource_entanglement(double r, double phi, const qbm::CoefficientGrid& grid,
                             double dtau) {
    const Eigen::Matrix4d fresh = gauss::tmsv_covariance(r, phi);
    const Eigen::Matrix4d evolved =
        qbm::apply_channel_mode2(fresh, qbm::channel_pair(grid, dtau));
    return gauss::log_negativity(gauss::pt_symplectic_eig_min(evolved));
}

}  // namespace qbmtel::tele
