// teleportation.hpp — the noisy Braunstein-Kimble protocol: output covariance,
// the two algebraically equivalent fidelity routes, phase optimization, and
// the entanglement of the channel-evolved resource.

#pragma once

#include <cmath>
#include <numbers>

#include "qbmtel/gaussian.hpp"
#include "qbmtel/qbm_channel.hpp"

namespace qbmtel::tele {

// Protocol settings. The Bell-measurement beam splitters satisfy
// T^2 + R^2 = 1; the classical-channel gain defaults to 1/T, the choice that
// collapses the general output covariance onto the closed-form fidelity.
struct ProtocolParams {
    double r = 2.0;
    double phi = std::numbers::pi;
    double transmissivity = std::sqrt(0.9);
    double gain = 1.0 / transmissivity;

    double reflectivity() const {
        return std::sqrt(std::max(0.0, 1.0 - transmissivity * transmissivity));
    }
    void validate() const;
};

// Covariance of the teleported state after a transit time dtau in the channel.
Eigen::Matrix2d output_covariance(const ProtocolParams& pp, const qbm::CoefficientGrid& grid,
                                  double dtau);

// Fidelity via det(sigma_in + sigma_out); valid for any gain.
double fidelity_det(const ProtocolParams& pp, const qbm::CoefficientGrid& grid, double dtau);

// Closed-form fidelity; implicitly gain = 1/T.
double fidelity_closed_form(double r, double phi, double transmissivity,
                            const qbm::CoefficientGrid& grid, double dtau);

// Phase maximizing the fidelity: pi + dtau/x, reduced to [0, 2*pi).
double optimal_phase(double dtau, double x);

struct PhaseOptimum {
    double phi = 0.0;
    double fidelity = 0.0;
};

// Dense scan over [0, 2*pi) followed by golden-section refinement to 1e-6.
PhaseOptimum optimize_phase_numeric(double r, double transmissivity,
                                    const qbm::CoefficientGrid& grid, double dtau);

// Logarithmic negativity of the resource after its second mode crossed the
// channel for a transit time dtau.
double resource_entanglement(double r, double phi, const qbm::CoefficientGrid& grid,
                             double dtau);

}  // namespace qbmtel::tele
