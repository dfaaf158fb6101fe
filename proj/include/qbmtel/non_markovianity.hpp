// non_markovianity.hpp — divisibility-based non-Markovianity of the channel:
// the closed form in the master-equation coefficients and the spectral
// definition through complete-positivity violation of intermediate maps.

#pragma once

#include <Eigen/Dense>

#include "qbmtel/qbm_channel.hpp"

namespace qbmtel::nm {

// Closed form (1/2) [1 - delta / sqrt(delta^2 + gamma^2 + pi^2)], clamped to
// [0, 1]. The all-zero input (identity channel) returns 0 by convention.
double np_closed_form(double gamma, double delta, double pi);

// Channel map between two time instants, satisfying the composition identity
// sigma(t + eps) = X sigma(t) X^T + Y with
//   X(t+eps, t) = X(t+eps, 0) X(t, 0)^{-1}
//   Y(t+eps, t) = Y(t+eps, 0) - X(t+eps, t) Y(t, 0) X(t+eps, t)^T.
struct IntermediateMap {
    qbm::ChannelPair pair;
    double t = 0.0;
    double eps = 0.0;
};

IntermediateMap intermediate_map(const qbm::CoefficientGrid& grid, double t, double eps);

// Hermitian matrix whose negative spectrum signals complete-positivity
// violation: Y - (i/2) Omega + (i/2) X Omega X^T.
Eigen::Matrix2cd cp_matrix(const IntermediateMap& im);

// Spectral measure (1/2) sum(|l| - l) / sum(|l|) from the eigenvalues of the
// cp_matrix; normalized so its eps -> 0 limit is np_closed_form.
double np_from_eigenvalues(double l1, double l2);
double np_spectral(const qbm::CoefficientGrid& grid, double t, double eps);

// One Richardson halving: 2 N(eps/2) - N(eps), the eps -> 0 estimate.
double np_spectral_limit(const qbm::CoefficientGrid& grid, double t, double eps);

}  // namespace qbmtel::nm
