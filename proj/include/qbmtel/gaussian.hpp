// gaussian.hpp — covariance matrices of the states entering the protocol,
// Gaussian fidelity, and the partial-transpose entanglement machinery.
//
// Convention: vacuum covariance is (1/2) * identity.

#pragma once

#include <Eigen/Dense>

namespace qbmtel::gauss {

inline constexpr double kVacuumVariance = 0.5;

// One-mode symplectic form [[0, 1], [-1, 0]] and its two-mode direct sum.
Eigen::Matrix2d symplectic_form();
Eigen::Matrix4d symplectic_form_two();

// Two-mode covariance in terms of its 2x2 blocks [[A, C], [C^T, D]].
struct TwoModeBlocks {
    Eigen::Matrix2d a_block;
    Eigen::Matrix2d d_block;
    Eigen::Matrix2d c_block;
};

TwoModeBlocks split_blocks(const Eigen::Matrix4d& sigma);
Eigen::Matrix4d assemble_blocks(const TwoModeBlocks& blocks);

// Covariance of the two-mode squeezed vacuum with amplitude r and phase phi:
//   (1/2) [[cosh(2r) I, C(r, phi)], [C(r, phi), cosh(2r) I]],
//   C(r, phi) = sinh(2r) [[cos phi, sin phi], [sin phi, -cos phi]].
Eigen::Matrix4d tmsv_covariance(double r, double phi);

// det(sigma) via the Schur complement of the A block. Avoids the catastrophic
// cancellation the plain 4x4 expansion suffers for strongly squeezed states.
double covariance_determinant(const Eigen::Matrix4d& sigma);

// Fidelity between an input coherent state and the Gaussian output with the
// same first moments: 1 / sqrt(det(sigma_in + sigma_out)).
double gaussian_fidelity_coherent(const Eigen::Matrix2d& sigma_out);

// Smallest symplectic eigenvalue of the partially transposed two-mode
// covariance, from the block invariants. Separable states have 2*nu >= 1.
double pt_symplectic_eig_min(const Eigen::Matrix4d& sigma);

// E_N = max{0, -ln(2 nu_min)}; natural logarithm, so the fresh two-mode
// squeezed vacuum has E_N = 2r.
double log_negativity(double nu_min);

// Uncertainty-principle check: min eig(sigma + (i/2) Omega) >= -1e-8.
bool is_physical(const Eigen::Matrix2d& sigma);
bool is_physical(const Eigen::Matrix4d& sigma);

}  // namespace qbmtel::gauss
