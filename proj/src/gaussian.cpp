#include "qbmtel/gaussian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qbmtel::gauss {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kPhysTol = 1e-8;    // absorbs grid-integration error in evolved states
constexpr double kRadicandTol = 1e-10;

void require_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* where) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymTol) {
        throw std::invalid_argument(std::string(where) + ": covariance is not symmetric");
    }
}

template <int N>
bool check_physical(const Eigen::Matrix<double, N, N>& sigma,
                    const Eigen::Matrix<double, N, N>& omega) {
    using Cplx = std::complex<double>;
    Eigen::Matrix<Cplx, N, N> h =
        sigma.template cast<Cplx>() + Cplx(0.0, 0.5) * omega.template cast<Cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Cplx, N, N>> solver(h);
    return solver.eigenvalues().minCoeff() >= -kPhysTol;
}

}  // namespace

Eigen::Matrix2d symplectic_form() {
    Eigen::Matrix2d omega;
    omega << 0.0, 1.0, -1.0, 0.0;
    return omega;
}

Eigen::Matrix4d symplectic_form_two() {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega.block<2, 2>(0, 0) = symplectic_form();
    omega.block<2, 2>(2, 2) = symplectic_form();
    return omega;
}

TwoModeBlocks split_blocks(const Eigen::Matrix4d& sigma) {
    TwoModeBlocks blocks;
    blocks.a_block = sigma.block<2, 2>(0, 0);
    blocks.c_block = sigma.block<2, 2>(0, 2);
    blocks.d_block = sigma.block<2, 2>(2, 2);
    return blocks;
}

Eigen::Matrix4d assemble_blocks(const TwoModeBlocks& blocks) {
    Eigen::Matrix4d sigma;
    sigma.block<2, 2>(0, 0) = blocks.a_block;
    sigma.block<2, 2>(0, 2) = blocks.c_block;
    sigma.block<2, 2>(2, 0) = blocks.c_block.transpose();
    sigma.block<2, 2>(2, 2) = blocks.d_block;
    return sigma;
}

Eigen::Matrix4d tmsv_covariance(double r, double phi) {
    if (r < 0.0) {
        throw std::domain_error("tmsv_covariance: r must be >= 0");
    }
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    Eigen::Matrix2d c;
    c << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    c *= sh;
    TwoModeBlocks blocks;
    blocks.a_block = 0.5 * ch * Eigen::Matrix2d::Identity();
    blocks.d_block = blocks.a_block;
    blocks.c_block = 0.5 * c;
    return assemble_blocks(blocks);
}

double covariance_determinant(const Eigen::Matrix4d& sigma) {
    require_symmetric(sigma, "covariance_determinant");
    const TwoModeBlocks b = split_blocks(sigma);
    const double det_a = b.a_block.determinant();
    if (std::abs(det_a) < 1e-100) {
        return sigma.determinant();
    }
    const Eigen::Matrix2d schur =
        b.d_block - b.c_block.transpose() * b.a_block.inverse() * b.c_block;
    return det_a * schur.determinant();
}

double gaussian_fidelity_coherent(const Eigen::Matrix2d& sigma_out) {
    require_symmetric(sigma_out, "gaussian_fidelity_coherent");
    if (!is_physical(sigma_out)) {
        throw std::invalid_argument(
            "gaussian_fidelity_coherent: output covariance is unphysical");
    }
    const Eigen::Matrix2d sum =
        sigma_out + kVacuumVariance * Eigen::Matrix2d::Identity();
    return 1.0 / std::sqrt(sum.determinant());
}

double pt_symplectic_eig_min(const Eigen::Matrix4d& sigma) {
    require_symmetric(sigma, "pt_symplectic_eig_min");
    const TwoModeBlocks b = split_blocks(sigma);
    const double det_a = b.a_block.determinant();
    const double det_d = b.d_block.determinant();
    const double det_c = b.c_block.determinant();
    const double det_sigma = covariance_determinant(sigma);
    const double pt_invariant = det_a + det_d - 2.0 * det_c;

    double disc = pt_invariant * pt_invariant - 4.0 * det_sigma;
    if (disc < -kRadicandTol) {
        throw std::runtime_error("pt_symplectic_eig_min: negative discriminant (unphysical input)");
    }
    disc = std::max(disc, 0.0);
    const double denom = pt_invariant + std::sqrt(disc);
    if (!(denom > 0.0)) {
        throw std::runtime_error("pt_symplectic_eig_min: degenerate invariants (unphysical input)");
    }
    // nu^2 = (pt_invariant - sqrt(disc)) / 2, rewritten to dodge cancellation
    double nu_sq = 2.0 * det_sigma / denom;
    if (nu_sq < -kRadicandTol) {
        throw std::runtime_error("pt_symplectic_eig_min: negative radicand (unphysical input)");
    }
    return std::sqrt(std::max(nu_sq, 0.0));
}

double log_negativity(double nu_min) {
    if (!(nu_min > 0.0)) {
        throw std::domain_error("log_negativity: nu_min must be > 0");
    }
    return std::max(0.0, -std::log(2.0 * nu_min));
}

bool is_physical(const Eigen::Matrix2d& sigma) {
    require_symmetric(sigma, "is_physical");
    return check_physical<2>(sigma, symplectic_form());
}

bool is_physical(const Eigen::Matrix4d& sigma) {
    require_symmetric(sigma, "is_physical");
    return check_physical<4>(sigma, symplectic_form_two());
}

}  // namespace qbmtel::gauss
