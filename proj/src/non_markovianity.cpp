#include "qbmtel/non_markovianity.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qbmtel/gaussian.hpp"
#include "qbmtel/numerics.hpp"

namespace qbmtel::nm {

double np_closed_form(double gamma, double delta, double pi) {
    const double norm = std::sqrt(delta * delta + gamma * gamma + pi * pi);
    if (norm == 0.0) {
        return 0.0;  // identity channel
    }
    const double value = 0.5 * (1.0 - delta / norm);
    return std::min(std::max(value, 0.0), 1.0);
}

IntermediateMap intermediate_map(const qbm::CoefficientGrid& grid, double t, double eps) {
    if (t < 0.0) {
        throw std::domain_error("intermediate_map: t must be >= 0");
    }
    if (!(eps > 0.0)) {
        throw std::domain_error("intermediate_map: eps must be > 0");
    }
    const qbm::ChannelPair from = qbm::channel_pair(grid, t);
    const qbm::ChannelPair to = qbm::channel_pair(grid, t + eps);
    const double det_from = from.x_mat.determinant();
    if (!(std::abs(det_from) > 0.0)) {
        throw std::runtime_error("intermediate_map: singular channel matrix");
    }
    IntermediateMap im;
    im.pair.x_mat = to.x_mat * from.x_mat.inverse();
    const Eigen::Matrix2d y =
        to.y_mat - im.pair.x_mat * from.y_mat * im.pair.x_mat.transpose();
    im.pair.y_mat = 0.5 * (y + y.transpose());
    im.pair.tau = eps;
    im.t = t;
    im.eps = eps;
    return im;
}

Eigen::Matrix2cd cp_matrix(const IntermediateMap& im) {
    const Eigen::Matrix2d omega = gauss::symplectic_form();
    const Eigen::Matrix2d rotated = im.pair.x_mat * omega * im.pair.x_mat.transpose();
    const std::complex<double> half_i(0.0, 0.5);
    Eigen::Matrix2cd b = im.pair.y_mat.cast<std::complex<double>>() +
                         half_i * (rotated - omega).cast<std::complex<double>>();
    return 0.5 * (b + b.adjoint());
}

double np_from_eigenvalues(double l1, double l2) {
    const double sum_abs = std::abs(l1) + std::abs(l2);
    if (sum_abs == 0.0) {
        return 0.0;  // identity map
    }
    const double negative_part = (std::abs(l1) - l1) + (std::abs(l2) - l2);
    return 0.5 * negative_part / sum_abs;
}

double np_spectral(const qbm::CoefficientGrid& grid, double t, double eps) {
    if (t < 0.0) {
        throw std::domain_error("np_spectral: t must be >= 0");
    }
    if (t == 0.0) {
        return 0.0;  // channel coincides with the identity at the origin
    }
    const Eigen::Matrix2cd b = cp_matrix(intermediate_map(grid, t, eps));
    const auto [l1, l2] = num::eig_hermitian_2x2(b);
    return np_from_eigenvalues(l1, l2);
}

double np_spectral_limit(const qbm::CoefficientGrid& grid, double t, double eps) {
    return 2.0 * np_spectral(grid, t, 0.5 * eps) - np_spectral(grid, t, eps);
}

}  // namespace qbmtel::nm
