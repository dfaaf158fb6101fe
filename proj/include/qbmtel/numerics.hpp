// numerics.hpp — 1-D quadrature, cumulative integrals on uniform grids,
// and 2x2 Hermitian eigenvalues shared by the channel and measure code.

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qbmtel::num {

// Samples of a real function on the uniform axis tau_k = k * t_max / (n - 1).
struct UniformGrid {
    double t_max = 0.0;
    std::size_t n = 0;
    std::vector<double> values;

    UniformGrid() = default;
    UniformGrid(double t_max_, std::size_t n_);
    UniformGrid(double t_max_, std::vector<double> values_);

    double spacing() const { return t_max / static_cast<double>(n - 1); }
    double node(std::size_t k) const {
        return t_max * (static_cast<double>(k) / static_cast<double>(n - 1));
    }

    // Throws std::invalid_argument if the shape invariants are violated.
    void check() const;
};

// Adaptive Simpson quadrature of f over [a, b] with absolute error target tol.
// Deterministic for fixed inputs. Throws std::runtime_error when the
// refinement limit is hit before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol);

// Running integral G_k ~ int_0^{tau_k} f(s) ds on the same axis, G_0 = 0.
// Composite Simpson on even prefixes with a three-point end rule on the
// trailing panel of odd prefixes; requires n >= 3.
UniformGrid cumulative_integral(const UniformGrid& samples);

// Eigenvalues of a 2x2 complex Hermitian matrix from the trace/determinant
// closed form, returned ascending. Inputs whose anti-Hermitian part exceeds
// 1e-12 are rejected.
std::pair<double, double> eig_hermitian_2x2(const Eigen::Matrix2cd& h);

}  // namespace qbmtel::num
