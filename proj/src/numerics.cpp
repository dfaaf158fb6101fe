#include "qbmtel/numerics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qbmtel::num {

namespace {

// Beyond ~48 halvings of the interval the per-panel tolerance drops under
// machine precision, so further refinement cannot converge honestly.
constexpr int kMaxDepth = 48;

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw std::runtime_error(
            "integrate_adaptive: refinement limit reached; integrand too rough for the "
            "requested tolerance");
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

UniformGrid::UniformGrid(double t_max_, std::size_t n_)
    : t_max(t_max_), n(n_), values(n_, 0.0) {
    check();
}

UniformGrid::UniformGrid(double t_max_, std::vector<double> values_)
    : t_max(t_max_), n(values_.size()), values(std::move(values_)) {
    check();
}

void UniformGrid::check() const {
    if (n < 2) {
        throw std::invalid_argument("UniformGrid: need at least 2 samples");
    }
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("UniformGrid: t_max must be positive");
    }
    if (values.size() != n) {
        throw std::invalid_argument("UniformGrid: sample count does not match n");
    }
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    if (!(a <= b)) {
        throw std::domain_error("integrate_adaptive: requires a <= b");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("integrate_adaptive: requires tol > 0");
    }
    if (a == b) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        throw std::runtime_error("integrate_adaptive: integrand is not finite on [a, b]");
    }
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, kMaxDepth);
}

UniformGrid cumulative_integral(const UniformGrid& samples) {
    samples.check();
    if (samples.n < 3) {
        throw std::invalid_argument("cumulative_integral: need at least 3 samples");
    }
    const double h = samples.spacing();
    const std::vector<double>& f = samples.values;
    std::vector<double> out(samples.n, 0.0);
    for (std::size_t k = 1; k < samples.n; ++k) {
        if (k % 2 == 0) {
            out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
        } else if (k == 1) {
            // forward three-point rule for the very first panel
            out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
        } else {
            // backward three-point rule for the trailing panel of an odd prefix
            out[k] = out[k - 1] + h / 12.0 * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
        }
    }
    return UniformGrid(samples.t_max, std::move(out));
}

std::pair<double, double> eig_hermitian_2x2(const Eigen::Matrix2cd& h) {
    const Eigen::Matrix2cd anti = 0.5 * (h - h.adjoint());
    if (anti.cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("eig_hermitian_2x2: matrix is not Hermitian within 1e-12");
    }
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double off = std::abs(0.5 * (h(0, 1) + std::conj(h(1, 0))));
    const double mean = 0.5 * (a + d);
    const double disc = std::hypot(0.5 * (a - d), off);
    return {mean - disc, mean + disc};
}

}  // namespace qbmtel::num
