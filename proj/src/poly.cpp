#include "aqc/detail/poly.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace aqc::detail {

PolyRoots polynomial_roots(const std::vector<double>& coeffs) {
    // strip leading (high-degree) zeros
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
    if (deg < 2) return {};
    const std::size_t n = deg - 1;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<long>(n), static_cast<long>(n));
    for (std::size_t i = 0; i + 1 < n; ++i) companion(static_cast<long>(i + 1), static_cast<long>(i)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        companion(static_cast<long>(i), static_cast<long>(n - 1)) = -coeffs[i] / coeffs[deg - 1];

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("polynomial_roots: eigensolver failed");

    PolyRoots out;
    for (long i = 0; i < static_cast<long>(n); ++i) {
        const std::complex<double> r = solver.eigenvalues()(i);
        out.roots.push_back(r);
        // residual |p(r)| relative to the dominant monomial magnitude
        std::complex<double> p = 0.0;
        double scale = 0.0;
        std::complex<double> xp = 1.0;
        for (std::size_t k = 0; k < deg; ++k) {
            p += coeffs[k] * xp;
            scale = std::max(scale, std::abs(coeffs[k] * xp));
            xp *= r;
        }
        if (scale > 0.0)
            out.max_residual = std::max(out.max_residual, std::abs(p) / scale);
    }
    return out;
}

} // namespace aqc::detail
