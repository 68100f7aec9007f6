#pragma once

#include <complex>
#include <vector>

namespace aqc::detail {

// Roots of c[0] + c[1] x + ... + c[n] x^n via the balanced companion matrix.
// Returns the balancing residual estimate alongside the roots.
struct PolyRoots {
    std::vector<std::complex<double>> roots;
    double max_residual = 0.0; // max |p(root)| / scale over roots
};

PolyRoots polynomial_roots(const std::vector<double>& coeffs);

} // namespace aqc::detail
