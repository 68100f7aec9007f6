#pragma once

#include <complex>
#include <string>
#include <vector>

#include "aqc/exact.hpp"
#include "aqc/model.hpp"

namespace aqc {

// Truncated Taylor expansion Z(h) = sum_k c_k h^k / k! of the partition
// function in the external field, from exact field-free moments of the
// time-integrated total displacement S = (beta/P) sum_{l,p} x_{l,p}.
struct FieldPolynomial {
    std::vector<double> c;        // c_0 .. c_{2n}
    double rel_disagreement = 0.0; // quadrature certificate carried over
    std::string instance;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    double eval(double h) const; // truncated series value
};

// Moments via the quadrature oracle; requires even V, P |Lambda| <= 6,
// degree <= 12 (even).
FieldPolynomial build_field_polynomial(const ModelSpec& model, int P, int degree,
                                       const QuadratureSpec& quad = {});

enum class ZeroVerdict { Pass, Fail, Inconclusive };

struct ZeroReport {
    std::vector<std::complex<double>> roots; // in s = h^2
    double max_residual = 0.0;
    bool roots_reliable = true;  // residual <= 1e-6
    bool pass = false;           // all roots on the negative real s-axis
    ZeroVerdict verdict = ZeroVerdict::Inconclusive; // stability-checked
};

// Roots of the even truncation viewed as a polynomial in s = h^2.  pass
// requires re(s) < 1e-6 and |im(s)| < 1e-6 |re(s)| for every root; the
// verdict additionally demands the same outcome at truncation degree - 2.
ZeroReport zero_location_check(const FieldPolynomial& poly);

// Z(h) > 0 and log Z midpoint-convex on h in [-2, 2] (41 points).
bool ridge_check(const FieldPolynomial& poly);

} // namespace aqc
