#include "aqc/leeyang.hpp"

#include <cmath>
#include <stdexcept>

#include "aqc/detail/poly.hpp"

namespace aqc {

double FieldPolynomial::eval(double h) const {
    double sum = 0.0, hk = 1.0, fact = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) {
            hk *= h;
            fact *= static_cast<double>(k);
        }
        sum += c[k] * hk / fact;
    }
    return sum;
}

FieldPolynomial build_field_polynomial(const ModelSpec& model, int P, int degree,
                                       const QuadratureSpec& quad) {
    model.validate();
    if (model.potential.h != 0.0)
        throw std::invalid_argument("build_field_polynomial: even potential required");
    if (degree < 2 || degree > 12 || degree % 2 != 0)
        throw std::invalid_argument("build_field_polynomial: even degree in [2, 12] required");

    const long n = model.lattice.site_count();
    const double dt = model.beta / P;
    std::vector<SliceFunctional> functionals;
    for (int k = 1; k <= degree; ++k)
        functionals.push_back([dt, k](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v;
            s *= dt;
            double pw = 1.0;
            for (int j = 0; j < k; ++j) pw *= s;
            return pw;
        });

    const auto res = exact_expectations(model, P, std::nullopt, functionals, quad);
    if (!res.certificate.ok)
        throw std::runtime_error("build_field_polynomial: quadrature certificate failed");

    FieldPolynomial poly;
    poly.c.resize(static_cast<std::size_t>(degree) + 1);
    poly.c[0] = res.Z;
    for (int k = 1; k <= degree; ++k)
        poly.c[static_cast<std::size_t>(k)] = res.Z * res.values[static_cast<std::size_t>(k - 1)];
    poly.rel_disagreement = res.certificate.rel_disagreement;
    poly.instance = "box " + std::to_string(n) + " sites, P=" + std::to_string(P) +
                    ", degree " + std::to_string(degree);
    return poly;
}

namespace {

struct SingleCheck {
    std::vector<std::complex<double>> roots;
    double residual = 0.0;
    bool pass = false;
    bool have_roots = false;
};

// even truncation up to `degree`, as a polynomial in s = h^2
SingleCheck check_even_truncation(const FieldPolynomial& poly, int degree) {
    std::vector<double> q; // q_j = c_{2j} / (2j)!
    double fact = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        if (k % 2 == 0) q.push_back(poly.c[static_cast<std::size_t>(k)] / fact);
    }
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    SingleCheck out;
    if (q.size() < 2) { // constant: no roots, vacuously on the axis
        out.pass = true;
        return out;
    }
    const auto pr = detail::polynomial_roots(q);
    out.roots = pr.roots;
    out.residual = pr.max_residual;
    out.have_roots = true;
    out.pass = true;
    for (const auto& r : out.roots) {
        const bool neg_real = r.real() < 1e-6 && std::abs(r.imag()) <= 1e-6 * std::abs(r.real());
        if (!neg_real) out.pass = false;
    }
    return out;
}

} // namespace

ZeroReport zero_location_check(const FieldPolynomial& poly) {
    const int deg = poly.degree();
    const auto full = check_even_truncation(poly, deg);
    ZeroReport rep;
    rep.roots = full.roots;
    rep.max_residual = full.residual;
    rep.roots_reliable = full.residual <= 1e-6;
    rep.pass = full.pass;
    if (!rep.roots_reliable) {
        rep.verdict = ZeroVerdict::Inconclusive;
        return rep;
    }
    if (deg >= 4) {
        const auto reduced = check_even_truncation(poly, deg - 2);
        if (reduced.residual > 1e-6 || reduced.pass != full.pass) {
            rep.verdict = ZeroVerdict::Inconclusive;
            return rep;
        }
    }
    rep.verdict = full.pass ? ZeroVerdict::Pass : ZeroVerdict::Fail;
    return rep;
}

bool ridge_check(const FieldPolynomial& poly) {
    const int n = 41;
    std::vector<double> logz(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double h = -2.0 + 4.0 * i / (n - 1);
        const double z = poly.eval(h);
        if (!(z > 0.0)) return false;
        logz[static_cast<std::size_t>(i)] = std::log(z);
    }
    for (int i = 1; i + 1 < n; ++i)
        if (logz[static_cast<std::size_t>(i - 1)] + logz[static_cast<std::size_t>(i + 1)] -
                2.0 * logz[static_cast<std::size_t>(i)] < -1e-10)
            return false;
    return true;
}

} // namespace aqc
