#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqc/loops.hpp"
#include "aqc/model.hpp"

namespace aqc {

// Gauss-Hermite tensor quadrature over the D = P * |Lambda| slice variables,
// with nodes scaled to the per-site free-measure covariance so the Gaussian
// part of chi is absorbed exactly.
struct QuadratureSpec {
    int q = 12;          // nodes per dimension
    int q_check = 20;    // certificate order (q, q+8)
    void validate(long D) const;
};

struct QuadratureCertificate {
    double rel_disagreement = 0.0; // max over reported values of |v_q - v_q'| / scale
    bool ok = false;               // rel_disagreement <= 1e-8
};

// A functional of the slice variables, laid out site-major: x[site * P + slice].
using SliceFunctional = std::function<double(std::span<const double>)>;

struct ExactResult {
    double Z = 0.0;                 // partition function relative to the free measure
    std::vector<double> values;     // expectations of the requested functionals
    QuadratureCertificate certificate;
};

// Core engine: expectations under pi_Lambda(.|xi) on the model's box.
// xi (optional) lives on an enlarged box; nullopt means xi = 0.
ExactResult exact_expectations(const ModelSpec& model, int P,
                               const std::optional<BoundaryField>& xi,
                               const std::vector<SliceFunctional>& functionals,
                               const QuadratureSpec& quad = {});

// Monomial prod_i x_{site_i, slice_i}^{power_i}
struct Monomial {
    struct Factor { long site; int slice; int power; };
    std::vector<Factor> factors;
};

ExactResult lattice_approx_moments(const ModelSpec& model, int P,
                                   const std::optional<BoundaryField>& xi,
                                   const std::vector<Monomial>& monomials,
                                   const QuadratureSpec& quad = {});

// pi(fg) - pi(f) pi(g) for coordinatewise nondecreasing f, g.
double check_fkg(const ModelSpec& model, int P, const std::optional<BoundaryField>& xi,
                 const SliceFunctional& f, const SliceFunctional& g,
                 const QuadratureSpec& quad = {});

struct GksMargins {
    double gks1; // E[prod_{i<=n} f_i] (>= 0 expected)
    double gks2; // Cov(prod_{i<=n} f_i, prod_{i>n} f_i) (>= 0 expected)
};
// factors: per-factor (site, slice) plus the 1d function; first n are the
// GKS-I product, the rest join for GKS-II.
struct GksFactor {
    long site;
    int slice;
    std::function<double(double)> f; // odd increasing or even positive increasing
};
GksMargins check_gks(const ModelSpec& model, int P, std::span<const GksFactor> factors,
                     std::size_t n, const QuadratureSpec& quad = {});

struct SpaceTimePoint { long site; int slice; };

// Ursell function U(p1..p4) under pi(.|0); Lebowitz: U <= 0.
double check_lebowitz(const ModelSpec& model, int P,
                      const std::array<SpaceTimePoint, 4>& points,
                      const QuadratureSpec& quad = {});

// Gaussian domination: sum over pairings of pair moments minus the 2n-point
// moment (>= 0 expected); n <= 3.
double check_gaussian_domination(const ModelSpec& model, int P,
                                 std::span<const SpaceTimePoint> points,
                                 const QuadratureSpec& quad = {});

// Dobrushin matrix bound C_{ll'} <= |J_{ll'}| e^{beta delta} / (a + b).
struct DobrushinResult {
    double coefficient;    // e^{beta delta} / (a + b)
    double row_sum;        // J_hat_0 * coefficient
    bool unique;           // row_sum < 1
};
DobrushinResult dobrushin_bound(const ModelSpec& model, double delta, double b);

} // namespace aqc
