#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace aqc {

// Sites are points of the box (-L, L]^d; indexing is row-major over the box.
enum class Boundary { Zero, PeriodicTorus };

struct LatticeSpec {
    int d = 1;
    int L = 1;
    Boundary boundary = Boundary::Zero;

    int side() const { return 2 * L; }
    long site_count() const {
        long n = 1;
        for (int j = 0; j < d; ++j) n *= side();
        return n;
    }
    std::vector<int> coord(long index) const;
    long index(const std::vector<int>& c) const;
    // Euclidean distance for zero boundary, torus metric for periodic.
    double distance(long i, long j) const;
    std::vector<long> neighbors(long i) const; // |l-l'| = 1 within the box
    void validate() const;
};

enum class InteractionKind { NearestNeighbor, ExplicitMatrix, ExponentialDecay, PolynomialDecay };

struct InteractionSpec {
    InteractionKind kind = InteractionKind::NearestNeighbor;
    double J = 0.0;                       // intensity for NN / decay kinds
    double alpha0 = 1.0;                  // decay rate / exponent
    std::vector<std::vector<double>> matrix; // ExplicitMatrix only, square

    bool ferroelectric(const LatticeSpec& lat) const;
    double entry(const LatticeSpec& lat, long i, long j) const;
    void validate(const LatticeSpec& lat) const;
};

// V(x) = sum_{s=1..r} b[s-1] x^{2s} - h x, with b[r-1] > 0 (Assumption (A)).
struct PotentialSpec {
    std::vector<double> coeffs; // b^(1), ..., b^(r)
    double h = 0.0;

    int r() const { return static_cast<int>(coeffs.size()); }
    bool even() const { return h == 0.0; }
    double value(double x) const;
    double derivative2(double x) const;  // V''(x), field term drops out
    // v with V(x) = v(x^2) - h x
    double v_of_t(double t) const;
    void validate() const;
};

enum class WeightKind { Exponential, Polynomial };

// w_alpha(l,l') = exp(-alpha |l-l'|)  or  (1 + eps |l-l'|)^(-alpha d)
struct WeightFamily {
    WeightKind kind = WeightKind::Exponential;
    double alpha_lo = 0.0;
    double alpha_hi = 10.0;
    double eps = 1.0;  // polynomial kind only

    double w(double dist, double alpha, int d) const;
};

struct ModelSpec {
    LatticeSpec lattice;
    InteractionSpec interaction;
    PotentialSpec potential;
    double m = 1.0;
    double a = 1.0;
    double beta = 1.0;
    int nu = 1;

    void validate() const;
};

// sup_l sum_{l'} |J_{ll'}|  (Eq.-level row-sum norm; decay kinds sum over
// the infinite lattice with a certified 1e-10 relative tail).
double j_hat_zero(const ModelSpec& model);

// sup_l sum_{l'} |J_{ll'}| / w_alpha(l,l')
double j_hat_alpha(const ModelSpec& model, const WeightFamily& weights, double alpha);

// Largest grid-searched alpha with j_hat_alpha - j_hat_zero < delta.
double select_alpha(const ModelSpec& model, WeightFamily& weights, double delta);

// J_hat_0 < a
bool harmonic_stability(const ModelSpec& model);

} // namespace aqc
