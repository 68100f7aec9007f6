#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aqc/model.hpp"
#include "aqc/spectral.hpp"

namespace aqc {

// Split V = V1 + V2 with V1 convex (curvature bound b) and V2 of bounded
// oscillation delta, feeding the high-temperature uniqueness criterion.
struct Decomposition {
    double delta = 0.0;  // oscillation of V2
    double b = 0.0;      // inf V1'' (clipped at -a by the caller's model)
    std::string description;
};

struct PredicateResult {
    bool holds = false;
    double margin = 0.0; // sign convention documented per operation
};

// Convex-envelope split on the solver grid.  Convex potentials return
// delta = 0 and b = inf V''; non-convex ones get the lower-hull envelope
// (b = 0) with delta the largest envelope gap.
Decomposition decompose_potential(const PotentialSpec& pot, const GridSpec& grid, double a);

// e^{beta delta} < (a + b) / J_hat_0; margin is beta delta - log((a+b)/J_hat_0)
// (negative margin = unique).
PredicateResult high_temp_uniqueness(const Decomposition& decomp, const ModelSpec& model);

// m Delta^2 > J_hat_0; margin is m Delta^2 - J_hat_0.
PredicateResult quantum_stabilization(const ModelSpec& model, const Spectrum& spectrum);

// Spectrum of the comparison Hamiltonian: v is the potential itself when
// convex in t = x^2, else its convex envelope in t.
Spectrum comparison_spectrum(const ModelSpec& model, int K);

// theta_d = (2 pi)^{-d} int dp / sum_j (1 - cos p_j), d >= 3.
// Primary method: Bessel representation int_0^inf [e^{-t} I_0(t)]^d dt.
double theta_d(int d);
// Cross-check: midpoint tensor quadrature (origin excised by the grid
// offset) with Richardson extrapolation; d = 3 or 4 only.
double theta_d_lattice_sum(int d);

// Scaled modified Bessel function e^{-t} I_0(t) (used by theta_d; exposed
// for testing).
double bessel_i0_scaled(double t);

// The implicit DLS function: f(u tanh u) = tanh(u)/u, f(0) = 1.
double f_dls(double s);

// phi(t, alpha) = alpha t f(t / alpha); increasing in t with sup alpha^2.
double phi(double t, double alpha);

// Unique root t* > 0 of a + 2 b^(1) + Phi(t) = 0 with
// Phi(t) = sum_{s>=2} (2s)!/(2^{s-1}(s-1)!) b^(s) t^{s-1}.
double t_star(const PotentialSpec& pot, double a);
double phi_series(const PotentialSpec& pot, double t); // Phi(t) itself

// beta* solving 2 theta_d m / J = phi(beta, 4 m t*), present iff
// J > theta_d / (8 m t*^2); requires nearest-neighbor interaction, d >= 3.
std::optional<double> phase_transition_threshold(const ModelSpec& model);

enum class LeeYang { Holds, Fails, Inconclusive };

// Exact iff for v cubic in t (and the quartic-in-x case); a sufficient-only
// structural check otherwise.
LeeYang lee_yang_condition(const PotentialSpec& pot, double a);

struct CriteriaReport {
    double j_hat_0;
    Decomposition decomposition;
    double delta_gap;       // spectral gap Delta of the comparison Hamiltonian
    double rigidity;        // m Delta^2
    std::optional<double> theta;   // d >= 3 only
    std::optional<double> tstar;   // admissible (ub) potentials only
    std::optional<double> beta_star;
    PredicateResult high_temp;
    PredicateResult stabilization;
    LeeYang lee_yang;
};

CriteriaReport evaluate_criteria(const ModelSpec& model);

} // namespace aqc
