#pragma once

#include <random>
#include <vector>

#include "aqc/model.hpp"

namespace aqc {

// One discretized temperature loop: values at tau_p = p beta / P, periodic.
struct LoopPath {
    double beta = 1.0;
    std::vector<double> values; // size P >= 2

    int P() const { return static_cast<int>(values.size()); }
    double dt() const { return beta / P(); }
};

struct LoopConfiguration {
    LatticeSpec lattice;
    std::vector<LoopPath> paths; // one per site, shared (beta, P)

    double beta() const { return paths.front().beta; }
    int P() const { return paths.front().P(); }
    void validate() const;
};

LoopConfiguration zero_configuration(const LatticeSpec& lat, double beta, int P);

// Gaussian chain measure of the P-slice free loop.  The mode eigenvalues are
// those of the discrete cycle Laplacian, lambda_k = m (P/beta)^2 2(1-cos(2 pi k/P)) + a,
// so the sampler is the exact Gaussian of the Trotter chain.
struct FreeMeasureSpec {
    double m = 1.0, a = 1.0, beta = 1.0;
    int P = 2;

    double lambda_k(int k) const;
    // Var(x_p) = (1/beta) sum_k 1/lambda_k
    double slice_variance() const;
    // Cov(x_p, x_q), discrete periodic OU covariance
    double covariance(int p, int q) const;
};

// Exact sample in Fourier modes.  Mode convention (unitary DFT scaled by
// sqrt(beta/P)): y_k = sqrt(beta)/P sum_p x_p e^{-2 pi i k p/P} has
// E|y_k|^2 = 1/lambda_k.
LoopPath sample_free_loop(const FreeMeasureSpec& spec, std::mt19937_64& rng);

// Mode coefficient |y_k|^2 extracted from a path (for sampler verification).
double mode_power(const LoopPath& path, int k);

// Gaussian chain action S_free = (beta/P) sum_p [ m/2 ((x_{p+1}-x_p)/(beta/P))^2 + a/2 x_p^2 ].
double free_action(const LoopPath& path, double m, double a);

// I_Lambda(omega) of the interacting paths; L2 pairings and int V dtau use
// the periodic rectangle rule with weight beta/P.
double energy(const LoopConfiguration& config, const ModelSpec& model);

// I_Lambda(omega | xi) with xi fixed on the complement (zero-boundary model:
// xi lives on the sites of an enlarged box surrounding Lambda).
struct BoundaryField {
    LatticeSpec lattice;            // the enlarged box containing Lambda
    std::vector<LoopPath> paths;    // one per site of the enlarged box
};
double energy_with_boundary(const LoopConfiguration& config, const BoundaryField& xi,
                            const ModelSpec& model);

// Periodic-kernel energy I^per: interaction evaluated with the torus metric.
double energy_periodic(const LoopConfiguration& config, const ModelSpec& model);

// ||omega||_alpha with anchor l0 (Eq.-style weighted norm, discrete L2 slices).
double norm_alpha(const LoopConfiguration& config, const WeightFamily& weights,
                  double alpha, long anchor);

// sup_{p != q} |x_p - x_q| / |tau_p - tau_q|_beta^sigma  (circle metric)
double holder_seminorm(const LoopPath& path, double sigma);

// Lebowitz-Presutti-type growth check: outside the core box,
// |xi_l|_{C^sigma}^2 <= b log(1 + |l - l0|).
bool lebowitz_presutti_check(const LoopConfiguration& config, double b, double sigma,
                             long anchor, const std::vector<long>& core_sites);

} // namespace aqc
