#pragma once

#include <functional>
#include <vector>

#include "aqc/model.hpp"

namespace aqc {

struct GridSpec {
    double x_max = 10.0;  // half-width; grid symmetric about 0
    int n = 2049;         // odd, so 0 is a grid point

    double dx() const { return 2.0 * x_max / (n - 1); }
    double x(int i) const { return -x_max + i * dx(); }
    void validate() const;
};

// Default grid for a given model: covers well minima plus Gaussian tails.
GridSpec default_grid(double m, double a, const PotentialSpec& pot);

struct Spectrum {
    std::vector<double> energies;               // E_0 < E_1 < ...
    std::vector<std::vector<double>> states;    // psi_n on the grid, L2-normalized with dx
    GridSpec grid;
    double m = 1.0, a = 1.0;

    int levels() const { return static_cast<int>(energies.size()); }
    // <psi_n | x | psi_n'> by grid quadrature
    double x_matrix_element(int n, int np) const;
};

// Lowest K eigenpairs of H = -(1/2m) d^2/dx^2 + (a/2) x^2 + v(x^2) - h x
// by central differences on the grid.  The anharmonic part is passed as a
// callable in t = x^2 so convex-envelope comparison potentials fit too.
Spectrum solve_one_site(double m, double a, const std::function<double(double)>& v_of_t,
                        double h, const GridSpec& grid, int K);
Spectrum solve_one_site(double m, double a, const PotentialSpec& pot,
                        const GridSpec& grid, int K);

// min_n (E_n - E_{n-1}); flags a boundary minimizer (suggests K too small).
struct GapResult {
    double delta;
    int minimizer;          // n with E_n - E_{n-1} minimal
    bool boundary_minimizer;
};
GapResult gap(const Spectrum& spec);

// K^up = int_0^beta K(tau, tau') dtau', via the double spectral sum.
double one_site_correlation_integral(const Spectrum& spec, double beta);

// Matsubara function Gamma_{F_1..F_n}(tau_1..tau_n) for one site, each F a
// grid function of x evaluated by spectral insertion.  taus must be ordered.
double matsubara_one_site(const Spectrum& spec, double beta,
                          const std::vector<std::function<double(double)>>& observables,
                          const std::vector<double>& taus);

} // namespace aqc
