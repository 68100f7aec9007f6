#include "aqc/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace aqc {

void GridSpec::validate() const {
    if (x_max <= 0.0) throw std::invalid_argument("grid: x_max must be > 0");
    if (n < 16) throw std::invalid_argument("grid: at least 16 points required");
    if (n % 2 == 0) throw std::invalid_argument("grid: n must be odd so 0 is a grid point");
}

GridSpec default_grid(double m, double a, const PotentialSpec& pot) {
    // coarse search for the potential minimum location
    double xmin = 0.0, best = 0.0;
    for (int i = -1000; i <= 1000; ++i) {
        const double x = i * 0.01;
        const double u = 0.5 * a * x * x + pot.value(x);
        if (u < best) { best = u; xmin = x; }
    }
    const double width = 4.0 * std::pow(2.0 / (m * a), 0.25);
    GridSpec g;
    g.x_max = 4.0 * (std::max(1.0, std::abs(xmin)) + width);
    g.n = 2049;
    return g;
}

double Spectrum::x_matrix_element(int n, int np) const {
    const auto& a_ = states[n];
    const auto& b_ = states[np];
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) s += a_[i] * grid.x(i) * b_[i];
    return s * grid.dx();
}

Spectrum solve_one_site(double m, double a, const std::function<double(double)>& v_of_t,
                        double h, const GridSpec& grid, int K) {
    grid.validate();
    if (K < 1 || K > grid.n / 4)
        throw std::invalid_argument("solve_one_site: require 1 <= K <= N/4");

    const int n = grid.n;
    const double dx = grid.dx();
    const double kin = 1.0 / (2.0 * m * dx * dx);

    std::vector<double> diag(n), off(n - 1, -kin);
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        diag[i] = 2.0 * kin + 0.5 * a * x * x + v_of_t(x * x) - h * x;
    }

    std::vector<double> w(n), z(static_cast<std::size_t>(n) * K);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(K));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_ROW_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, K,
        0.0, &found, w.data(), z.data(), K, isuppz.data());
    if (info != 0 || found < K)
        throw std::runtime_error("solve_one_site: tridiagonal eigensolver failed");

    Spectrum spec;
    spec.grid = grid;
    spec.m = m;
    spec.a = a;
    spec.energies.assign(w.begin(), w.begin() + K);
    spec.states.assign(K, std::vector<double>(n));
    const double norm = 1.0 / std::sqrt(dx);
    for (int k = 0; k < K; ++k) {
        auto& psi = spec.states[k];
        for (int i = 0; i < n; ++i) psi[i] = z[static_cast<std::size_t>(i) * K + k] * norm;
        // fix overall sign: make the first substantial component positive
        for (int i = 0; i < n; ++i)
            if (std::abs(psi[i]) > 1e-8) { if (psi[i] < 0) for (auto& v : psi) v = -v; break; }
    }

    // grid-too-small check on the highest requested state
    double amax = 0.0;
    for (double v : spec.states[K - 1]) amax = std::max(amax, std::abs(v));
    const double edge = std::max(std::abs(spec.states[K - 1].front()),
                                 std::abs(spec.states[K - 1].back()));
    if (edge > 1e-8 * amax)
        throw std::runtime_error("solve_one_site: psi_{K-1} does not vanish at the boundary (grid too small)");
    return spec;
}

Spectrum solve_one_site(double m, double a, const PotentialSpec& pot,
                        const GridSpec& grid, int K) {
    return solve_one_site(m, a, [&pot](double t) { return pot.v_of_t(t); }, pot.h, grid, K);
}

GapResult gap(const Spectrum& spec) {
    if (spec.levels() < 8) throw std::invalid_argument("gap: need at least 8 levels");
    GapResult r{spec.energies[1] - spec.energies[0], 1, false};
    for (int k = 2; k < spec.levels(); ++k) {
        const double d = spec.energies[k] - spec.energies[k - 1];
        if (d < r.delta) { r.delta = d; r.minimizer = k; }
    }
    r.boundary_minimizer = (r.minimizer == spec.levels() - 1);
    return r;
}

double one_site_correlation_integral(const Spectrum& spec, double beta) {
    const int K = spec.levels();
    const double e0 = spec.energies[0];
    if (std::exp(-beta * (spec.energies[K - 1] - e0)) >= 1e-12)
        throw std::runtime_error("one_site_correlation_integral: spectral truncation error too large "
                                 "(increase K or beta)");
    double z = 0.0;
    for (int n = 0; n < K; ++n) z += std::exp(-beta * (spec.energies[n] - e0));

    double acc = 0.0;
    for (int n = 0; n < K; ++n) {
        const double wn = std::exp(-beta * (spec.energies[n] - e0));
        for (int np = 0; np < K; ++np) {
            const double me = spec.x_matrix_element(n, np);
            if (me == 0.0) continue;
            const double de = spec.energies[n] - spec.energies[np];
            if (std::abs(de) < 1e-12) {
                acc += me * me * beta * wn;    // (e^{-b E'} - e^{-b E})/(E - E') -> beta e^{-b E}
            } else {
                const double wnp = std::exp(-beta * (spec.energies[np] - e0));
                acc += me * me * (wnp - wn) / de;
            }
        }
    }
    return acc / z;
}

double matsubara_one_site(const Spectrum& spec, double beta,
                          const std::vector<std::function<double(double)>>& observables,
                          const std::vector<double>& taus) {
    const std::size_t k = observables.size();
    if (taus.size() != k) throw std::invalid_argument("matsubara_one_site: need one tau per observable");
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (taus[i] > taus[i + 1]) throw std::invalid_argument("matsubara_one_site: taus must be ordered");
    if (!taus.empty() && (taus.front() < 0.0 || taus.back() > beta))
        throw std::invalid_argument("matsubara_one_site: taus must lie in [0, beta]");

    const int K = spec.levels();
    const double e0 = spec.energies[0];
    if (std::exp(-beta * (spec.energies[K - 1] - e0)) >= 1e-12)
        throw std::runtime_error("matsubara_one_site: spectral truncation error too large");

    // level-space matrices of the observables
    const int n = spec.grid.n;
    const double dx = spec.grid.dx();
    std::vector<std::vector<double>> fm(k, std::vector<double>(static_cast<std::size_t>(K) * K));
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<double> fx(n);
        for (int i = 0; i < n; ++i) fx[i] = observables[f](spec.grid.x(i));
        for (int p = 0; p < K; ++p)
            for (int q = 0; q < K; ++q) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += spec.states[p][i] * fx[i] * spec.states[q][i];
                fm[f][static_cast<std::size_t>(p) * K + q] = s * dx;
            }
    }

    auto heat = [&](double theta, std::vector<double>& d) {
        for (int p = 0; p < K; ++p) d[p] = std::exp(-theta * (spec.energies[p] - e0));
    };

    // M = F_1 D(t2-t1) F_2 ... F_k D(t1 + beta - t_k); Gamma = tr M / tr D(beta)
    std::vector<double> M(fm[0]), next(static_cast<std::size_t>(K) * K), d(K);
    for (std::size_t f = 0; f < k; ++f) {
        const double theta = (f + 1 < k) ? taus[f + 1] - taus[f] : taus[0] + beta - taus[k - 1];
        heat(theta, d);
        // M <- M * D(theta), column scaling
        for (int p = 0; p < K; ++p)
            for (int q = 0; q < K; ++q) M[static_cast<std::size_t>(p) * K + q] *= d[q];
        if (f + 1 < k) {
            // M <- M * F_{f+1}
            for (int p = 0; p < K; ++p)
                for (int q = 0; q < K; ++q) {
                    double s = 0.0;
                    for (int r = 0; r < K; ++r)
                        s += M[static_cast<std::size_t>(p) * K + r] *
                             fm[f + 1][static_cast<std::size_t>(r) * K + q];
                    next[static_cast<std::size_t>(p) * K + q] = s;
                }
            M.swap(next);
        }
    }
    double tr = 0.0, z = 0.0;
    heat(beta, d);
    for (int p = 0; p < K; ++p) {
        tr += M[static_cast<std::size_t>(p) * K + p];
        z += d[p];
    }
    return tr / z;
}

} // namespace aqc
