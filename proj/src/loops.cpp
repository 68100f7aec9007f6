#include "aqc/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aqc/kernels/kernels.hpp"

namespace aqc {

void LoopConfiguration::validate() const {
    if (paths.empty()) throw std::invalid_argument("configuration: no paths");
    if (static_cast<long>(paths.size()) != lattice.site_count())
        throw std::invalid_argument("configuration: path count does not match site count");
    const double b = paths.front().beta;
    const int P = paths.front().P();
    for (const auto& p : paths) {
        if (p.beta != b || p.P() != P)
            throw std::invalid_argument("configuration: (beta, P) must be uniform");
        if (p.P() < 2) throw std::invalid_argument("configuration: P >= 2 required");
    }
}

LoopConfiguration zero_configuration(const LatticeSpec& lat, double beta, int P) {
    LoopConfiguration c;
    c.lattice = lat;
    c.paths.assign(static_cast<std::size_t>(lat.site_count()),
                   LoopPath{beta, std::vector<double>(P, 0.0)});
    return c;
}

double FreeMeasureSpec::lambda_k(int k) const {
    const double ratio = static_cast<double>(P) / beta;
    return m * ratio * ratio * 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * k / P)) + a;
}

double FreeMeasureSpec::slice_variance() const {
    double s = 0.0;
    for (int k = 0; k < P; ++k) s += 1.0 / lambda_k(k);
    return s / beta;
}

double FreeMeasureSpec::covariance(int p, int q) const {
    double s = 0.0;
    for (int k = 0; k < P; ++k)
        s += std::cos(2.0 * std::numbers::pi * k * (p - q) / P) / lambda_k(k);
    return s / beta;
}

LoopPath sample_free_loop(const FreeMeasureSpec& spec, std::mt19937_64& rng) {
    if (spec.P < 2) throw std::invalid_argument("sample_free_loop: P >= 2 required");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int P = spec.P;
    LoopPath path{spec.beta, std::vector<double>(P, 0.0)};

    const double pref = 1.0 / std::sqrt(spec.beta);
    // zero mode
    {
        const double g = gauss(rng) / std::sqrt(spec.lambda_k(0));
        for (int p = 0; p < P; ++p) path.values[p] += pref * g;
    }
    // Nyquist mode (P even)
    if (P % 2 == 0) {
        const double g = gauss(rng) / std::sqrt(spec.lambda_k(P / 2));
        for (int p = 0; p < P; ++p) path.values[p] += pref * (p % 2 == 0 ? g : -g);
    }
    // paired modes
    for (int k = 1; k < (P + 1) / 2; ++k) {
        const double amp = std::sqrt(2.0 / spec.lambda_k(k));
        const double gc = gauss(rng), gs = gauss(rng);
        for (int p = 0; p < P; ++p) {
            const double th = 2.0 * std::numbers::pi * k * p / P;
            path.values[p] += pref * amp * (gc * std::cos(th) + gs * std::sin(th));
        }
    }
    return path;
}

double mode_power(const LoopPath& path, int k) {
    const int P = path.P();
    double re = 0.0, im = 0.0;
    for (int p = 0; p < P; ++p) {
        const double th = 2.0 * std::numbers::pi * k * p / P;
        re += path.values[p] * std::cos(th);
        im -= path.values[p] * std::sin(th);
    }
    const double scale = std::sqrt(path.beta) / P;
    return (re * re + im * im) * scale * scale;
}

double free_action(const LoopPath& path, double m, double a) {
    const int P = path.P();
    const double dt = path.dt();
    double s = 0.0;
    for (int p = 0; p < P; ++p) {
        const double d = path.values[(p + 1) % P] - path.values[p];
        s += 0.5 * m * d * d / (dt * dt) + 0.5 * a * path.values[p] * path.values[p];
    }
    return s * dt;
}

namespace {

double potential_integral(const LoopPath& path, const PotentialSpec& pot) {
    return path.dt() * kern::poly_even_sum(path.values, pot.coeffs, pot.h);
}

double pairing(const LoopPath& u, const LoopPath& v) {
    return u.dt() * kern::dot(u.values, v.values);
}

} // namespace

double energy(const LoopConfiguration& config, const ModelSpec& model) {
    config.validate();
    if (static_cast<long>(config.paths.size()) != model.lattice.site_count())
        throw std::invalid_argument("energy: configuration does not match the model box");
    const long n = model.lattice.site_count();
    double e = 0.0;
    for (long i = 0; i < n; ++i) {
        e += potential_integral(config.paths[i], model.potential);
        for (long j = i + 1; j < n; ++j) {
            const double Jij = model.interaction.entry(model.lattice, i, j);
            if (Jij != 0.0) e -= Jij * pairing(config.paths[i], config.paths[j]);
        }
    }
    return e;
}

double energy_with_boundary(const LoopConfiguration& config, const BoundaryField& xi,
                            const ModelSpec& model) {
    double e = energy(config, model);

    // map interior sites of the enlarged box back to Lambda by coordinates
    const auto& lam = config.lattice;
    const auto& big = xi.lattice;
    ModelSpec wide = model;
    wide.lattice = big;
    std::vector<long> lam_of_big(static_cast<std::size_t>(big.site_count()), -1);
    for (long i = 0; i < lam.site_count(); ++i)
        lam_of_big[static_cast<std::size_t>(big.index(lam.coord(i)))] = i;

    for (long bi = 0; bi < big.site_count(); ++bi) {
        const long li = lam_of_big[static_cast<std::size_t>(bi)];
        if (li < 0) continue;
        for (long bj = 0; bj < big.site_count(); ++bj) {
            if (lam_of_big[static_cast<std::size_t>(bj)] >= 0) continue; // inside Lambda
            const double Jij = wide.interaction.entry(big, bi, bj);
            if (Jij != 0.0)
                e -= Jij * pairing(config.paths[li], xi.paths[static_cast<std::size_t>(bj)]);
        }
    }
    return e;
}

double energy_periodic(const LoopConfiguration& config, const ModelSpec& model) {
    ModelSpec torus = model;
    torus.lattice.boundary = Boundary::PeriodicTorus;
    return energy(config, torus);
}

double norm_alpha(const LoopConfiguration& config, const WeightFamily& weights,
                  double alpha, long anchor) {
    double s = 0.0;
    for (long i = 0; i < static_cast<long>(config.paths.size()); ++i) {
        const auto& p = config.paths[static_cast<std::size_t>(i)];
        const double l2sq = p.dt() * kern::sum_sq(p.values);
        s += l2sq * weights.w(config.lattice.distance(anchor, i), alpha, config.lattice.d);
    }
    return std::sqrt(s);
}

double holder_seminorm(const LoopPath& path, double sigma) {
    if (sigma <= 0.0 || sigma >= 0.5)
        throw std::invalid_argument("holder_seminorm: sigma in (0, 1/2) required");
    const int P = path.P();
    const double dt = path.dt();
    double best = 0.0;
    for (int p = 0; p < P; ++p)
        for (int q = p + 1; q < P; ++q) {
            const double tau = std::min((q - p) * dt, path.beta - (q - p) * dt);
            best = std::max(best, std::abs(path.values[p] - path.values[q]) /
                                      std::pow(tau, sigma));
        }
    return best;
}

bool lebowitz_presutti_check(const LoopConfiguration& config, double b, double sigma,
                             long anchor, const std::vector<long>& core_sites) {
    for (long i = 0; i < static_cast<long>(config.paths.size()); ++i) {
        if (std::find(core_sites.begin(), core_sites.end(), i) != core_sites.end()) continue;
        const auto& p = config.paths[static_cast<std::size_t>(i)];
        double sup = 0.0;
        for (double v : p.values) sup = std::max(sup, std::abs(v));
        const double holder = sup + holder_seminorm(p, sigma);
        if (holder * holder > b * std::log(1.0 + config.lattice.distance(anchor, i)) + 1e-12)
            return false;
    }
    return true;
}

} // namespace aqc
