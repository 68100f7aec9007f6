#include "aqc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aqc/exact.hpp"

namespace aqc {

void SamplerConfig::validate() const {
    if (P < 2) throw std::invalid_argument("SamplerConfig: P >= 2 required");
    if (sweeps <= 0 || burn_in < 0)
        throw std::invalid_argument("SamplerConfig: sweeps > 0, burn_in >= 0 required");
    if (thin < 1) throw std::invalid_argument("SamplerConfig: thin >= 1 required");
    if (step < 0.0) throw std::invalid_argument("SamplerConfig: step >= 0 required");
}

SampleStats series_stats(const std::vector<double>& series) {
    SampleStats st;
    st.n = static_cast<long>(series.size());
    if (st.n == 0) return st;
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(st.n);
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(st.n);
    st.mean = mean;
    st.variance = var;
    if (var <= 0.0 || st.n < 4) {
        st.tau_int = 0.5;
        st.std_error = std::sqrt(2.0 * st.tau_int * var / static_cast<double>(st.n));
        return st;
    }
    // initial-positive-sequence: sum Gamma_k = gamma_{2k} + gamma_{2k+1} while > 0
    auto gamma = [&](long lag) {
        double g = 0.0;
        for (long t = 0; t + lag < st.n; ++t)
            g += (series[static_cast<std::size_t>(t)] - mean) *
                 (series[static_cast<std::size_t>(t + lag)] - mean);
        return g / static_cast<double>(st.n);
    };
    double tau = 0.5 * gamma(0);
    for (long k = 0;; ++k) {
        const long l0 = 2 * k + 1, l1 = 2 * k + 2;
        if (l1 >= st.n / 2) break;
        const double G = gamma(l0) + gamma(l1);
        if (G <= 0.0) break;
        tau += G;
    }
    st.tau_int = std::max(0.5, tau / var);
    st.std_error = std::sqrt(2.0 * st.tau_int * var / static_cast<double>(st.n));
    return st;
}

namespace {

struct Couplings {
    // per site: list of (other site, J) inside the box
    std::vector<std::vector<std::pair<long, double>>> inside;
    // per site, per slice: sum over outside sites of J * xi (zero without xi)
    std::vector<std::vector<double>> field;
};

Couplings build_couplings(const ModelSpec& eff, int P,
                          const std::optional<BoundaryField>& xi) {
    const long n = eff.lattice.site_count();
    Couplings c;
    c.inside.resize(static_cast<std::size_t>(n));
    c.field.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(P), 0.0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            if (i == j) continue;
            const double Jij = eff.interaction.entry(eff.lattice, i, j);
            if (Jij != 0.0) c.inside[static_cast<std::size_t>(i)].push_back({j, Jij});
        }
    if (xi) {
        const auto& big = xi->lattice;
        ModelSpec wide = eff;
        wide.lattice = big;
        std::vector<long> lam_of_big(static_cast<std::size_t>(big.site_count()), -1);
        for (long i = 0; i < n; ++i)
            lam_of_big[static_cast<std::size_t>(big.index(eff.lattice.coord(i)))] = i;
        for (long bi = 0; bi < big.site_count(); ++bi) {
            const long li = lam_of_big[static_cast<std::size_t>(bi)];
            if (li < 0) continue;
            for (long bj = 0; bj < big.site_count(); ++bj) {
                if (lam_of_big[static_cast<std::size_t>(bj)] >= 0) continue;
                const double Jij = wide.interaction.entry(big, bi, bj);
                if (Jij == 0.0) continue;
                const auto& xp = xi->paths[static_cast<std::size_t>(bj)].values;
                for (int p = 0; p < P; ++p)
                    c.field[static_cast<std::size_t>(li)][static_cast<std::size_t>(p)] +=
                        Jij * xp[static_cast<std::size_t>(p)];
            }
        }
    }
    return c;
}

} // namespace

ChainResult run_chain(const ModelSpec& model, const SamplerConfig& config,
                      const std::vector<Observable>& observables,
                      const std::optional<BoundaryField>& xi) {
    model.validate();
    config.validate();
    if (config.kernel == KernelKind::Periodic && xi)
        throw std::invalid_argument("run_chain: periodic kernel takes no boundary field");

    ModelSpec eff = model;
    if (config.kernel == KernelKind::Periodic)
        eff.lattice.boundary = Boundary::PeriodicTorus;

    const long n = eff.lattice.site_count();
    const int P = config.P;
    const double dt = model.beta / P;
    const Couplings coup = build_couplings(eff, P, xi);

    LoopConfiguration state = zero_configuration(model.lattice, model.beta, P);
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const FreeMeasureSpec free_spec{model.m, model.a, model.beta, P};
    double step = config.step > 0.0 ? config.step : std::sqrt(free_spec.slice_variance());

    auto v_at = [&](double x) { return model.potential.value(x); };
    auto neighbor_sum = [&](long site, int p) {
        double s = coup.field[static_cast<std::size_t>(site)][static_cast<std::size_t>(p)];
        for (const auto& [j, Jij] : coup.inside[static_cast<std::size_t>(site)])
            s += Jij * state.paths[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(p)];
        return s;
    };

    const double kin = 0.5 * model.m / (dt * dt);
    long accepted = 0, proposed = 0;
    auto do_update = [&]() {
        ++proposed;
        const long site = static_cast<long>(unif(rng) * n) % n;
        auto& vals = state.paths[static_cast<std::size_t>(site)].values;
        double dS;
        const bool slice_move = unif(rng) < 0.8;
        int p = 0;
        double delta;
        if (slice_move) {
            p = static_cast<int>(unif(rng) * P) % P;
            delta = step * normal(rng);
            const double x = vals[static_cast<std::size_t>(p)];
            const double xp1 = vals[static_cast<std::size_t>((p + 1) % P)];
            const double xm1 = vals[static_cast<std::size_t>((p - 1 + P) % P)];
            const double xn = x + delta;
            dS = dt * (kin * ((xp1 - xn) * (xp1 - xn) - (xp1 - x) * (xp1 - x) +
                              (xn - xm1) * (xn - xm1) - (x - xm1) * (x - xm1)) +
                       0.5 * model.a * (xn * xn - x * x) + v_at(xn) - v_at(x) -
                       delta * neighbor_sum(site, p));
        } else {
            delta = step * normal(rng) / std::sqrt(static_cast<double>(P));
            dS = 0.0;
            for (int q = 0; q < P; ++q) {
                const double x = vals[static_cast<std::size_t>(q)];
                const double xn = x + delta;
                dS += dt * (0.5 * model.a * (xn * xn - x * x) + v_at(xn) - v_at(x) -
                            delta * neighbor_sum(site, q));
            }
        }
        if (!std::isfinite(dS))
            throw std::runtime_error("run_chain: non-finite energy difference");
        if (dS <= 0.0 || unif(rng) < std::exp(-dS)) {
            ++accepted;
            if (slice_move)
                vals[static_cast<std::size_t>(p)] += delta;
            else
                for (auto& v : vals) v += delta;
        }
    };

    const long updates_per_sweep = n * P;
    // burn-in with step adaptation every 50 sweeps
    long acc_window = 0, prop_window = 0;
    for (long s = 0; s < config.burn_in; ++s) {
        const long a0 = accepted, p0 = proposed;
        for (long u = 0; u < updates_per_sweep; ++u) do_update();
        acc_window += accepted - a0;
        prop_window += proposed - p0;
        if (config.step == 0.0 && (s + 1) % 50 == 0 && prop_window > 0) {
            const double rate = static_cast<double>(acc_window) / prop_window;
            if (rate > 0.5) step *= 1.25;
            else if (rate < 0.3) step *= 0.8;
            acc_window = prop_window = 0;
        }
    }

    accepted = proposed = 0;
    ChainResult result;
    result.series.resize(observables.size());
    for (long s = 0; s < config.sweeps; ++s) {
        for (long u = 0; u < updates_per_sweep; ++u) do_update();
        if (s % config.thin == 0)
            for (std::size_t o = 0; o < observables.size(); ++o)
                result.series[o].push_back(observables[o](state));
    }
    result.acceptance = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
    if (result.acceptance == 0.0 && proposed > 0)
        throw std::runtime_error("run_chain: zero acceptance after burn-in (step too large)");
    result.step_used = step;
    result.final_state = std::move(state);
    for (const auto& ser : result.series) result.stats.push_back(series_stats(ser));
    return result;
}

SampleStats pair_correlation(const ModelSpec& model, const SamplerConfig& config,
                             long site_a, long site_b, int slice_a, int slice_b,
                             const std::optional<BoundaryField>& xi) {
    if (site_a < 0 || site_a >= model.lattice.site_count() || site_b < 0 ||
        site_b >= model.lattice.site_count())
        throw std::invalid_argument("pair_correlation: sites outside the box");
    auto pick = [](long site, int slice) {
        return [site, slice](const LoopConfiguration& c) {
            return c.paths[static_cast<std::size_t>(site)].values[static_cast<std::size_t>(slice)];
        };
    };
    std::vector<Observable> obs{
        [=](const LoopConfiguration& c) {
            return pick(site_a, slice_a)(c) * pick(site_b, slice_b)(c);
        },
        pick(site_a, slice_a), pick(site_b, slice_b)};
    const auto chain = run_chain(model, config, obs, xi);
    const auto& sxy = chain.stats[0];
    const auto& sx = chain.stats[1];
    const auto& sy = chain.stats[2];
    SampleStats st = sxy;
    st.mean = sxy.mean - sx.mean * sy.mean;
    st.std_error = std::sqrt(sxy.std_error * sxy.std_error +
                             sy.mean * sy.mean * sx.std_error * sx.std_error +
                             sx.mean * sx.mean * sy.std_error * sy.std_error);
    return st;
}

double order_parameter_observable(const LoopConfiguration& config) {
    double s = 0.0;
    long count = 0;
    for (const auto& path : config.paths) {
        for (double v : path.values) s += v;
        count += path.P();
    }
    const double avg = s / static_cast<double>(count);
    return avg * avg;
}

SampleStats order_parameter(const ModelSpec& model, const SamplerConfig& config) {
    SamplerConfig cfg = config;
    cfg.kernel = KernelKind::Periodic;
    const auto chain = run_chain(model, cfg, {order_parameter_observable});
    return chain.stats[0];
}

PressureResult pressure_curve(const ModelSpec& model, const SamplerConfig& config,
                              const std::vector<double>& h_grid) {
    auto it0 = std::find_if(h_grid.begin(), h_grid.end(),
                            [](double h) { return h == 0.0; });
    if (it0 == h_grid.end())
        throw std::invalid_argument("pressure_curve: h-grid must include 0");

    std::vector<double> grid = h_grid;
    std::sort(grid.begin(), grid.end());
    const long n_sites = model.lattice.site_count();
    const double dt = model.beta / config.P;

    // dp/dh at each grid point: (1/|Lambda|) sum_l dt sum_p <x_l(p)>
    std::vector<double> deriv(grid.size()), deriv_se(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ModelSpec mh = model;
        mh.potential.h = grid[i];
        SamplerConfig cfg = config;
        cfg.seed = config.seed + i;
        Observable obs = [n_sites, dt](const LoopConfiguration& c) {
            double s = 0.0;
            for (const auto& path : c.paths)
                for (double v : path.values) s += v;
            return dt * s / static_cast<double>(n_sites);
        };
        const auto chain = run_chain(mh, cfg, {obs});
        deriv[i] = chain.stats[0].mean;
        deriv_se[i] = chain.stats[0].std_error;
    }

    PressureResult res;
    if (static_cast<long>(config.P) * n_sites <= 6) {
        ModelSpec m0 = model;
        m0.potential.h = 0.0;
        const auto ex = exact_expectations(m0, config.P, std::nullopt, {});
        res.p0 = std::log(ex.Z) / static_cast<double>(n_sites);
        res.anchored = true;
    }

    const std::size_t i0 = static_cast<std::size_t>(
        std::distance(grid.begin(), std::find(grid.begin(), grid.end(), 0.0)));
    std::vector<double> p(grid.size(), 0.0), se2(grid.size(), 0.0);
    p[i0] = res.p0;
    for (std::size_t i = i0; i + 1 < grid.size(); ++i) {
        const double w = 0.5 * (grid[i + 1] - grid[i]);
        p[i + 1] = p[i] + w * (deriv[i] + deriv[i + 1]);
        se2[i + 1] = se2[i] + w * w * (deriv_se[i] * deriv_se[i] +
                                       deriv_se[i + 1] * deriv_se[i + 1]);
    }
    for (std::size_t i = i0; i > 0; --i) {
        const double w = 0.5 * (grid[i] - grid[i - 1]);
        p[i - 1] = p[i] - w * (deriv[i] + deriv[i - 1]);
        se2[i - 1] = se2[i] + w * w * (deriv_se[i] * deriv_se[i] +
                                       deriv_se[i - 1] * deriv_se[i - 1]);
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        res.curve.push_back({grid[i], p[i], std::sqrt(se2[i])});
    return res;
}

} // namespace aqc
