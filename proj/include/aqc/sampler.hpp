#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "aqc/loops.hpp"
#include "aqc/model.hpp"

namespace aqc {

enum class KernelKind { Standard, Periodic };

struct SamplerConfig {
    int P = 16;
    long sweeps = 2000;       // measured sweeps (after burn-in)
    long burn_in = 500;
    int thin = 1;             // record every thin-th sweep
    std::uint64_t seed = 1;
    double step = 0.0;        // proposal scale; 0 = auto-tuned during burn-in
    KernelKind kernel = KernelKind::Standard;

    void validate() const;
};

// Scalar observable of the full configuration.
using Observable = std::function<double(const LoopConfiguration&)>;

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;       // plain sample variance of the series
    double tau_int = 0.5;        // integrated autocorrelation time
    double std_error = 0.0;      // sqrt(2 tau_int variance / n)
    long n = 0;
};

// Initial-positive-sequence estimator of tau_int; SE = sqrt(2 tau var / n).
SampleStats series_stats(const std::vector<double>& series);

struct ChainResult {
    LoopConfiguration final_state;
    std::vector<std::vector<double>> series; // one per observable
    std::vector<SampleStats> stats;
    double acceptance = 0.0;
    double step_used = 0.0;
};

// Metropolis chain targeting exp(-I(omega|xi)) (standard kernel) or
// exp(-I^per(omega)) (periodic kernel) relative to the product free measure.
// Acceptance uses the exact discrete energy difference.  Proposals mix
// single-slice Gaussian steps (80%) with whole-loop shifts (20%).
// Deterministic for fixed (model, config, seed).
ChainResult run_chain(const ModelSpec& model, const SamplerConfig& config,
                      const std::vector<Observable>& observables,
                      const std::optional<BoundaryField>& xi = std::nullopt);

// Connected correlation K_{ll'}(tau_s, tau_t | xi) estimated over a chain.
SampleStats pair_correlation(const ModelSpec& model, const SamplerConfig& config,
                             long site_a, long site_b, int slice_a, int slice_b,
                             const std::optional<BoundaryField>& xi = std::nullopt);

// P_Lambda(beta) = E | (beta |Lambda|)^{-1} sum_l int omega_l |^2 under the
// periodic kernel.
SampleStats order_parameter(const ModelSpec& model, const SamplerConfig& config);

// The squared-average observable underlying P_Lambda on one configuration.
double order_parameter_observable(const LoopConfiguration& config);

struct PressurePoint {
    double h;
    double p;        // p_Lambda(h), relative to the free measure
    double se;       // accumulated standard error of the integration
};

struct PressureResult {
    std::vector<PressurePoint> curve;
    bool anchored = false;     // true when p(0) is absolute (exact oracle)
    double p0 = 0.0;           // anchor value used at h = 0
};

// Thermodynamic integration of dp/dh = (1/|Lambda|) sum_l int <omega_l> dtau
// over the given h-grid (must contain 0); p is |Lambda|^{-1} log of the
// partition function relative to the product free measure.  The h = 0 anchor
// is evaluated by the quadrature oracle when P |Lambda| <= 6, else the curve
// is relative (p(0) = 0).
PressureResult pressure_curve(const ModelSpec& model, const SamplerConfig& config,
                              const std::vector<double>& h_grid);

} // namespace aqc
