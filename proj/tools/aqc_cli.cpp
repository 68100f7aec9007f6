// Command-line front end: model configs in, JSON/CSV artifacts out.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqc/config.hpp"
#include "aqc/criteria.hpp"
#include "aqc/exact.hpp"
#include "aqc/leeyang.hpp"
#include "aqc/loops.hpp"
#include "aqc/sampler.hpp"
#include "aqc/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CertificateFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    fs::path dir;
    bool force = false;

    void write(const std::string& name, const std::string& content) const {
        fs::create_directories(dir);
        const fs::path p = dir / name;
        if (fs::exists(p) && !force)
            throw aqc::ConfigError("output file '" + p.string() +
                                   "' exists; pass --force to overwrite");
        std::ofstream out(p, std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("failed to write '" + p.string() + "'");
    }

    // timestamps live here so the main artifacts stay byte-reproducible
    void metadata(const std::string& subcommand) const {
        const auto now = std::chrono::system_clock::now();
        json meta;
        meta["subcommand"] = subcommand;
        meta["unix_time"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
        fs::create_directories(dir);
        std::ofstream(dir / "run_metadata.json", std::ios::trunc) << meta.dump(2) << "\n";
    }
};

json stats_json(const aqc::SampleStats& s) {
    return {{"mean", s.mean}, {"std_error", s.std_error},
            {"tau_int", s.tau_int}, {"n", s.n}};
}

int find_K_for_truncation(const aqc::ModelSpec& model) {
    // grow the level count until the thermal tail is negligible
    for (int K = 16; K <= 256; K *= 2) {
        const auto spec = aqc::solve_one_site(model.m, model.a, model.potential,
                                              aqc::default_grid(model.m, model.a, model.potential), K);
        const double tail = std::exp(-model.beta * (spec.energies.back() - spec.energies.front()));
        if (tail < 1e-12) return K;
    }
    return 256;
}

int cmd_spectrum(const aqc::ModelSpec& model, const Output& out) {
    const int K = find_K_for_truncation(model);
    const auto grid = aqc::default_grid(model.m, model.a, model.potential);
    const auto spec = aqc::solve_one_site(model.m, model.a, model.potential, grid, K);
    const auto g = aqc::gap(spec);
    json rep;
    rep["levels"] = K;
    rep["grid"] = {{"x_max", grid.x_max}, {"n", grid.n}};
    rep["energies"] = std::vector<double>(spec.energies.begin(),
                                          spec.energies.begin() + std::min<std::size_t>(16, spec.energies.size()));
    rep["gap"] = {{"delta", g.delta}, {"minimizing_level", g.minimizer}};
    rep["rigidity_m_delta_sq"] = model.m * g.delta * g.delta;
    rep["k_up"] = aqc::one_site_correlation_integral(spec, model.beta);
    rep["k_up_bound"] = 1.0 / (model.m * g.delta * g.delta);
    out.write("spectrum.json", rep.dump(2) + "\n");
    return 0;
}

int cmd_criteria(const aqc::ModelSpec& model, const Output& out) {
    const auto rep = aqc::evaluate_criteria(model);
    const auto dob = aqc::dobrushin_bound(model, rep.decomposition.delta, rep.decomposition.b);
    json j;
    j["j_hat_0"] = rep.j_hat_0;
    j["decomposition"] = {{"delta", rep.decomposition.delta},
                          {"b", rep.decomposition.b},
                          {"description", rep.decomposition.description}};
    j["high_temperature_uniqueness"] = {{"holds", rep.high_temp.holds},
                                        {"margin", rep.high_temp.margin}};
    j["gap"] = rep.delta_gap;
    j["rigidity_m_delta_sq"] = rep.rigidity;
    j["quantum_stabilization"] = {{"holds", rep.stabilization.holds},
                                  {"margin", rep.stabilization.margin}};
    if (rep.theta) j["theta_d"] = *rep.theta;
    if (rep.tstar) j["t_star"] = *rep.tstar;
    if (rep.beta_star) j["beta_star"] = *rep.beta_star;
    j["lee_yang"] = rep.lee_yang == aqc::LeeYang::Holds ? "holds"
                    : rep.lee_yang == aqc::LeeYang::Fails ? "fails" : "inconclusive";
    j["dobrushin"] = {{"coefficient", dob.coefficient},
                      {"row_sum", dob.row_sum},
                      {"unique", dob.unique}};
    out.write("criteria.json", j.dump(2) + "\n");
    return 0;
}

int cmd_sample(const aqc::ModelSpec& model, const Output& out, std::uint64_t seed,
               int P, long sweeps, bool periodic) {
    aqc::SamplerConfig cfg;
    cfg.P = P;
    cfg.sweeps = sweeps;
    cfg.burn_in = sweeps / 4;
    cfg.seed = seed;
    cfg.kernel = periodic ? aqc::KernelKind::Periodic : aqc::KernelKind::Standard;

    const long n = model.lattice.site_count();
    std::vector<std::string> names{"site_mean", "site_square", "order_parameter"};
    std::vector<aqc::Observable> obs{
        [n](const aqc::LoopConfiguration& c) {
            double s = 0.0;
            for (const auto& p : c.paths)
                for (double v : p.values) s += v;
            return s / static_cast<double>(n * c.P());
        },
        [n](const aqc::LoopConfiguration& c) {
            double s = 0.0;
            for (const auto& p : c.paths)
                for (double v : p.values) s += v * v;
            return s / static_cast<double>(n * c.P());
        },
        aqc::order_parameter_observable};
    const auto chain = aqc::run_chain(model, cfg, obs);

    std::string csv = "observable,mean,std_error,tau_int,n\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        char line[256];
        std::snprintf(line, sizeof line, "%s,%.12g,%.12g,%.6g,%ld\n", names[i].c_str(),
                      chain.stats[i].mean, chain.stats[i].std_error,
                      chain.stats[i].tau_int, chain.stats[i].n);
        csv += line;
    }
    out.write("sample.csv", csv);

    json ck;
    ck["acceptance"] = chain.acceptance;
    ck["step"] = chain.step_used;
    ck["P"] = P;
    for (const auto& p : chain.final_state.paths) ck["state"].push_back(p.values);
    out.write("checkpoint.json", ck.dump() + "\n");
    return 0;
}

int cmd_verify(const aqc::ModelSpec& model, const Output& out, int P) {
    if (model.nu != 1) throw aqc::ConfigError("verify-inequalities: config key 'nu' must be 1");
    const long D = static_cast<long>(P) * model.lattice.site_count();
    if (D > 6)
        throw aqc::ConfigError("verify-inequalities: P * site count must be <= 6 for the oracle");

    json rep;
    bool all_pass = true;
    auto record = [&](const std::string& name, double margin, bool pass) {
        rep["checks"].push_back({{"name", name}, {"margin", margin}, {"pass", pass}});
        all_pass = all_pass && pass;
    };

    const long n = model.lattice.site_count();
    // FKG: increasing coordinate functionals
    const double fkg = aqc::check_fkg(
        model, P, std::nullopt,
        [](std::span<const double> x) { return x[0]; },
        [](std::span<const double> x) { return x[x.size() - 1]; });
    record("fkg", fkg, fkg >= -1e-9);

    // GKS I & II on odd coordinate factors
    std::vector<aqc::GksFactor> factors;
    factors.push_back({0, 0, [](double t) { return t; }});
    factors.push_back({n - 1, P - 1, [](double t) { return t; }});
    factors.push_back({0, P / 2, [](double t) { return t * t * t; }});
    const auto gks = aqc::check_gks(model, P, factors, 2);
    record("gks1", gks.gks1, gks.gks1 >= -1e-9);
    record("gks2", gks.gks2, gks.gks2 >= -1e-9);

    // Lebowitz: Ursell function of four space-time points
    const std::array<aqc::SpaceTimePoint, 4> pts{{{0, 0}, {0, P - 1}, {n - 1, 0}, {n - 1, P - 1}}};
    const double urs = aqc::check_lebowitz(model, P, pts);
    record("lebowitz_ursell", -urs, urs <= 1e-9);

    // Gaussian domination of the 4-point moment
    const std::vector<aqc::SpaceTimePoint> gd{{0, 0}, {0, 0}, {n - 1, P - 1}, {n - 1, P - 1}};
    const double dom = aqc::check_gaussian_domination(model, P, gd);
    record("gaussian_domination", dom, dom >= -1e-9);

    rep["all_pass"] = all_pass;
    out.write("inequalities.json", rep.dump(2) + "\n");
    return all_pass ? 0 : 2;
}

int cmd_phase_scan(const aqc::ModelSpec& model, const Output& out, std::uint64_t seed,
                   double beta_min, double beta_max, int steps, int P, long sweeps,
                   int threads) {
    json j;
    try {
        const auto bs = aqc::phase_transition_threshold(model);
        if (bs) j["beta_star"] = *bs;
        else j["beta_star"] = nullptr;
    } catch (const std::invalid_argument& e) {
        j["beta_star_error"] = e.what();
    }

    std::vector<double> betas(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        betas[static_cast<std::size_t>(i)] =
            beta_min + (beta_max - beta_min) * i / std::max(1, steps - 1);
    std::vector<aqc::SampleStats> res(betas.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= betas.size()) return;
            aqc::ModelSpec mb = model;
            mb.beta = betas[i];
            aqc::SamplerConfig cfg;
            cfg.P = P;
            cfg.sweeps = sweeps;
            cfg.burn_in = sweeps / 4;
            cfg.seed = seed + i;
            res[i] = aqc::order_parameter(mb, cfg);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, threads); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::string csv = "beta,order_parameter,std_error,tau_int\n";
    for (std::size_t i = 0; i < betas.size(); ++i) {
        char line[160];
        std::snprintf(line, sizeof line, "%.10g,%.12g,%.12g,%.6g\n", betas[i],
                      res[i].mean, res[i].std_error, res[i].tau_int);
        csv += line;
    }
    out.write("phase_scan.csv", csv);
    out.write("phase_scan.json", j.dump(2) + "\n");
    return 0;
}

int cmd_leeyang(const aqc::ModelSpec& model, const Output& out, int P, int degree) {
    const auto cond = aqc::lee_yang_condition(model.potential, model.a);
    // spend the q^D <= 1e8 node budget: deeper rules at low dimension
    const long D = static_cast<long>(P) * model.lattice.site_count();
    const aqc::QuadratureSpec quad = D <= 3 ? aqc::QuadratureSpec{64, 72}
                                   : D == 4 ? aqc::QuadratureSpec{48, 56}
                                   : D == 5 ? aqc::QuadratureSpec{24, 32}
                                            : aqc::QuadratureSpec{13, 21};
    const auto poly = aqc::build_field_polynomial(model, P, degree, quad);
    const auto zr = aqc::zero_location_check(poly);
    json j;
    j["structural_condition"] = cond == aqc::LeeYang::Holds ? "holds"
                                : cond == aqc::LeeYang::Fails ? "fails" : "inconclusive";
    j["coefficients"] = poly.c;
    j["quadrature_rel_disagreement"] = poly.rel_disagreement;
    for (const auto& r : zr.roots)
        j["roots_s"].push_back({{"re", r.real()}, {"im", r.imag()}});
    j["root_residual"] = zr.max_residual;
    j["verdict"] = zr.verdict == aqc::ZeroVerdict::Pass ? "pass"
                   : zr.verdict == aqc::ZeroVerdict::Fail ? "fail" : "inconclusive";
    j["ridge_ok"] = aqc::ridge_check(poly);
    out.write("leeyang.json", j.dump(2) + "\n");
    return zr.roots_reliable ? 0 : 2;
}

int cmd_pressure(const aqc::ModelSpec& model, const Output& out, std::uint64_t seed,
                 int P, long sweeps, double h_max, int h_steps) {
    aqc::SamplerConfig cfg;
    cfg.P = P;
    cfg.sweeps = sweeps;
    cfg.burn_in = sweeps / 4;
    cfg.seed = seed;
    std::vector<double> grid;
    for (int i = -h_steps; i <= h_steps; ++i)
        grid.push_back(h_max * i / h_steps);
    const auto res = aqc::pressure_curve(model, cfg, grid);
    std::string csv = "h,p,std_error\n";
    for (const auto& pt : res.curve) {
        char line[160];
        std::snprintf(line, sizeof line, "%.10g,%.12g,%.12g\n", pt.h, pt.p, pt.se);
        csv += line;
    }
    out.write("pressure.csv", csv);
    json j;
    j["anchored"] = res.anchored;
    j["p_at_zero"] = res.p0;
    out.write("pressure.json", j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anharmonic quantum crystal toolkit"};
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    std::string config_path, out_dir = "out";
    std::uint64_t seed = 12345;
    int threads = 1;
    bool force = false;
    app.add_option("--config", config_path, "model config (JSON)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--threads", threads, "worker threads where applicable");
    app.add_flag("--force", force, "overwrite existing artifacts");

    int P = 8, degree = 8, h_steps = 4, scan_steps = 5;
    long sweeps = 4000;
    double h_max = 1.0, beta_min = 0.5, beta_max = 2.0;
    bool periodic = false;

    auto* sc_spectrum = app.add_subcommand("spectrum", "one-site spectral report");
    auto* sc_criteria = app.add_subcommand("criteria", "uniqueness / stabilization / phase criteria");
    auto* sc_sample = app.add_subcommand("sample", "Metropolis chain estimators");
    sc_sample->add_option("--trotter", P, "slices per loop");
    sc_sample->add_option("--sweeps", sweeps, "measured sweeps");
    sc_sample->add_flag("--periodic", periodic, "use the periodic kernel");
    auto* sc_verify = app.add_subcommand("verify-inequalities", "oracle-backed correlation inequalities");
    sc_verify->add_option("--trotter", P, "slices per loop");
    auto* sc_scan = app.add_subcommand("phase-scan", "order parameter across beta");
    sc_scan->add_option("--beta-min", beta_min);
    sc_scan->add_option("--beta-max", beta_max);
    sc_scan->add_option("--steps", scan_steps);
    sc_scan->add_option("--trotter", P, "slices per loop");
    sc_scan->add_option("--sweeps", sweeps, "measured sweeps");
    auto* sc_leeyang = app.add_subcommand("leeyang", "field-polynomial zero location");
    sc_leeyang->add_option("--trotter", P, "slices per loop");
    sc_leeyang->add_option("--degree", degree, "truncation degree (even, <= 12)");
    auto* sc_pressure = app.add_subcommand("pressure", "pressure curve over a field grid");
    sc_pressure->add_option("--trotter", P, "slices per loop");
    sc_pressure->add_option("--sweeps", sweeps, "measured sweeps");
    sc_pressure->add_option("--h-max", h_max);
    sc_pressure->add_option("--h-steps", h_steps, "grid points each side of 0");

    CLI11_PARSE(app, argc, argv);

    try {
        const aqc::ModelSpec model = aqc::model_from_file(config_path);
        Output out{fs::path(out_dir), force};
        int rc = 0;
        if (sc_spectrum->parsed()) {
            out.metadata("spectrum");
            rc = cmd_spectrum(model, out);
        } else if (sc_criteria->parsed()) {
            out.metadata("criteria");
            rc = cmd_criteria(model, out);
        } else if (sc_sample->parsed()) {
            out.metadata("sample");
            rc = cmd_sample(model, out, seed, P, sweeps, periodic);
        } else if (sc_verify->parsed()) {
            out.metadata("verify-inequalities");
            rc = cmd_verify(model, out, std::min(P, 6));
        } else if (sc_scan->parsed()) {
            out.metadata("phase-scan");
            rc = cmd_phase_scan(model, out, seed, beta_min, beta_max, scan_steps, P,
                                sweeps, threads);
        } else if (sc_leeyang->parsed()) {
            out.metadata("leeyang");
            rc = cmd_leeyang(model, out, P, degree);
        } else if (sc_pressure->parsed()) {
            out.metadata("pressure");
            rc = cmd_pressure(model, out, seed, P, sweeps, h_max, h_steps);
        }
        return rc;
    } catch (const aqc::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const CertificateFailure& e) {
        std::fprintf(stderr, "certificate failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
