#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aqc/loops.hpp"

using namespace aqc;

namespace {

LoopPath random_path(std::mt19937_64& rng, double beta, int P) {
    std::normal_distribution<double> n(0.0, 1.0);
    LoopPath p;
    p.beta = beta;
    p.values.resize(static_cast<std::size_t>(P));
    for (auto& v : p.values) v = n(rng);
    return p;
}

} // namespace

TEST_CASE("free measure spectrum and variance identities") {
    FreeMeasureSpec s{1.3, 0.8, 2.0, 8};
    const double dt = s.beta / s.P;
    // lambda_0 = a, Nyquist mode maximal
    CHECK(s.lambda_k(0) == doctest::Approx(0.8));
    CHECK(s.lambda_k(4) == doctest::Approx(1.3 / (dt * dt) * 4.0 + 0.8));
    double sum = 0.0;
    for (int k = 0; k < s.P; ++k) sum += 1.0 / s.lambda_k(k);
    CHECK(s.slice_variance() == doctest::Approx(sum / s.beta).epsilon(1e-12));
    CHECK(s.covariance(0, 0) == doctest::Approx(s.slice_variance()).epsilon(1e-12));
    CHECK(s.covariance(1, 5) == doctest::Approx(s.covariance(5, 1)).epsilon(1e-12));
    CHECK(s.covariance(0, 2) == doctest::Approx(s.covariance(3, 5)).epsilon(1e-12)); // stationarity
}

TEST_CASE("free action equals the half quadratic form of the chain precision") {
    std::mt19937_64 rng(5);
    for (int P : {2, 3, 4, 7}) {
        const double m = 0.9, a = 1.4, beta = 1.7;
        const auto path = random_path(rng, beta, P);
        const double dt = beta / P;
        const double kin = m / (dt * dt);
        // B = dt [ kin * L_cycle + a I ], S = x^T B x / 2
        double s = 0.0;
        for (int p = 0; p < P; ++p) {
            const double x = path.values[static_cast<std::size_t>(p)];
            const double xn = path.values[static_cast<std::size_t>((p + 1) % P)];
            s += dt * (0.5 * (2.0 * kin + a) * x * x - kin * x * xn);
        }
        CHECK(free_action(path, m, a) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("mode power satisfies Parseval") {
    std::mt19937_64 rng(9);
    const auto path = random_path(rng, 2.0, 12);
    double modes = 0.0, slices = 0.0;
    for (int k = 0; k < 12; ++k) modes += mode_power(path, k);
    for (double v : path.values) slices += v * v;
    CHECK(modes == doctest::Approx(path.dt() * slices).epsilon(1e-10));
}

TEST_CASE("sampled modes have variance 1/lambda_k") {
    FreeMeasureSpec s{1.0, 1.0, 1.0, 16};
    std::mt19937_64 rng(42);
    const int N = 20000;
    std::vector<double> acc(16, 0.0), acc2(16, 0.0);
    for (int i = 0; i < N; ++i) {
        const auto p = sample_free_loop(s, rng);
        for (int k = 0; k < 16; ++k) {
            const double w = mode_power(p, k);
            acc[static_cast<std::size_t>(k)] += w;
            acc2[static_cast<std::size_t>(k)] += w * w;
        }
    }
    for (int k = 0; k < 16; ++k) {
        const double mean = acc[static_cast<std::size_t>(k)] / N;
        const double var = acc2[static_cast<std::size_t>(k)] / N - mean * mean;
        const double se = std::sqrt(var / N);
        CHECK(std::abs(mean - 1.0 / s.lambda_k(k)) < 5.0 * se + 1e-12);
    }
}

TEST_CASE("sampled slices match the covariance oracle") {
    FreeMeasureSpec s{1.0, 2.0, 1.5, 8};
    std::mt19937_64 rng(7);
    const int N = 40000;
    double c00 = 0.0, c03 = 0.0;
    for (int i = 0; i < N; ++i) {
        const auto p = sample_free_loop(s, rng);
        c00 += p.values[0] * p.values[0];
        c03 += p.values[0] * p.values[3];
    }
    c00 /= N;
    c03 /= N;
    CHECK(c00 == doctest::Approx(s.covariance(0, 0)).epsilon(0.05));
    CHECK(c03 == doctest::Approx(s.covariance(0, 3)).epsilon(0.1));
}

TEST_CASE("energy: product structure at J=0 and pair term") {
    ModelSpec m;
    m.lattice = {1, 1, Boundary::Zero};
    m.interaction = {InteractionKind::NearestNeighbor, 0.0, 1.0, {}};
    m.potential.coeffs = {0.5, 0.25};
    m.beta = 2.0;

    LoopConfiguration c = zero_configuration(m.lattice, m.beta, 4);
    std::mt19937_64 rng(1);
    for (auto& p : c.paths) p = random_path(rng, m.beta, 4);

    // J=0: sum of one-site potential integrals
    double expect = 0.0;
    for (const auto& p : c.paths)
        for (double v : p.values)
            expect += p.dt() * (m.potential.v_of_t(v * v));
    CHECK(energy(c, m) == doctest::Approx(expect).epsilon(1e-12));

    // switching J on subtracts J * L2 pairing
    m.interaction.J = 0.3;
    double pair = 0.0;
    for (int p = 0; p < 4; ++p)
        pair += c.paths[0].dt() * c.paths[0].values[static_cast<std::size_t>(p)] *
                c.paths[1].values[static_cast<std::size_t>(p)];
    CHECK(energy(c, m) == doctest::Approx(expect - 0.3 * pair).epsilon(1e-12));
}

TEST_CASE("energy symmetries: sign flip for even V") {
    ModelSpec m;
    m.lattice = {1, 2, Boundary::Zero};
    m.interaction = {InteractionKind::NearestNeighbor, 0.2, 1.0, {}};
    m.potential.coeffs = {-1.0, 1.0};
    m.beta = 1.0;
    std::mt19937_64 rng(3);
    LoopConfiguration c = zero_configuration(m.lattice, m.beta, 6);
    for (auto& p : c.paths) p = random_path(rng, m.beta, 6);
    LoopConfiguration flipped = c;
    for (auto& p : flipped.paths)
        for (auto& v : p.values) v = -v;
    CHECK(energy(c, m) == doctest::Approx(energy(flipped, m)).epsilon(1e-12));

    // field term breaks the symmetry
    m.potential.h = 0.4;
    CHECK(energy(c, m) != doctest::Approx(energy(flipped, m)).epsilon(1e-12));
}

TEST_CASE("boundary energy: zero field reduces to the interior energy") {
    ModelSpec m;
    m.lattice = {1, 1, Boundary::Zero};
    m.interaction = {InteractionKind::NearestNeighbor, 0.5, 1.0, {}};
    m.potential.coeffs = {0.0, 1.0};
    m.beta = 1.0;
    std::mt19937_64 rng(8);
    LoopConfiguration c = zero_configuration(m.lattice, m.beta, 4);
    for (auto& p : c.paths) p = random_path(rng, m.beta, 4);

    BoundaryField xi;
    xi.lattice = {1, 2, Boundary::Zero}; // enlarged box
    xi.paths.assign(static_cast<std::size_t>(xi.lattice.site_count()),
                    zero_configuration(xi.lattice, m.beta, 4).paths[0]);
    CHECK(energy_with_boundary(c, xi, m) == doctest::Approx(energy(c, m)).epsilon(1e-12));

    // put a unit loop on the outside neighbor of the right edge
    // interior sites of the big box are coords 0,1; big box spans -1..2
    const long right_out = xi.lattice.index({2});
    for (auto& v : xi.paths[static_cast<std::size_t>(right_out)].values) v = 1.0;
    const long edge = m.lattice.index({1});
    double pair = 0.0;
    for (double v : c.paths[static_cast<std::size_t>(edge)].values)
        pair += c.paths[0].dt() * v * 1.0;
    CHECK(energy_with_boundary(c, xi, m) ==
          doctest::Approx(energy(c, m) - 0.5 * pair).epsilon(1e-12));
}

TEST_CASE("periodic energy adds the wrap bond") {
    ModelSpec m;
    m.lattice = {1, 2, Boundary::Zero}; // 4 sites
    m.interaction = {InteractionKind::NearestNeighbor, 0.7, 1.0, {}};
    m.potential.coeffs = {0.0, 1.0};
    m.beta = 1.0;
    std::mt19937_64 rng(13);
    LoopConfiguration c = zero_configuration(m.lattice, m.beta, 3);
    for (auto& p : c.paths) p = random_path(rng, m.beta, 3);
    double wrap = 0.0;
    for (int p = 0; p < 3; ++p)
        wrap += c.paths[0].dt() * c.paths[0].values[static_cast<std::size_t>(p)] *
                c.paths[3].values[static_cast<std::size_t>(p)];
    CHECK(energy_periodic(c, m) == doctest::Approx(energy(c, m) - 0.7 * wrap).epsilon(1e-12));
}

TEST_CASE("weighted norm decreases with distance weight") {
    ModelSpec m;
    LatticeSpec lat{1, 3, Boundary::Zero};
    WeightFamily w;
    std::mt19937_64 rng(2);
    LoopConfiguration c = zero_configuration(lat, 1.0, 4);
    for (auto& p : c.paths) p = random_path(rng, 1.0, 4);
    const double n_small = norm_alpha(c, w, 0.5, lat.index({0}));
    const double n_large = norm_alpha(c, w, 2.0, lat.index({0}));
    CHECK(n_small > n_large);
    CHECK(n_large > 0.0);
}

TEST_CASE("Holder seminorm uses the circle metric") {
    LoopPath p;
    p.beta = 1.0;
    p.values = {0.0, 1.0, 0.0, 0.0};
    const double sigma = 0.25;
    // adjacent-slice distance dominates: |1 - 0| / (1/4)^sigma
    const double expect = 1.0 / std::pow(0.25, sigma);
    CHECK(holder_seminorm(p, sigma) == doctest::Approx(expect).epsilon(1e-12));
    // constant path has zero seminorm
    LoopPath flat;
    flat.beta = 1.0;
    flat.values = {2.0, 2.0, 2.0, 2.0};
    CHECK(holder_seminorm(flat, sigma) == 0.0);
}

TEST_CASE("logarithmic growth check") {
    LatticeSpec lat{1, 4, Boundary::Zero};
    LoopConfiguration c = zero_configuration(lat, 1.0, 4);
    // all-zero configuration passes any growth bound
    CHECK(lebowitz_presutti_check(c, 0.5, 0.25, lat.index({0}), {lat.index({0})}));
    // blow up one far site beyond the log envelope
    for (auto& v : c.paths.back().values) v = 100.0;
    CHECK_FALSE(lebowitz_presutti_check(c, 0.5, 0.25, lat.index({0}), {lat.index({0})}));
}

TEST_CASE("configuration validation") {
    LatticeSpec lat{1, 1, Boundary::Zero};
    LoopConfiguration c = zero_configuration(lat, 1.0, 4);
    CHECK_NOTHROW(c.validate());
    c.paths[0].values.resize(3); // mismatched P
    CHECK_THROWS(c.validate());
}
