#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aqc/model.hpp"

using namespace aqc;

TEST_CASE("lattice indexing round-trips") {
    for (int d : {1, 2, 3}) {
        LatticeSpec lat{d, 2, Boundary::Zero};
        for (long i = 0; i < lat.site_count(); ++i) {
            const auto c = lat.coord(i);
            CHECK(lat.index(c) == i);
            for (int v : c) {
                CHECK(v > -lat.L);
                CHECK(v <= lat.L);
            }
        }
    }
}

TEST_CASE("distance is a metric (zero and torus boundary)") {
    std::mt19937_64 rng(3);
    for (Boundary b : {Boundary::Zero, Boundary::PeriodicTorus}) {
        LatticeSpec lat{2, 3, b};
        const long n = lat.site_count();
        for (int rep = 0; rep < 200; ++rep) {
            const long i = static_cast<long>(rng() % n);
            const long j = static_cast<long>(rng() % n);
            const long k = static_cast<long>(rng() % n);
            CHECK(lat.distance(i, j) == doctest::Approx(lat.distance(j, i)));
            CHECK(lat.distance(i, i) == 0.0);
            if (i != j) CHECK(lat.distance(i, j) > 0.0);
            CHECK(lat.distance(i, k) <= lat.distance(i, j) + lat.distance(j, k) + 1e-12);
        }
        if (b == Boundary::PeriodicTorus) {
            // componentwise wrap: max per-axis separation is L
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < n; ++j)
                    CHECK(lat.distance(i, j) <= std::sqrt(2.0) * lat.L + 1e-12);
        }
    }
}

TEST_CASE("torus wrap produces extra nearest neighbors") {
    LatticeSpec zero{1, 2, Boundary::Zero};      // sites -1, 0, 1, 2
    LatticeSpec torus{1, 2, Boundary::PeriodicTorus};
    CHECK(zero.neighbors(0).size() == 1);        // end of the chain
    CHECK(torus.neighbors(0).size() == 2);       // wraps to the far end
    CHECK(torus.distance(0, 3) == doctest::Approx(1.0));
}

TEST_CASE("J_hat_0 closed forms") {
    ModelSpec m;
    m.potential.coeffs = {0.0, 1.0};

    SUBCASE("nearest neighbor: 2 d |J|") {
        m.lattice = {3, 2, Boundary::Zero};
        m.interaction = {InteractionKind::NearestNeighbor, -0.7, 1.0, {}};
        CHECK(j_hat_zero(m) == doctest::Approx(2.0 * 3 * 0.7));
    }
    SUBCASE("explicit matrix: max abs row sum") {
        m.lattice = {1, 1, Boundary::Zero}; // 2 sites
        m.interaction.kind = InteractionKind::ExplicitMatrix;
        m.interaction.matrix = {{0.0, -0.4}, {-0.4, 0.0}};
        CHECK(j_hat_zero(m) == doctest::Approx(0.4));
    }
    SUBCASE("1d exponential decay: geometric series 2/(e^alpha - 1)") {
        m.lattice = {1, 1, Boundary::Zero};
        m.interaction = {InteractionKind::ExponentialDecay, 1.5, 1.0, {}};
        CHECK(j_hat_zero(m) == doctest::Approx(1.5 * 2.0 / (std::exp(1.0) - 1.0)).epsilon(1e-8));
    }
    SUBCASE("1d polynomial decay: zeta-type series") {
        m.lattice = {1, 1, Boundary::Zero};
        m.interaction = {InteractionKind::PolynomialDecay, 1.0, 3.0, {}};
        // 2 sum_{r>=1} (1+r)^-3 = 2 (zeta(3) - 1)
        const double zeta3 = 1.2020569031595942854;
        CHECK(j_hat_zero(m) == doctest::Approx(2.0 * (zeta3 - 1.0)).epsilon(1e-8));
    }
    SUBCASE("polynomial decay at the divergence boundary is rejected") {
        m.lattice = {1, 1, Boundary::Zero};
        m.interaction = {InteractionKind::PolynomialDecay, 1.0, 1.0, {}};
        CHECK_THROWS_AS(m.validate(), std::domain_error);
    }
}

TEST_CASE("weighted norm J_hat_alpha") {
    ModelSpec m;
    m.potential.coeffs = {0.0, 1.0};
    m.lattice = {1, 1, Boundary::Zero};
    m.interaction = {InteractionKind::ExponentialDecay, 1.0, 2.0, {}};
    WeightFamily w; // exponential weights

    SUBCASE("monotone in alpha and above J_hat_0") {
        const double j0 = j_hat_zero(m);
        double prev = j0;
        for (double alpha : {0.2, 0.6, 1.0, 1.5}) {
            const double ja = j_hat_alpha(m, w, alpha);
            CHECK(ja >= prev - 1e-12);
            prev = ja;
        }
        CHECK(j_hat_alpha(m, w, 1e-9) == doctest::Approx(j0).epsilon(1e-6));
    }
    SUBCASE("closed form: effective decay alpha0 - alpha") {
        const double ja = j_hat_alpha(m, w, 0.5);
        CHECK(ja == doctest::Approx(2.0 / (std::exp(1.5) - 1.0)).epsilon(1e-8));
    }
    SUBCASE("divergence raises domain_error") {
        CHECK_THROWS_AS(j_hat_alpha(m, w, 2.0), std::domain_error);
        CHECK_THROWS_AS(j_hat_alpha(m, w, 5.0), std::domain_error);
    }
    SUBCASE("select_alpha returns an admissible grid point") {
        WeightFamily ws;
        ws.alpha_hi = 5.0;
        const double delta = 0.05;
        const double alpha = select_alpha(m, ws, delta);
        CHECK(alpha > 0.0);
        CHECK(j_hat_alpha(m, ws, alpha) - j_hat_zero(m) < delta);
    }
    SUBCASE("polynomial weights shrink eps when needed") {
        ModelSpec mp = m;
        mp.interaction = {InteractionKind::PolynomialDecay, 1.0, 4.0, {}};
        WeightFamily wp{WeightKind::Polynomial, 0.0, 2.0, 1.0};
        const double alpha = select_alpha(mp, wp, 0.05);
        CHECK(alpha > 0.0);
        CHECK(j_hat_alpha(mp, wp, alpha) - j_hat_zero(mp) < 0.05);
    }
}

TEST_CASE("potential algebra") {
    PotentialSpec p;
    p.coeffs = {-1.0, 0.5};
    p.h = 0.3;
    SUBCASE("value/v_of_t identity") {
        for (double x : {-2.0, -0.5, 0.0, 1.3}) {
            CHECK(p.value(x) == doctest::Approx(p.v_of_t(x * x) - p.h * x));
            CHECK(p.v_of_t(x * x) == doctest::Approx(-x * x + 0.5 * x * x * x * x));
        }
    }
    SUBCASE("second derivative central-difference check") {
        for (double x : {-1.5, 0.2, 2.0}) {
            const double eps = 1e-5;
            const double num =
                (p.value(x + eps) - 2.0 * p.value(x) + p.value(x - eps)) / (eps * eps);
            CHECK(p.derivative2(x) == doctest::Approx(num).epsilon(1e-5));
        }
    }
    SUBCASE("validation rejects bad leading coefficient and r < 2") {
        PotentialSpec bad;
        bad.coeffs = {1.0};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        bad.coeffs = {0.0, -1.0};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_CASE("model validation and harmonic stability") {
    ModelSpec m;
    m.lattice = {1, 1, Boundary::Zero};
    m.interaction = {InteractionKind::NearestNeighbor, 0.4, 1.0, {}};
    m.potential.coeffs = {0.0, 1.0};
    m.a = 1.0;
    CHECK_NOTHROW(m.validate());
    CHECK(harmonic_stability(m));     // J_hat_0 = 0.8 < 1
    m.interaction.J = 0.6;            // J_hat_0 = 1.2 > 1
    CHECK_FALSE(harmonic_stability(m));
    m.beta = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
