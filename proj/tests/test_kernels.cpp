#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "aqc/kernels/kernels.hpp"

using namespace aqc::kern;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

} // namespace

TEST_CASE("scalar kernels match naive formulas") {
    const Impl& s = scalar_impl();
    std::mt19937_64 rng(7);
    for (std::size_t n : {0ul, 1ul, 3ul, 8ul, 17ul, 100ul}) {
        const auto a = random_vec(rng, n), b = random_vec(rng, n);
        double dot0 = 0.0, ss0 = 0.0, sum0 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot0 += a[i] * b[i];
            ss0 += a[i] * a[i];
            sum0 += a[i];
        }
        CHECK(rel_diff(s.dot(a.data(), b.data(), n), dot0) < 1e-14);
        CHECK(rel_diff(s.sum_sq(a.data(), n), ss0) < 1e-14);
        CHECK(rel_diff(s.sum(a.data(), n), sum0) < 1e-14);

        const std::vector<double> c{-0.3, 0.7};
        const double h = 0.25;
        double p0 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = a[i] * a[i];
            p0 += c[0] * t + c[1] * t * t - h * a[i];
        }
        CHECK(rel_diff(s.poly_even_sum(a.data(), n, c.data(), c.size(), h), p0) < 1e-13);

        auto y = b;
        s.axpy(0.7, a.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y[i] == doctest::Approx(b[i] + 0.7 * a[i]).epsilon(1e-14));
    }
}

TEST_CASE("avx2 kernels agree with scalar") {
    const Impl* v = avx2_impl();
    if (!v) {
        MESSAGE("AVX2 not available; equivalence vacuous on this host");
        return;
    }
    const Impl& s = scalar_impl();
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng() % 64);
        const auto a = random_vec(rng, n), b = random_vec(rng, n);
        CHECK(rel_diff(v->dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n)) < 1e-12);
        CHECK(rel_diff(v->sum_sq(a.data(), n), s.sum_sq(a.data(), n)) < 1e-12);
        CHECK(rel_diff(v->sum(a.data(), n), s.sum(a.data(), n)) < 1e-12);
        const std::vector<double> c{0.1, -0.4, 0.9};
        CHECK(rel_diff(v->poly_even_sum(a.data(), n, c.data(), c.size(), 0.5),
                       s.poly_even_sum(a.data(), n, c.data(), c.size(), 0.5)) < 1e-12);
        auto y1 = b, y2 = b;
        v->axpy(-1.3, a.data(), y1.data(), n);
        s.axpy(-1.3, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-13));
    }
}

TEST_CASE("dispatch picks a valid implementation") {
    const Impl& act = active_impl();
    CHECK(act.dot != nullptr);
    if (avx2_available())
        CHECK(std::string_view(act.name) == std::string_view(avx2_impl()->name));
    else
        CHECK(std::string_view(act.name) == std::string_view(scalar_impl().name));
}
