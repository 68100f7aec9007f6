#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the energy functionals, the
// quadrature oracle and the Metropolis sampler.  Every kernel exists in a
// scalar reference form and (on x86 with AVX2) a vectorized form; the
// active implementation is chosen once at startup and can be overridden
// for equivalence testing.

namespace aqc::kern {

struct Impl {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]^2
    double (*sum_sq)(const double* a, std::size_t n);
    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    // sum_i V(a[i]) with V(x) = sum_s c[s] * x^(2(s+1)) - h*x
    double (*poly_even_sum)(const double* a, std::size_t n,
                            const double* c, std::size_t nc, double h);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    const char* name;
};

const Impl& scalar_impl();
const Impl& active_impl();            // runtime-dispatched best
bool        avx2_available();
const Impl* avx2_impl();              // nullptr when not compiled in / no CPU support

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active_impl().dot(a.data(), b.data(), a.size());
}
inline double sum_sq(std::span<const double> a) {
    return active_impl().sum_sq(a.data(), a.size());
}
inline double sum(std::span<const double> a) {
    return active_impl().sum(a.data(), a.size());
}
inline double poly_even_sum(std::span<const double> a,
                            std::span<const double> c, double h) {
    return active_impl().poly_even_sum(a.data(), a.size(), c.data(), c.size(), h);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active_impl().axpy(alpha, x.data(), y.data(), x.size());
}

} // namespace aqc::kern
