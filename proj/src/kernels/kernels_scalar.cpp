#include "aqc/kernels/kernels.hpp"

namespace aqc::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sum_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

double poly_even_sum_scalar(const double* a, std::size_t n,
                            const double* c, std::size_t nc, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a[i];
        const double t = x * x;
        // Horner in t = x^2: c[0]*t + c[1]*t^2 + ... + c[nc-1]*t^nc
        double v = 0.0;
        for (std::size_t k = nc; k-- > 0;) v = v * t + c[k];
        s += v * t - h * x;
    }
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

} // namespace

const Impl& scalar_impl() {
    static const Impl impl{dot_scalar, sum_sq_scalar, sum_scalar,
                           poly_even_sum_scalar, axpy_scalar, "scalar"};
    return impl;
}

} // namespace aqc::kern
