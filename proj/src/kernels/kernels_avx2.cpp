// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "aqc/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace aqc::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double poly_even_sum_avx2(const double* a, std::size_t n,
                          const double* c, std::size_t nc, double h) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d hv = _mm256_set1_pd(h);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(a + i);
        __m256d t = _mm256_mul_pd(x, x);
        __m256d v = _mm256_setzero_pd();
        for (std::size_t k = nc; k-- > 0;)
            v = _mm256_fmadd_pd(v, t, _mm256_set1_pd(c[k]));
        acc = _mm256_add_pd(acc, _mm256_fmsub_pd(v, t, _mm256_mul_pd(hv, x)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double x = a[i];
        const double t = x * x;
        double v = 0.0;
        for (std::size_t k = nc; k-- > 0;) v = v * t + c[k];
        s += v * t - h * x;
    }
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

const Impl avx2{dot_avx2, sum_sq_avx2, sum_avx2, poly_even_sum_avx2,
                axpy_avx2, "avx2"};

} // namespace

const Impl* avx2_impl() {
    return avx2_available() ? &avx2 : nullptr;
}

} // namespace aqc::kern

#else

namespace aqc::kern {
const Impl* avx2_impl() { return nullptr; }
} // namespace aqc::kern

#endif
