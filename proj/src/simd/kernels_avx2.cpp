// Compiled with -mavx2 (no FMA, so every lane rounds exactly like the scalar
// reference). Only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux/kernels.hpp"

namespace darboux::simd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hmax(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

inline __m256d norm_pd(const double* x, const double* y, const double* z, std::size_t i) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    __m256d s = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy));
    s = _mm256_add_pd(s, _mm256_mul_pd(vz, vz));
    return _mm256_sqrt_pd(s);
}

double max_unit_deviation(const double* x, const double* y, const double* z, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = abs_pd(_mm256_sub_pd(norm_pd(x, y, z, i), one));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, d);
    }
    if (_mm256_movemask_pd(nan_seen)) return kNaN;
    double r = hmax(m);
    for (; i < n; ++i) {
        const double d = std::abs(std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]) - 1.0);
        if (std::isnan(d)) return kNaN;
        r = std::max(r, d);
    }
    return r;
}

void norms(const double* x, const double* y, const double* z, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, norm_pd(x, y, z, i));
    for (; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
}

void residuals(const double* a, const double* b, double* abs_out, double* rel_out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d d = abs_pd(_mm256_sub_pd(va, vb));
        // max(1, |b|) with NaN in |b| propagating like std::max(1.0, nan) == 1.0
        const __m256d den = _mm256_max_pd(abs_pd(vb), one);
        _mm256_storeu_pd(abs_out + i, d);
        _mm256_storeu_pd(rel_out + i, _mm256_div_pd(d, den));
    }
    for (; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        abs_out[i] = d;
        rel_out[i] = d / std::max(1.0, std::abs(b[i]));
    }
}

double max_abs(const double* a, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = abs_pd(_mm256_loadu_pd(a + i));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, v);
    }
    if (_mm256_movemask_pd(nan_seen)) return kNaN;
    double r = hmax(m);
    for (; i < n; ++i) {
        const double v = std::abs(a[i]);
        if (std::isnan(v)) return kNaN;
        r = std::max(r, v);
    }
    return r;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{max_unit_deviation, norms, residuals, max_abs};
    return table;
}

}  // namespace darboux::simd
