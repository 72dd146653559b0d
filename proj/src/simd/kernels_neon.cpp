#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux/kernels.hpp"

namespace darboux::simd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline float64x2_t norm_f64(const double* x, const double* y, const double* z, std::size_t i) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    const float64x2_t vz = vld1q_f64(z + i);
    float64x2_t s = vaddq_f64(vmulq_f64(vx, vx), vmulq_f64(vy, vy));
    s = vaddq_f64(s, vmulq_f64(vz, vz));
    return vsqrtq_f64(s);
}

double max_unit_deviation(const double* x, const double* y, const double* z, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vabsq_f64(vsubq_f64(norm_f64(x, y, z, i), one));
        m = vmaxq_f64(m, d);  // NaN-propagating
    }
    double r = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
    if (std::isnan(vgetq_lane_f64(m, 0)) || std::isnan(vgetq_lane_f64(m, 1))) return kNaN;
    for (; i < n; ++i) {
        const double d = std::abs(std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]) - 1.0);
        if (std::isnan(d)) return kNaN;
        r = std::max(r, d);
    }
    return r;
}

void norms(const double* x, const double* y, const double* z, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, norm_f64(x, y, z, i));
    for (; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
}

void residuals(const double* a, const double* b, double* abs_out, double* rel_out, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vb = vld1q_f64(b + i);
        const float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vb));
        const float64x2_t den = vmaxnmq_f64(vabsq_f64(vb), one);
        vst1q_f64(abs_out + i, d);
        vst1q_f64(rel_out + i, vdivq_f64(d, den));
    }
    for (; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        abs_out[i] = d;
        rel_out[i] = d / std::max(1.0, std::abs(b[i]));
    }
}

double max_abs(const double* a, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(a + i)));
    if (std::isnan(vgetq_lane_f64(m, 0)) || std::isnan(vgetq_lane_f64(m, 1))) return kNaN;
    double r = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
    for (; i < n; ++i) {
        const double v = std::abs(a[i]);
        if (std::isnan(v)) return kNaN;
        r = std::max(r, v);
    }
    return r;
}

}  // namespace

const KernelTable& neon_kernels() {
    static const KernelTable table{max_unit_deviation, norms, residuals, max_abs};
    return table;
}

}  // namespace darboux::simd
