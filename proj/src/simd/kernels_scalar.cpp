#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux/kernels.hpp"

namespace darboux::simd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_unit_deviation(const double* x, const double* y, const double* z, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
        const double d = std::abs(r - 1.0);
        if (std::isnan(d)) return kNaN;
        m = std::max(m, d);
    }
    return m;
}

void norms(const double* x, const double* y, const double* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
}

void residuals(const double* a, const double* b, double* abs_out, double* rel_out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        abs_out[i] = d;
        rel_out[i] = d / std::max(1.0, std::abs(b[i]));
    }
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::abs(a[i]);
        if (std::isnan(v)) return kNaN;
        m = std::max(m, v);
    }
    return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{max_unit_deviation, norms, residuals, max_abs};
    return table;
}

}  // namespace darboux::simd
