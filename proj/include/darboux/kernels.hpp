#pragma once

// Batch reductions over structure-of-arrays sample grids. Every kernel has a
// scalar reference and vectorised variants (AVX2 on x86-64, NEON on AArch64)
// that must return bitwise-identical results; the variant is picked once at
// startup from the running CPU and can be forced for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace darboux::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

struct KernelTable {
    /// max_i | sqrt(x_i^2 + y_i^2 + z_i^2) - 1 |
    double (*max_unit_deviation)(const double* x, const double* y, const double* z, std::size_t n);
    /// out_i = sqrt(x_i^2 + y_i^2 + z_i^2)
    void (*norms)(const double* x, const double* y, const double* z, double* out, std::size_t n);
    /// abs_i = |a_i - b_i|, rel_i = abs_i / max(1, |b_i|)
    void (*residuals)(const double* a, const double* b, double* abs_out, double* rel_out, std::size_t n);
    /// max_i |a_i|
    double (*max_abs)(const double* a, std::size_t n);
};

// A NaN anywhere in the input makes every reduction return NaN.

const KernelTable& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels();
#endif
#if defined(__aarch64__)
const KernelTable& neon_kernels();
#endif

bool backend_available(Backend b);
const KernelTable& kernels_for(Backend b);

Backend active_backend();
/// Forces a backend; throws std::invalid_argument if unavailable.
void set_backend(Backend b);

const KernelTable& active();

// Span conveniences over the active table.
double max_unit_deviation(std::span<const double> x, std::span<const double> y, std::span<const double> z);
void norms(std::span<const double> x, std::span<const double> y, std::span<const double> z, std::span<double> out);
void residuals(std::span<const double> a, std::span<const double> b, std::span<double> abs_out,
               std::span<double> rel_out);
double max_abs(std::span<const double> a);

}  // namespace darboux::simd
