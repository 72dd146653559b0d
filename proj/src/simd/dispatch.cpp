#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "darboux/kernels.hpp"

namespace darboux::simd {

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend b) {
    switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("SIMD backend '" + std::string(backend_name(b)) + "' is not available");
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2: return avx2_kernels();
#endif
#if defined(__aarch64__)
    case Backend::Neon: return neon_kernels();
#endif
    default: return scalar_kernels();
    }
}

namespace {

Backend detect() {
    if (const char* env = std::getenv("DARBOUX_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
        if (v == "neon" && backend_available(Backend::Neon)) return Backend::Neon;
    }
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
    if (backend_available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{detect()};
    return b;
}

}  // namespace

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("SIMD backend '" + std::string(backend_name(b)) + "' is not available");
    current().store(b);
}

const KernelTable& active() { return kernels_for(active_backend()); }

double max_unit_deviation(std::span<const double> x, std::span<const double> y, std::span<const double> z) {
    return active().max_unit_deviation(x.data(), y.data(), z.data(), x.size());
}

void norms(std::span<const double> x, std::span<const double> y, std::span<const double> z, std::span<double> out) {
    active().norms(x.data(), y.data(), z.data(), out.data(), x.size());
}

void residuals(std::span<const double> a, std::span<const double> b, std::span<double> abs_out,
               std::span<double> rel_out) {
    active().residuals(a.data(), b.data(), abs_out.data(), rel_out.data(), a.size());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace darboux::simd
