#pragma once

// Truncated Taylor series ("jets") in one variable. Coefficient k holds
// f^(k)(x0) / k!, so every operation below is an exact recurrence on
// coefficients: no step size, no truncation error in the orders kept.

#include <array>
#include <cmath>
#include <cstddef>

namespace darboux {

template <std::size_t N>
struct Jet {
    static_assert(N >= 1);
    static constexpr std::size_t size = N;

    std::array<double, N> c{};

    constexpr Jet() = default;
    constexpr Jet(double v) { c[0] = v; }  // NOLINT: implicit lift of constants

    /// The identity jet x0 + h.
    static constexpr Jet variable(double x0) {
        Jet j(x0);
        if constexpr (N > 1) j.c[1] = 1.0;
        return j;
    }

    constexpr double value() const { return c[0]; }

    /// k-th derivative at the expansion point.
    double derivative(std::size_t k) const {
        double f = 1.0;
        for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
        return c[k] * f;
    }

    /// d/dh; the top coefficient becomes unknown and is set to zero.
    constexpr Jet diff() const {
        Jet r;
        for (std::size_t k = 0; k + 1 < N; ++k) r.c[k] = static_cast<double>(k + 1) * c[k + 1];
        return r;
    }

    Jet& operator+=(const Jet& o) { for (std::size_t k = 0; k < N; ++k) c[k] += o.c[k]; return *this; }
    Jet& operator-=(const Jet& o) { for (std::size_t k = 0; k < N; ++k) c[k] -= o.c[k]; return *this; }
    Jet& operator*=(double s) { for (auto& x : c) x *= s; return *this; }
};

template <std::size_t N>
Jet<N> operator-(const Jet<N>& a) {
    Jet<N> r;
    for (std::size_t k = 0; k < N; ++k) r.c[k] = -a.c[k];
    return r;
}

template <std::size_t N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }

template <std::size_t N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }

template <std::size_t N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k < N; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
        r.c[k] = acc;
    }
    return r;
}

template <std::size_t N>
Jet<N> operator*(Jet<N> a, double s) { return a *= s; }

template <std::size_t N>
Jet<N> operator*(double s, Jet<N> a) { return a *= s; }

template <std::size_t N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> q;
    const double b0 = b.c[0];
    for (std::size_t k = 0; k < N; ++k) {
        double acc = a.c[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
        q.c[k] = acc / b0;
    }
    return q;
}

template <std::size_t N>
Jet<N> operator/(Jet<N> a, double s) { return a *= (1.0 / s); }

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::sqrt(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double acc = a.c[k];
        for (std::size_t j = 1; j < k; ++j) acc -= r.c[j] * r.c[k - j];
        r.c[k] = acc / (2.0 * r.c[0]);
    }
    return r;
}

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> e;
    e.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c[j] * e.c[k - j];
        e.c[k] = acc / static_cast<double>(k);
    }
    return e;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
    Jet<N> l;
    l.c[0] = std::log(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j < k; ++j) acc += static_cast<double>(j) * l.c[j] * a.c[k - j];
        l.c[k] = (a.c[k] - acc / static_cast<double>(k)) / a.c[0];
    }
    return l;
}

/// sin and cos share one coupled recurrence.
template <std::size_t N>
void sincos(const Jet<N>& a, Jet<N>& s, Jet<N>& co) {
    s.c[0] = std::sin(a.c[0]);
    co.c[0] = std::cos(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double as = 0.0, ac = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            const double ja = static_cast<double>(j) * a.c[j];
            as += ja * co.c[k - j];
            ac += ja * s.c[k - j];
        }
        s.c[k] = as / static_cast<double>(k);
        co.c[k] = -ac / static_cast<double>(k);
    }
}

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) { Jet<N> s, c; sincos(a, s, c); return s; }

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) { Jet<N> s, c; sincos(a, s, c); return c; }

template <std::size_t N>
Jet<N> tan(const Jet<N>& a) { Jet<N> s, c; sincos(a, s, c); return s / c; }

/// |a| is smooth only away from a(x0) = 0; at zero the positive branch is taken.
template <std::size_t N>
Jet<N> abs(const Jet<N>& a) { return a.c[0] < 0.0 ? -a : a; }

/// a^p for a constant real exponent; requires a(x0) != 0.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
    Jet<N> f;
    f.c[0] = std::pow(a.c[0], p);
    for (std::size_t k = 1; k < N; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            acc += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a.c[j] * f.c[k - j];
        f.c[k] = acc / (static_cast<double>(k) * a.c[0]);
    }
    return f;
}

/// a^n by repeated squaring; valid at a(x0) = 0 for n >= 0.
template <std::size_t N>
Jet<N> pow_int(Jet<N> a, long n) {
    if (n < 0) return Jet<N>(1.0) / pow_int(a, -n);
    Jet<N> r(1.0);
    while (n > 0) {
        if (n & 1) r = r * a;
        a = a * a;
        n >>= 1;
    }
    return r;
}

}  // namespace darboux
