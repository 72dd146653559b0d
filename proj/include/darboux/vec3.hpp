#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace darboux {

/// Ambient 3-vector over a scalar type (double or Jet<N>).
template <typename S>
struct Vec3T {
    S x{}, y{}, z{};

    Vec3T& operator+=(const Vec3T& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3T& operator-=(const Vec3T& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

using Vec3 = Vec3T<double>;

template <typename S>
Vec3T<S> operator+(Vec3T<S> a, const Vec3T<S>& b) { return a += b; }
template <typename S>
Vec3T<S> operator-(Vec3T<S> a, const Vec3T<S>& b) { return a -= b; }
template <typename S>
Vec3T<S> operator-(const Vec3T<S>& a) { return {-a.x, -a.y, -a.z}; }
template <typename S, typename K>
Vec3T<S> operator*(const K& k, const Vec3T<S>& a) { return {k * a.x, k * a.y, k * a.z}; }
template <typename S, typename K>
Vec3T<S> operator*(const Vec3T<S>& a, const K& k) { return {a.x * k, a.y * k, a.z * k}; }
template <typename S, typename K>
Vec3T<S> operator/(const Vec3T<S>& a, const K& k) { return {a.x / k, a.y / k, a.z / k}; }

template <typename S>
S dot(const Vec3T<S>& a, const Vec3T<S>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

template <typename S>
Vec3T<S> cross(const Vec3T<S>& a, const Vec3T<S>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename S>
S norm(const Vec3T<S>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

inline double det(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

inline double max_abs_component(const Vec3& a) {
    return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}

inline std::array<double, 3> to_array(const Vec3& v) { return {v.x, v.y, v.z}; }

/// Componentwise value / k-th derivative extraction from a jet-valued vector.
template <typename J>
Vec3 value_of(const Vec3T<J>& v) { return {v.x.value(), v.y.value(), v.z.value()}; }

template <typename J>
Vec3 derivative_of(const Vec3T<J>& v, std::size_t k) {
    return {v.x.derivative(k), v.y.derivative(k), v.z.derivative(k)};
}

template <typename J>
Vec3T<J> diff(const Vec3T<J>& v) { return {v.x.diff(), v.y.diff(), v.z.diff()}; }

}  // namespace darboux
