#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/vec3.hpp"

namespace darboux {

/// Parameter interval; an open end excludes a coordinate singularity.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool open_lo = false;
    bool open_hi = false;

    bool contains(double x) const {
        return (open_lo ? x > lo : x >= lo) && (open_hi ? x < hi : x <= hi);
    }
};

inline constexpr double kNormalThreshold = 1e-10;

/// Oriented parametric surface r(u, v) = (x, y, z). The orientation is
/// r_u x r_v, reversed when `flipped()`.
class Surface {
public:
    Surface(std::string name, Expr x, Expr y, Expr z, Interval u, Interval v);

    /// Parses the three coordinate expressions in the variables u and v.
    static Surface from_strings(std::string name, std::string_view x, std::string_view y, std::string_view z,
                                Interval u, Interval v);

    const std::string& name() const { return name_; }
    const Expr& x() const { return coords_[0]; }
    const Expr& y() const { return coords_[1]; }
    const Expr& z() const { return coords_[2]; }
    const Interval& u_domain() const { return u_; }
    const Interval& v_domain() const { return v_; }
    bool flipped() const { return flipped_; }

    Surface with_flipped_normal(bool flip = true) const;

    bool contains(double u, double v) const { return u_.contains(u) && v_.contains(v); }

    /// Throws OutOfDomain.
    Vec3 position(double u, double v) const;
    Vec3 partial_u(double u, double v) const;
    Vec3 partial_v(double u, double v) const;

    /// Throws OutOfDomain, DegenerateParameterization when |r_u x r_v| <= 1e-10.
    Vec3 unit_normal(double u, double v) const;

    /// r(U, V) for jet- or double-valued parameters; no domain check.
    template <typename S>
    Vec3T<S> position_of(const S& u, const S& v) const {
        return {eval(coords_[0], u, v), eval(coords_[1], u, v), eval(coords_[2], u, v)};
    }

    /// Oriented (unnormalised) normal r_u x r_v, negated when flipped.
    template <typename S>
    Vec3T<S> raw_normal_of(const S& u, const S& v) const {
        const Vec3T<S> ru{eval(du_[0], u, v), eval(du_[1], u, v), eval(du_[2], u, v)};
        const Vec3T<S> rv{eval(dv_[0], u, v), eval(dv_[1], u, v), eval(dv_[2], u, v)};
        Vec3T<S> n = cross(ru, rv);
        return flipped_ ? -n : n;
    }

private:
    template <typename S>
    static S eval(const Expr& e, const S& u, const S& v) {
        const Binding<S> b[] = {{"u", u}, {"v", v}};
        return evaluate_with<S>(e, std::span<const Binding<S>>(b));
    }

    void check_domain(double u, double v) const;

    std::string name_;
    Expr coords_[3];
    Expr du_[3];
    Expr dv_[3];
    Interval u_, v_;
    bool flipped_ = false;
};

// Builtin catalogue.
Surface make_plane();
/// u = colatitude in (0, pi), v = longitude in [0, 2 pi]; outward normal.
Surface make_sphere();
/// (r cos u, r sin u, v); outward normal.
Surface make_cylinder(double radius = 1.0);
/// ((R + r cos u) cos v, (R + r cos u) sin v, r sin u).
Surface make_torus(double major = 2.0, double minor = 1.0);

std::vector<std::string> builtin_surface_names();

/// Builtin by name; `params` may carry "radius" (cylinder) or "R", "r"
/// (torus). Throws std::invalid_argument for unknown names.
Surface builtin_surface(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace darboux
