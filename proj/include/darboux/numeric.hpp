#pragma once

// Arc-length machinery: adaptive quadrature, the monotone map s -> t, and
// finite-difference stencils for quantities that only exist on a grid.

#include <functional>
#include <span>
#include <vector>

namespace darboux {

using ScalarFn = std::function<double(double)>;

/// Adaptive Simpson quadrature; each accepted subinterval meets `tol`.
double integrate(const ScalarFn& f, double a, double b, double tol = 1e-12);

/// Length of a curve from its speed |dr/dt| on [t0, t1].
/// Throws NonRegularCurve if the speed drops below 1e-12 on the sample grid.
double arc_length(const ScalarFn& speed, double t0, double t1);

inline constexpr double kRegularityThreshold = 1e-12;

class ArcLengthMap {
public:
    ArcLengthMap(ScalarFn speed, double t_lo, double t_hi, int panels = 64);

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double total_length() const { return cumulative_.back(); }

    /// Arc length from t_lo to t.
    double length_at(double t) const;

    /// Parameter t with length_at(t) == s; OutOfRange unless 0 <= s <= total_length.
    double parameter_at(double s) const;

    double speed(double t) const { return speed_(t); }

private:
    ScalarFn speed_;
    double t_lo_, t_hi_;
    std::vector<double> knots_;       // panel boundaries in t
    std::vector<double> cumulative_;  // arc length at each knot
};

double reparameterize(const ArcLengthMap& map, double s);

/// Finite-difference weights for the `order`-th derivative at 0 from samples
/// at the given offsets (in units of the step).
std::vector<double> stencil_weights(std::span<const double> offsets, int order);

/// First derivative at the centre of a 5-point stencil. `values[i]` is sampled
/// at offset `offsets[i] * h`.
double stencil_derivative(std::span<const double> values, std::span<const double> offsets, double h);

/// Removes 2*pi jumps between consecutive angles, in place.
void unwrap_angles(std::span<double> angles);

/// Wraps `angle` onto the 2*pi branch nearest `reference`.
double nearest_branch(double angle, double reference);

}  // namespace darboux
