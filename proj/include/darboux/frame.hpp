#pragma once

// Darboux {T, g, n} and Frenet {T, N, B} frames of a curve on a surface,
// with every arc-length derivative taken exactly: the parameterisation is
// expanded as a Taylor series in t, recomposed as a series in arc length s,
// and frame fields are built by series arithmetic.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/jet.hpp"
#include "darboux/numeric.hpp"
#include "darboux/surface.hpp"
#include "darboux/vec3.hpp"

namespace darboux {

/// Series length used for local expansions. Position is exact through
/// order 7 in s, which leaves beta''' and k_g'' with room to spare.
inline constexpr std::size_t kSeriesLength = 8;
using SJet = Jet<kSeriesLength>;
using JetVec = Vec3T<SJet>;

inline constexpr double kCurvatureThreshold = 1e-9;

/// Taylor expansion of the Darboux data around arc length s.
struct LocalExpansion {
    double s = 0.0;
    double t = 0.0;
    JetVec position;
    JetVec T, g, n;
    SJet k_g, k_n, tau_g;
};

class SurfaceCurve {
public:
    /// Throws OutOfDomain if (u(t), v(t)) leaves the surface domain and
    /// NonRegularCurve if the ambient speed falls below 1e-12.
    SurfaceCurve(Surface surface, Expr u_of_t, Expr v_of_t, double t_lo, double t_hi, std::string name = "");

    static SurfaceCurve from_strings(Surface surface, std::string_view u_of_t, std::string_view v_of_t,
                                     double t_lo, double t_hi, std::string name = "");

    const Surface& surface() const { return surface_; }
    const Expr& u_of_t() const { return u_; }
    const Expr& v_of_t() const { return v_; }
    const std::string& name() const { return name_; }
    double t_lo() const { return arc_.t_lo(); }
    double t_hi() const { return arc_.t_hi(); }
    const ArcLengthMap& arc_map() const { return arc_; }
    double total_length() const { return arc_.total_length(); }

    /// Ambient speed |d alpha/dt|.
    double speed(double t) const;

    /// Throws OutOfRange, DegenerateParameterization.
    LocalExpansion expand(double s) const;

    /// n uniform samples over [0, L] including both ends.
    std::vector<double> uniform_grid(int n) const;

    SurfaceCurve with_flipped_normal(bool flip = true) const;

private:
    Surface surface_;
    Expr u_, v_;
    std::string name_;
    ArcLengthMap arc_;
};

struct DarbouxFrame {
    double s = 0.0;
    Vec3 position, T, g, n;
};

struct DarbouxInvariants {
    double k_g = 0.0, k_n = 0.0, tau_g = 0.0;
};

/// Invariants with their first two arc-length derivatives: [0] value,
/// [1] first derivative, [2] second derivative.
struct InvariantDerivatives {
    double k_g[3]{}, k_n[3]{}, tau_g[3]{};
};

struct FrenetData {
    double kappa = 0.0, tau = 0.0;
    Vec3 N, B;
};

struct FrameSample {
    double s = 0.0;
    double t = 0.0;
    Vec3 position, T, g, n;
    double k_g = 0.0, k_n = 0.0, tau_g = 0.0;
    double kappa = 0.0;
    /// Empty where kappa < kCurvatureThreshold.
    std::optional<Vec3> N, B;
    std::optional<double> tau, phi;
};

DarbouxFrame darboux_frame(const SurfaceCurve& curve, double s);
DarbouxInvariants darboux_invariants(const SurfaceCurve& curve, double s);
InvariantDerivatives invariant_derivatives(const SurfaceCurve& curve, double s);
InvariantDerivatives invariant_derivatives(const LocalExpansion& local);

/// Throws VanishingCurvature when kappa < 1e-9.
FrenetData frenet_invariants(const SurfaceCurve& curve, double s);
FrenetData frenet_invariants(const LocalExpansion& local);

/// phi with g = cos(phi) N + sin(phi) B. Throws VanishingCurvature.
double frame_angle(const FrameSample& sample);

FrameSample sample(const SurfaceCurve& curve, double s);
FrameSample sample(const LocalExpansion& local);

/// Samples with phi unwrapped along the grid.
std::vector<FrameSample> sample_grid(const SurfaceCurve& curve, const std::vector<double>& s_values);

/// d phi / ds by a 5-point stencil of spacing h, one-sided near the ends.
double frame_angle_rate(const SurfaceCurve& curve, double s, double h);

/// Max norm of the residual of T' = k_g g + k_n n, g' = -k_g T + tau_g n,
/// n' = -k_n T - tau_g g.
double darboux_system_residual(const LocalExpansion& local);

/// Max norm of the residual of T' = kappa N, N' = -kappa T + tau B, B' = -tau N.
double frenet_system_residual(const LocalExpansion& local);

/// max |G - I| over the Gram matrix of the three vectors.
double gram_deviation(const Vec3& a, const Vec3& b, const Vec3& c);

enum class CurveClass { Geodesic, AsymptoticLine, PrincipalLine };
std::string to_string(CurveClass c);

/// Label included iff the matching invariant stays below tol in magnitude over
/// `samples` uniform points.
std::set<CurveClass> classify(const SurfaceCurve& curve, double tol, int samples = 256);

// Test geometries bundled by name.
struct PresetInfo {
    std::string name;
    std::string description;
};
std::vector<PresetInfo> preset_catalog();
/// Throws std::invalid_argument for unknown names.
SurfaceCurve make_preset(const std::string& name, bool flip_normal = false);

/// Stencil offsets for a derivative at s in [0, L] with spacing h: centred
/// when possible, shifted toward the interior near the ends.
std::vector<double> stencil_offsets(double s, double h, double length);

}  // namespace darboux
