#pragma once

// Smarandache curves of a surface curve built from its Darboux frame, and the
// printed closed forms for their invariants. Printed expressions are kept as
// typeset; the verification harness decides which of them hold.
//
// Vectors returned by the closed forms are coordinates in the base frame:
// v = v.x T + v.y g + v.z n.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "darboux/frame.hpp"

namespace darboux {

enum class SmarandacheKind { Tg, Tn, gn, Tgn };

std::string_view to_string(SmarandacheKind k);
/// Throws std::invalid_argument.
SmarandacheKind parse_kind(std::string_view name);
std::array<SmarandacheKind, 4> all_kinds();

/// Radicands at or below this make beta singular.
inline constexpr double kRadicandThreshold = 1e-18;

/// Weights of T, g, n in beta.
Vec3 combination_weights(SmarandacheKind k);
/// sqrt(2) or sqrt(3).
double combination_scale(SmarandacheKind k);

class SmarandacheCurve {
public:
    SmarandacheCurve(SmarandacheKind kind, SurfaceCurve base);

    SmarandacheKind kind() const { return kind_; }
    const SurfaceCurve& base() const { return base_; }

    Vec3 beta(double s) const;
    /// beta as a series in the base arc length around local.s.
    JetVec beta_series(const LocalExpansion& local) const;
    /// |d beta / ds| from the series; no regularity check.
    double speed(double s) const;
    /// ds*/ds by the printed radical. Throws NonRegularSmarandache.
    double rate(double s) const;

private:
    SmarandacheKind kind_;
    SurfaceCurve base_;
};

SmarandacheCurve construct(SmarandacheKind kind, SurfaceCurve base);

/// Radicand under the printed ds*/ds, before the division by 2 or 3.
double rate_radicand(SmarandacheKind k, const DarbouxInvariants& d);
/// Printed ds*/ds with no regularity check.
double printed_rate(SmarandacheKind k, const DarbouxInvariants& d);
/// Throws NonRegularSmarandache when the radicand is <= 1e-18.
double rate(SmarandacheKind k, const DarbouxInvariants& d);

enum class Family { Gamma, mu, eta, gamma, nu, omega, lambda, rho, chi, delta, sigma, xi };

std::string_view to_string(Family f);
SmarandacheKind kind_of(Family f);
/// {tangent-derivative family, binormal family, third-derivative family}.
std::array<Family, 3> families(SmarandacheKind k);

/// A coefficient triple evaluated from the invariants and their first two
/// derivatives. Families that reference other families compute them here.
Vec3 coefficients(Family f, const InvariantDerivatives& d);

struct ClosedFormContext {
    double phi_star = 0.0;
    /// d phi* / ds*.
    double dphi_star = 0.0;
};

struct ClosedFormInvariants {
    Vec3 T_star, N_star, B_star;
    double kappa_star = 0.0;
    double tau_star = 0.0;
    Vec3 g_star, n_star;
    double k_g_star = 0.0, k_n_star = 0.0, tau_g_star = 0.0;
    /// Tg only: tau_g* with the repeated -1/sqrt2 factor taken once.
    std::optional<double> tau_g_star_single;
    /// Radicand of the tangent normaliser (varsigma, psi, Delta, Lambda).
    double radicand = 0.0;
    /// Norm of the tangent-derivative family (epsilon, pi, Omega, Phi).
    double family_norm = 0.0;
};

/// Every printed expression evaluated with plain arithmetic; degenerate inputs
/// give non-finite values instead of errors.
ClosedFormInvariants printed_closed_form(SmarandacheKind k, const InvariantDerivatives& d,
                                         const ClosedFormContext& ctx);

/// Throws NonRegularSmarandache, DegenerateNormalizer.
ClosedFormInvariants closed_form(SmarandacheKind k, const InvariantDerivatives& d, const ClosedFormContext& ctx);
ClosedFormInvariants closed_form(SmarandacheKind k, const SurfaceCurve& base, double s,
                                 const ClosedFormContext& ctx);

struct CorollaryInvariants {
    double kappa_star = 0.0, tau_star = 0.0;
    double k_g_star = 0.0, k_n_star = 0.0, tau_g_star = 0.0;
};

/// Tg: geodesic base; Tn: asymptotic line; gn: principal line.
std::optional<CurveClass> corollary_class(SmarandacheKind k);

/// Printed special-case expressions with no gating. Throws
/// std::invalid_argument for Tgn, which has none.
CorollaryInvariants printed_corollary(SmarandacheKind k, const InvariantDerivatives& d,
                                      const ClosedFormContext& ctx);

/// Throws ClassificationMismatch unless classify(base, 1e-6) carries the
/// class the corollary assumes.
CorollaryInvariants corollary(SmarandacheKind k, const SurfaceCurve& base, double s, const ClosedFormContext& ctx);

/// c.x T + c.y g + c.z n.
Vec3 to_ambient(const Vec3& coords, const DarbouxFrame& frame);
/// (<v,T>, <v,g>, <v,n>).
Vec3 to_frame(const Vec3& v, const DarbouxFrame& frame);

}  // namespace darboux
