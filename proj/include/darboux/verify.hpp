#pragma once

// Independent invariants of a Smarandache curve computed from derivatives of
// beta alone, and the per-formula audit of the printed closed forms.

#include <optional>
#include <string>
#include <vector>

#include "darboux/frame.hpp"
#include "darboux/smarandache.hpp"

namespace darboux {

/// Ambient vectors; derivatives are with respect to the arc length s* of beta
/// unless named otherwise.
struct OracleInvariants {
    double s = 0.0;
    /// |d beta / ds|, i.e. ds*/ds.
    double speed = 0.0;
    double kappa = 0.0, tau = 0.0;
    Vec3 T, N, B;
    /// Darboux data on the unit carrier sphere: n* = beta, g* = n* x T*.
    Vec3 g_star, n_star;
    double k_g = 0.0, k_n = 0.0, tau_g = 0.0;
    /// Angle of g* in the (N*, B*) plane, in (-pi, pi].
    double phi_star = 0.0;
    /// dT*/ds and beta''' in base arc length.
    Vec3 dT_ds, beta3;
};

inline constexpr double kOracleSpeedThreshold = 1e-9;

/// Frenet part from beta', beta'', beta'''. Throws NonRegularSmarandache when
/// |beta'| <= 1e-9 and VanishingCurvature when |beta' x beta''| <= 1e-12.
OracleInvariants oracle_frenet(const SmarandacheCurve& beta, double s);
OracleInvariants oracle_frenet(const SmarandacheCurve& beta, const LocalExpansion& local);

/// Frenet part plus the carrier-sphere Darboux data and phi*.
OracleInvariants oracle_sphere_darboux(const SmarandacheCurve& beta, double s);
OracleInvariants oracle_sphere_darboux(const SmarandacheCurve& beta, const LocalExpansion& local);

/// d phi* / ds* by a 5-point stencil in s of spacing h (default L/256).
double phi_star_rate(const SmarandacheCurve& beta, double s, double h = 0.0);

/// phi* and d phi*/ds* from the oracle at s.
ClosedFormContext make_context(const SmarandacheCurve& beta, double s, double h = 0.0);

enum class Verdict { Confirmed, SignOnly, Discrepant, Undefined };
std::string to_string(Verdict v);

struct FormulaSample {
    double s = 0.0;
    /// One entry for scalars, three for vectors (frame coordinates).
    std::vector<double> closed, oracle;
    double abs_residual = 0.0, rel_residual = 0.0;
    bool sign_agrees = true;
    /// Non-empty when this sample could not be compared.
    std::string error;
    bool compared = false;
};

struct FormulaResult {
    std::string id;
    Verdict verdict = Verdict::Undefined;
    /// Tolerance the verdict was taken at.
    double tol = 0.0;
    double max_abs = 0.0, max_rel = 0.0;
    /// Vectors: max relative residual after negating the closed form.
    /// Scalars: max relative residual of the magnitudes.
    double max_rel_sign_free = 0.0;
    int compared = 0, failed = 0;
    std::string note;
    std::vector<FormulaSample> samples;
};

struct VerificationReport {
    std::string base;
    /// Empty for the base-curve relations.
    std::optional<SmarandacheKind> kind;
    double tol = 0.0;
    std::vector<double> grid;
    std::optional<double> phi_star_override;
    std::vector<FormulaResult> formulas;

    const FormulaResult* find(const std::string& id) const;
};

/// 256 uniform samples over [0.02 L, 0.98 L] by default.
std::vector<double> audit_grid(const SurfaceCurve& base, int samples = 256, double margin = 0.02);

/// Formula ids audited for a kind, in report order.
std::vector<std::string> formula_ids(SmarandacheKind k);
/// Relations between the Darboux and Frenet data of the base curve.
std::vector<std::string> base_formula_ids();
/// Base ids followed by every kind's ids.
std::vector<std::string> formula_registry();

/// Stencil-based derivatives of phi limit what can be confirmed.
inline constexpr double kStencilTolerance = 1e-6;

struct AuditOptions {
    double tol = 1e-8;
    /// Replaces the oracle phi* (and sets d phi*/ds* = 0) in the closed forms.
    std::optional<double> phi_star;
};

/// Never throws for per-sample failures; they are recorded in the report.
VerificationReport audit(SmarandacheKind k, const SurfaceCurve& base, const std::vector<double>& grid,
                         const AuditOptions& opts);
VerificationReport audit(SmarandacheKind k, const SurfaceCurve& base, const std::vector<LocalExpansion>& local,
                         const AuditOptions& opts);

VerificationReport audit_base(const SurfaceCurve& base, const std::vector<double>& grid, const AuditOptions& opts);
VerificationReport audit_base(const SurfaceCurve& base, const std::vector<LocalExpansion>& local,
                              const AuditOptions& opts);

/// Residuals and verdict for samples whose closed/oracle values are filled
/// in. A sample with an error and no oracle value is skipped; a sample whose
/// oracle exists but whose closed form does not counts against the formula.
FormulaResult compare(const std::string& id, std::vector<FormulaSample> samples, double tol);

/// Tolerance applied to a formula id: tol, floored at kStencilTolerance for
/// formulas that consume d phi / ds.
double formula_tolerance(const std::string& id, double tol);

}  // namespace darboux
