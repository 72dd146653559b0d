#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "darboux/errors.hpp"
#include "darboux/verify.hpp"

using namespace darboux;
using std::numbers::sqrt2;

namespace {

FormulaSample scalar_sample(double closed, double oracle) {
    FormulaSample s;
    s.closed = {closed};
    s.oracle = {oracle};
    return s;
}

bool degenerate(SmarandacheKind k, const std::string& preset) {
    return preset == "ruling" || (k == SmarandacheKind::Tg && preset == "helix") ||
           (k == SmarandacheKind::gn && preset == "latitude");
}

}  // namespace

TEST(Oracle, TgOnEquator) {
    const SmarandacheCurve b(SmarandacheKind::Tg, make_preset("equator"));
    const OracleInvariants o = oracle_sphere_darboux(b, 1.0);
    EXPECT_NEAR(o.kappa, sqrt2, 1e-9);
    EXPECT_NEAR(o.tau, 0.0, 1e-9);
    EXPECT_NEAR(std::abs(o.k_g), 1.0, 1e-9);
    EXPECT_NEAR(o.k_n, -1.0, 1e-12);
    EXPECT_NEAR(o.tau_g, 0.0, 1e-12);
    EXPECT_NEAR(o.speed, 1.0 / sqrt2, 1e-12);
}

TEST(Oracle, TgnOnEquator) {
    const SmarandacheCurve b(SmarandacheKind::Tgn, make_preset("equator"));
    const OracleInvariants o = oracle_frenet(b, 2.0);
    EXPECT_NEAR(o.kappa, std::sqrt(1.5), 1e-9);
    EXPECT_NEAR(o.tau, 0.0, 1e-9);
}

TEST(Oracle, Degenerate) {
    const SmarandacheCurve b(SmarandacheKind::Tgn, make_preset("ruling"));
    EXPECT_THROW(oracle_frenet(b, 0.5), NonRegularSmarandache);
    EXPECT_THROW(oracle_sphere_darboux(b, 0.5), NonRegularSmarandache);
}

TEST(Oracle, CarrierSphereIdentities) {
    for (const auto& p : preset_catalog()) {
        const SurfaceCurve base = make_preset(p.name);
        for (SmarandacheKind k : all_kinds()) {
            if (degenerate(k, p.name)) continue;
            const SmarandacheCurve b(k, base);
            for (double s : audit_grid(base, 64)) {
                const OracleInvariants o = oracle_sphere_darboux(b, s);
                EXPECT_NEAR(o.k_n, -1.0, 1e-8) << p.name << " " << to_string(k);
                EXPECT_NEAR(o.tau_g, 0.0, 1e-8);
                EXPECT_NEAR(o.kappa * o.kappa, o.k_g * o.k_g + o.k_n * o.k_n, 1e-8);
                EXPECT_LT(gram_deviation(o.T, o.g_star, o.n_star), 1e-12);
                EXPECT_LT(gram_deviation(o.T, o.N, o.B), 1e-12);
            }
        }
    }
}

TEST(Oracle, FrenetSystemResidual) {
    // dT*/ds* = kappa N*, checked against a difference quotient of T* in s.
    const SmarandacheCurve b(SmarandacheKind::Tn, make_preset("latitude"));
    const double h = 1e-3;
    for (double s : {0.5, 1.7, 3.0}) {
        auto T = [&](double x) { return oracle_frenet(b, x).T; };
        const Vec3 dT = (8.0 * (T(s + h) - T(s - h)) - (T(s + 2 * h) - T(s - 2 * h))) / (12.0 * h);
        const OracleInvariants o = oracle_frenet(b, s);
        EXPECT_LT(norm(dT / o.speed - o.kappa * o.N), 1e-7);
        auto B = [&](double x) { return oracle_frenet(b, x).B; };
        const Vec3 dB = (8.0 * (B(s + h) - B(s - h)) - (B(s + 2 * h) - B(s - 2 * h))) / (12.0 * h);
        EXPECT_LT(norm(dB / o.speed + o.tau * o.N), 1e-7);
    }
}

TEST(Oracle, GeodesicTorsionRelation) {
    // tau_g* = tau* + d phi*/ds*, and tau_g* = 0 on the sphere.
    const SmarandacheCurve b(SmarandacheKind::Tgn, make_preset("helix"));
    for (double s : audit_grid(b.base(), 16)) {
        const OracleInvariants o = oracle_sphere_darboux(b, s);
        EXPECT_NEAR(o.tau_g, o.tau + phi_star_rate(b, s), 1e-6);
    }
}

TEST(Compare, Policy) {
    const FormulaResult same = compare("x", {scalar_sample(2.5, 2.5), scalar_sample(-1.0, -1.0)}, 1e-8);
    EXPECT_EQ(same.verdict, Verdict::Confirmed);
    EXPECT_EQ(same.max_abs, 0.0);
    EXPECT_EQ(same.compared, 2);

    const FormulaResult flipped = compare("x", {scalar_sample(-sqrt2, sqrt2)}, 1e-8);
    EXPECT_EQ(flipped.verdict, Verdict::SignOnly);
    EXPECT_FALSE(flipped.samples[0].sign_agrees);

    const FormulaResult off = compare("x", {scalar_sample(1.0, 1.5)}, 1e-8);
    EXPECT_EQ(off.verdict, Verdict::Discrepant);
    EXPECT_NEAR(off.max_rel, 0.5 / 1.5, 1e-15);

    // Near zero the denominator is 1.
    const FormulaResult tiny = compare("x", {scalar_sample(1e-9, 0.0)}, 1e-8);
    EXPECT_EQ(tiny.verdict, Verdict::Confirmed);
    EXPECT_NEAR(tiny.max_rel, 1e-9, 1e-24);

    FormulaSample vec;
    vec.closed = {1.0, -2.0, 0.5};
    vec.oracle = {-1.0, 2.0, -0.5};
    EXPECT_EQ(compare("v", {vec}, 1e-8).verdict, Verdict::SignOnly);

    const FormulaResult nan = compare("x", {scalar_sample(std::nan(""), 1.0)}, 1e-8);
    EXPECT_EQ(nan.verdict, Verdict::Discrepant);

    FormulaSample skipped;
    skipped.error = "NonRegularSmarandache: ...";
    const FormulaResult none = compare("x", {skipped}, 1e-8);
    EXPECT_EQ(none.verdict, Verdict::Undefined);
    EXPECT_EQ(none.compared, 0);
}

TEST(Audit, EquatorTg) {
    const VerificationReport r = audit(SmarandacheKind::Tg, make_preset("equator"), audit_grid(make_preset("equator")),
                                       AuditOptions{});
    ASSERT_TRUE(r.find("rate-Tg"));
    EXPECT_EQ(r.find("rate-Tg")->verdict, Verdict::Confirmed);
    EXPECT_EQ(r.find("tangent-Tg")->verdict, Verdict::Confirmed);
    const FormulaResult* k1 = r.find("kappa-star-corollary1-Tg");
    ASSERT_TRUE(k1);
    EXPECT_EQ(k1->verdict, Verdict::SignOnly);
    EXPECT_EQ(k1->compared, 256);
    EXPECT_LT(k1->max_rel_sign_free, 1e-8);
    for (const auto& s : k1->samples) EXPECT_FALSE(s.sign_agrees);
}

TEST(Audit, RegistryCompleteness) {
    const auto reg = formula_registry();
    EXPECT_EQ(std::set<std::string>(reg.begin(), reg.end()).size(), reg.size());
    const SurfaceCurve base = make_preset("helix");
    const auto grid = audit_grid(base, 32);
    for (SmarandacheKind k : all_kinds()) {
        const VerificationReport r = audit(k, base, grid, AuditOptions{});
        std::vector<std::string> ids;
        for (const auto& f : r.formulas) ids.push_back(f.id);
        EXPECT_EQ(ids, formula_ids(k));
        for (const auto& f : r.formulas) EXPECT_EQ(f.samples.size(), grid.size()) << f.id;
    }
    const VerificationReport b = audit_base(base, grid, AuditOptions{});
    ASSERT_EQ(b.formulas.size(), base_formula_ids().size());
    for (const auto& f : b.formulas) EXPECT_NE(f.verdict, Verdict::Discrepant) << f.id;
}

TEST(Audit, DegenerateCombinationsAreUndefined) {
    const SurfaceCurve base = make_preset("ruling");
    const VerificationReport r = audit(SmarandacheKind::Tn, base, audit_grid(base, 32), AuditOptions{});
    for (const auto& f : r.formulas) {
        if (f.id == "rate-Tn") continue;
        EXPECT_EQ(f.verdict, Verdict::Undefined) << f.id;
    }
}

TEST(Audit, StencilFloor) {
    EXPECT_EQ(formula_tolerance("rate-Tg", 1e-10), 1e-10);
    EXPECT_EQ(formula_tolerance("taug-star-Tgn", 1e-10), kStencilTolerance);
    EXPECT_EQ(formula_tolerance("taug-star-Tgn", 1e-3), 1e-3);
}

TEST(Audit, PhiOverride) {
    const SurfaceCurve base = make_preset("equator");
    AuditOptions opts;
    opts.phi_star = 0.25;
    const VerificationReport r = audit(SmarandacheKind::Tg, base, audit_grid(base, 32), opts);
    ASSERT_TRUE(r.phi_star_override);
    EXPECT_EQ(*r.phi_star_override, 0.25);
    EXPECT_EQ(r.find("rate-Tg")->verdict, Verdict::Confirmed);
}

TEST(Audit, BaseRelations) {
    for (const char* p : {"equator", "latitude", "helix", "plane-circle"}) {
        const SurfaceCurve base = make_preset(p);
        const VerificationReport r = audit_base(base, audit_grid(base, 64), AuditOptions{});
        EXPECT_LT(r.find("base-taug-relation")->max_abs, 1e-7) << p;
        EXPECT_LT(r.find("base-kg-relation")->max_abs, 1e-9) << p;
        EXPECT_LT(r.find("base-kn-relation")->max_rel_sign_free, 1e-9) << p;
    }
}
