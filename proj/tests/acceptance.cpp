// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "darboux/errors.hpp"
#include "darboux/io.hpp"
#include "darboux/kernels.hpp"
#include "support/random_expr.hpp"

using namespace darboux;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::vector<std::string> kFourPresets = {"equator", "latitude", "helix", "ruling"};

std::vector<std::string> all_presets() {
    std::vector<std::string> names;
    for (const auto& p : preset_catalog()) names.push_back(p.name);
    return names;
}

// beta is a single point: dT/ds cancels in the combination.
bool degenerate(SmarandacheKind k, const SurfaceCurve& base) {
    for (double s : base.uniform_grid(32))
        if (rate_radicand(k, darboux_invariants(base, s)) > kRadicandThreshold) return false;
    return true;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome frame_validity() {
    double worst_gram = 0.0, worst_system = 0.0;
    for (const auto& name : kFourPresets) {
        const SurfaceCurve c = make_preset(name);
        for (double s : c.uniform_grid(500)) {
            const LocalExpansion e = c.expand(s);
            worst_gram = std::max(worst_gram, gram_deviation(value_of(e.T), value_of(e.g), value_of(e.n)));
            worst_system = std::max(worst_system, darboux_system_residual(e));
        }
    }
    return {worst_gram < 1e-8 && worst_system < 1e-8,
            "max Gram deviation " + fmt(worst_gram) + ", max system residual " + fmt(worst_system)};
}

// k_g = <T', g>, k_n = <T', n>, tau_g = <g', n> with frame derivatives by a
// five-point difference in s.
std::set<CurveClass> projected_classes(const SurfaceCurve& c, double tol, double* kg_dev_from_one) {
    auto diff = [&](auto get, double s) {
        const double L = c.total_length();
        const double h = 1e-3 * L;
        const std::vector<double> off = stencil_offsets(s, h, L);
        std::vector<Vec3> v;
        for (double o : off) v.push_back(get(darboux_frame(c, s + o * h)));
        Vec3 d;
        const auto w = stencil_weights(off, 1);
        for (std::size_t i = 0; i < w.size(); ++i) d = d + w[i] * v[i];
        return d / h;
    };
    double kg = 0.0, kn = 0.0, tg = 0.0, dev = 0.0;
    for (double s : c.uniform_grid(128)) {
        const DarbouxFrame f = darboux_frame(c, s);
        const Vec3 dT = diff([](const DarbouxFrame& x) { return x.T; }, s);
        const Vec3 dg = diff([](const DarbouxFrame& x) { return x.g; }, s);
        kg = std::max(kg, std::abs(dot(dT, f.g)));
        kn = std::max(kn, std::abs(dot(dT, f.n)));
        tg = std::max(tg, std::abs(dot(dg, f.n)));
        dev = std::max(dev, std::abs(dot(dT, f.g) - 1.0));
    }
    if (kg_dev_from_one) *kg_dev_from_one = dev;
    std::set<CurveClass> r;
    if (kg < tol) r.insert(CurveClass::Geodesic);
    if (kn < tol) r.insert(CurveClass::AsymptoticLine);
    if (tg < tol) r.insert(CurveClass::PrincipalLine);
    return r;
}

Outcome classification() {
    using C = CurveClass;
    const std::vector<std::pair<std::string, std::set<C>>> table = {
        {"equator", {C::Geodesic, C::PrincipalLine}},
        {"latitude", {C::PrincipalLine}},
        {"ruling", {C::Geodesic, C::AsymptoticLine, C::PrincipalLine}},
        {"plane-circle", {C::AsymptoticLine, C::PrincipalLine}},
    };
    Outcome out;
    for (const auto& [name, expected] : table) {
        const SurfaceCurve c = make_preset(name);
        const bool lib = classify(c, 1e-8) == expected;
        const bool oracle = projected_classes(c, 1e-6, nullptr) == expected;
        if (!lib || !oracle) {
            out.pass = false;
            out.detail += name + (lib ? "" : " (library)") + (oracle ? "" : " (oracle)") + "; ";
        }
    }
    const SurfaceCurve lat = make_preset("latitude");
    double kg_max = 0.0, oracle_dev = 0.0;
    for (double s : lat.uniform_grid(256)) kg_max = std::max(kg_max, std::abs(darboux_invariants(lat, s).k_g - 1.0));
    projected_classes(lat, 1e-6, &oracle_dev);
    out.pass = out.pass && kg_max < 1e-8 && oracle_dev < 1e-6;
    out.detail += "latitude |k_g - 1| <= " + fmt(kg_max) + " (oracle " + fmt(oracle_dev) + ")";
    return out;
}

Outcome sphere_membership() {
    double worst = 0.0;
    for (const auto& name : all_presets()) {
        const SurfaceCurve base = make_preset(name);
        const auto grid = base.uniform_grid(1000);
        for (SmarandacheKind k : all_kinds()) {
            const SmarandacheCurve b(k, base);
            std::vector<double> x, y, z;
            for (double s : grid) {
                const Vec3 p = b.beta(s);
                x.push_back(p.x);
                y.push_back(p.y);
                z.push_back(p.z);
            }
            worst = std::max(worst, simd::max_unit_deviation(x, y, z));
        }
    }
    return {worst < 1e-9, "max ||beta| - 1| = " + fmt(worst) + " over 1000 samples, " +
                              std::string(simd::backend_name(simd::active_backend())) + " kernels"};
}

// Audits are reused by several criteria.
struct AuditCase {
    std::string preset;
    SmarandacheKind kind;
    bool degenerate;
    VerificationReport report;
};

const std::vector<AuditCase>& audits_at(double tol) {
    static std::map<double, std::vector<AuditCase>> cache;
    auto& v = cache[tol];
    if (v.empty()) {
        for (const auto& name : all_presets()) {
            const SurfaceCurve base = make_preset(name);
            const auto grid = audit_grid(base);
            for (SmarandacheKind k : all_kinds())
                v.push_back({name, k, degenerate(k, base), audit(k, base, grid, AuditOptions{tol, std::nullopt})});
        }
    }
    return v;
}

Outcome rate_formulas() {
    Outcome out;
    int confirmed = 0;
    for (const auto& a : audits_at(1e-9)) {
        const FormulaResult* f = a.report.find("rate-" + std::string(to_string(a.kind)));
        if (f && f->verdict == Verdict::Confirmed && f->compared > 0) {
            ++confirmed;
        } else {
            out.pass = false;
            out.detail += a.preset + "/" + std::string(to_string(a.kind)) + " " +
                          (f ? to_string(f->verdict) : std::string("missing")) + "; ";
        }
    }
    out.detail += std::to_string(confirmed) + "/" + std::to_string(audits_at(1e-9).size()) + " CONFIRMED at tol 1e-9";
    return out;
}

Outcome tangent_formulas() {
    Outcome out;
    int agreed = 0, skipped = 0;
    for (const auto& a : audits_at(1e-8)) {
        const FormulaResult* f = a.report.find("tangent-" + std::string(to_string(a.kind)));
        if (!f) {
            out.pass = false;
            continue;
        }
        if (a.degenerate) {
            // No tangent exists; the oracle must refuse rather than agree.
            bool throws = false;
            try {
                oracle_frenet(SmarandacheCurve(a.kind, make_preset(a.preset)), 0.5);
            } catch (const NonRegularSmarandache&) {
                throws = true;
            }
            if (f->verdict != Verdict::Undefined || !throws) out.pass = false;
            ++skipped;
            continue;
        }
        if (f->max_rel_sign_free < 1e-8 || f->max_rel < 1e-8) {
            ++agreed;
        } else {
            out.pass = false;
            out.detail += a.preset + "/" + std::string(to_string(a.kind)) + " " + to_string(f->verdict) + "; ";
        }
    }
    out.detail += std::to_string(agreed) + " agree up to sign, " + std::to_string(skipped) +
                  " single-point curves UNDEFINED";
    return out;
}

Outcome tg_on_equator() {
    const SmarandacheCurve b(SmarandacheKind::Tg, make_preset("equator"));
    double pos = 0.0, kappa = 0.0, tau = 0.0;
    for (double s : b.base().uniform_grid(200)) {
        const Vec3 p = b.beta(s);
        pos = std::max(pos, norm(p - Vec3{-std::sin(s) / sqrt2, std::cos(s) / sqrt2, 1.0 / sqrt2}));
        const OracleInvariants o = oracle_frenet(b, s);
        kappa = std::max(kappa, std::abs(o.kappa - sqrt2));
        tau = std::max(tau, std::abs(o.tau));
    }
    return {pos < 1e-12 && kappa < 1e-9 && tau < 1e-9,
            "position error " + fmt(pos) + ", |kappa - sqrt2| " + fmt(kappa) + ", |tau| " + fmt(tau)};
}

Outcome carrier_sphere() {
    Outcome out;
    double kn = 0.0, tg = 0.0, pyth = 0.0;
    int checked = 0, singular = 0;
    for (const auto& name : all_presets()) {
        const SurfaceCurve base = make_preset(name);
        for (SmarandacheKind k : all_kinds()) {
            const SmarandacheCurve b(k, base);
            if (degenerate(k, base)) {
                try {
                    oracle_sphere_darboux(b, base.total_length() / 2);
                    out.pass = false;
                } catch (const NonRegularSmarandache&) {
                    ++singular;
                }
                continue;
            }
            for (double s : audit_grid(base)) {
                const OracleInvariants o = oracle_sphere_darboux(b, s);
                kn = std::max(kn, std::abs(o.k_n + 1.0));
                tg = std::max(tg, std::abs(o.tau_g));
                pyth = std::max(pyth, std::abs(o.kappa * o.kappa - o.k_g * o.k_g - o.k_n * o.k_n));
            }
            ++checked;
        }
    }
    out.pass = out.pass && kn < 1e-8 && tg < 1e-8 && pyth < 1e-8;
    out.detail = std::to_string(checked) + " curves: |k_n* + 1| " + fmt(kn) + ", |tau_g*| " + fmt(tg) +
                 ", |kappa*^2 - k_g*^2 - k_n*^2| " + fmt(pyth) + "; " + std::to_string(singular) +
                 " single-point curves refused";
    return out;
}

Outcome audit_completeness() {
    Outcome out;
    RunConfig cfg;
    std::size_t formulas = 0;
    int discrepant = 0;
    for (const auto& name : all_presets()) {
        cfg.preset = name;
        const SurfaceCurve c = build_curve(cfg);
        const VerifyRun run = run_verify(c, cfg);
        const std::string a = dump(to_json(run));
        const std::string b = dump(to_json(run_verify(c, cfg)));
        if (a != b) {
            out.pass = false;
            out.detail += name + " not byte-identical; ";
        }
        std::vector<std::string> ids;
        for (const auto& f : run.base.formulas) ids.push_back(f.id);
        for (const auto& r : run.reports)
            for (const auto& f : r.formulas) {
                ids.push_back(f.id);
                if (f.verdict == Verdict::Discrepant) {
                    ++discrepant;
                    // Every sample carries a residual or the reason it has none.
                    bool residuals = f.samples.size() == r.grid.size();
                    for (const auto& s : f.samples) residuals = residuals && (s.compared || !s.error.empty());
                    if (!residuals) {
                        out.pass = false;
                        out.detail += f.id + " lacks residuals; ";
                    }
                }
            }
        if (ids != formula_registry()) {
            out.pass = false;
            out.detail += name + " ids differ from the registry; ";
        }
        formulas += ids.size();
    }
    out.detail += std::to_string(formula_registry().size()) + " ids per run, " + std::to_string(formulas) +
                  " verdicts over " + std::to_string(all_presets().size()) + " presets (" +
                  std::to_string(discrepant) + " DISCREPANT), reruns byte-identical";
    return out;
}

Outcome corollary_gating() {
    Outcome out;
    const ClosedFormContext ctx{pi / 2, 0.0};
    auto mismatch = [&](SmarandacheKind k, const char* preset) {
        try {
            corollary(k, make_preset(preset), 1.0, ctx);
        } catch (const ClassificationMismatch&) {
            return true;
        }
        return false;
    };
    const bool gated = mismatch(SmarandacheKind::Tn, "equator") && mismatch(SmarandacheKind::Tg, "latitude") &&
                       mismatch(SmarandacheKind::gn, "helix") && mismatch(SmarandacheKind::Tg, "plane-circle");
    const VerificationReport& r = audits_at(1e-8)[0].report;  // equator, Tg
    const FormulaResult* f = r.find("kappa-star-corollary1-Tg");
    bool sign_recorded = f && f->compared == static_cast<int>(r.grid.size());
    int agree = 0;
    if (f)
        for (const auto& s : f->samples) agree += s.sign_agrees ? 1 : 0;
    const double err = f ? f->max_rel_sign_free * sqrt2 : INFINITY;
    out.pass = gated && sign_recorded && err < 1e-8;
    out.detail = std::string(gated ? "mismatches raised" : "missing ClassificationMismatch") +
                 ", equator ||kappa*| - sqrt2| " + fmt(err) + ", sign agrees at " + std::to_string(agree) + "/" +
                 std::to_string(f ? f->compared : 0) + " samples (" + (f ? to_string(f->verdict) : "?") + ")";
    return out;
}

Outcome dsl() {
    fixtures::RandomExpr gen(20240917);
    const std::set<std::string> vars{"x"};
    int accepted = 0, bad = 0;
    double worst = 0.0;
    for (int attempt = 0; accepted < 200 && attempt < 5000; ++attempt) {
        const Expr e = gen.next();
        if (free_variables(e).empty()) continue;
        const double x = gen.point();
        const double d = evaluate(differentiate(e, "x"), {{"x", x}});
        if (!std::isfinite(d) || std::abs(evaluate(differentiate(e, "x", 2), {{"x", x}})) > 1e4 ||
            std::abs(evaluate(e, {{"x", x}})) > 1e6)
            continue;
        ++accepted;
        const double rel = std::abs(d - fixtures::central_difference(e, x)) / std::max(1.0, std::abs(d));
        worst = std::max(worst, rel);
        if (!structurally_equal(parse(to_string(e), vars), e)) ++bad;
    }
    return {accepted == 200 && worst < 1e-7 && bad == 0,
            std::to_string(accepted) + " expressions, max rel error " + fmt(worst) + ", " + std::to_string(bad) +
                " round-trip failures"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"frame validity", frame_validity},
        {"classification truth table", classification},
        {"sphere membership", sphere_membership},
        {"rate formulas", rate_formulas},
        {"tangent formulas", tangent_formulas},
        {"Tg on the equator", tg_on_equator},
        {"carrier-sphere oracle", carrier_sphere},
        {"audit completeness and determinism", audit_completeness},
        {"corollary gating", corollary_gating},
        {"expression DSL", dsl},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    return failed;
}
