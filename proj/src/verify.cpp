#include "darboux/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/numeric.hpp"

namespace darboux {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::vector<double> as_vec(double x) { return {x}; }
std::vector<double> as_vec(const Vec3& v) { return {v.x, v.y, v.z}; }

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string kind_suffix(SmarandacheKind k) { return "-" + std::string(to_string(k)); }

const char* corollary_name(SmarandacheKind k) {
    switch (k) {
    case SmarandacheKind::Tg: return "corollary1";
    case SmarandacheKind::Tn: return "corollary2";
    case SmarandacheKind::gn: return "corollary3";
    default: return nullptr;
    }
}

// First derivative at index i of values on a uniform grid: a 5-point stencil
// shifted inward near the ends.
std::optional<double> grid_derivative(const std::vector<std::optional<double>>& values, std::size_t i, double h) {
    const std::size_t n = values.size();
    if (n < 5) return std::nullopt;
    const std::size_t start = std::min(i >= 2 ? i - 2 : 0, n - 5);
    double offsets[5];
    double v[5];
    for (std::size_t j = 0; j < 5; ++j) {
        const auto& x = values[start + j];
        if (!x) return std::nullopt;
        offsets[j] = static_cast<double>(start + j) - static_cast<double>(i);
        v[j] = *x;
    }
    return stencil_derivative(v, offsets, h);
}

void unwrap_optional(std::vector<std::optional<double>>& a) {
    std::optional<double> prev;
    for (auto& x : a) {
        if (!x) continue;
        if (prev) x = nearest_branch(*x, *prev);
        prev = x;
    }
}

double grid_spacing(const std::vector<double>& grid) {
    return grid.size() > 1 ? (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1) : 0.0;
}

std::vector<LocalExpansion> expand_all(const SurfaceCurve& base, const std::vector<double>& grid) {
    std::vector<LocalExpansion> out;
    out.reserve(grid.size());
    for (double s : grid) out.push_back(base.expand(s));
    return out;
}

// Builds FormulaSamples id by id; each sample needs a closed and an oracle
// side or an error.
class Collector {
public:
    explicit Collector(std::vector<std::string> ids) : ids_(std::move(ids)), samples_(ids_.size()) {}

    void reserve(std::size_t n) {
        for (auto& v : samples_) v.reserve(n);
    }

    template <typename C, typename O>
    void add(const std::string& id, double s, const C& closed, const O& oracle) {
        FormulaSample fs;
        fs.s = s;
        fs.closed = as_vec(closed);
        fs.oracle = as_vec(oracle);
        slot(id).push_back(std::move(fs));
    }

    // The oracle side failed: the sample is excluded.
    void skip(const std::string& id, double s, const std::string& why) {
        FormulaSample fs;
        fs.s = s;
        fs.error = why;
        slot(id).push_back(std::move(fs));
    }

    std::vector<FormulaResult> finish(double tol) {
        std::vector<FormulaResult> out;
        for (std::size_t i = 0; i < ids_.size(); ++i)
            out.push_back(compare(ids_[i], std::move(samples_[i]), formula_tolerance(ids_[i], tol)));
        return out;
    }

private:
    std::vector<FormulaSample>& slot(const std::string& id) {
        const auto it = std::find(ids_.begin(), ids_.end(), id);
        if (it == ids_.end()) throw std::logic_error("formula id not registered: " + id);
        return samples_[static_cast<std::size_t>(it - ids_.begin())];
    }

    std::vector<std::string> ids_;
    std::vector<std::vector<FormulaSample>> samples_;
};

}  // namespace

OracleInvariants oracle_frenet(const SmarandacheCurve& beta, const LocalExpansion& e) {
    const JetVec b = beta.beta_series(e);
    const JetVec b1 = diff(b);
    const Vec3 d1 = value_of(b1);
    const Vec3 d2 = derivative_of(b, 2);
    const Vec3 d3 = derivative_of(b, 3);

    OracleInvariants o;
    o.s = e.s;
    o.speed = norm(d1);
    if (!(o.speed > kOracleSpeedThreshold))
        throw NonRegularSmarandache(std::string(to_string(beta.kind())) + " curve has |beta'| = " + fmt(o.speed) +
                                    " at s = " + fmt(e.s));
    const Vec3 c12 = cross(d1, d2);
    const double c12n = norm(c12);
    if (!(c12n > 1e-12))
        throw VanishingCurvature("|beta' x beta''| = " + fmt(c12n) + " at s = " + fmt(e.s));

    const SJet sigma = norm(b1);
    const JetVec T = b1 / sigma;
    const Vec3 dT_ds = derivative_of(T, 1);
    const Vec3 dT = dT_ds / o.speed;
    o.T = value_of(T);
    o.kappa = norm(dT);
    o.N = dT / o.kappa;
    o.B = cross(o.T, o.N);
    o.tau = det(d1, d2, d3) / (c12n * c12n);
    o.dT_ds = dT_ds;
    o.beta3 = d3;
    return o;
}

OracleInvariants oracle_frenet(const SmarandacheCurve& beta, double s) {
    return oracle_frenet(beta, beta.base().expand(s));
}

OracleInvariants oracle_sphere_darboux(const SmarandacheCurve& beta, const LocalExpansion& e) {
    OracleInvariants o = oracle_frenet(beta, e);
    const JetVec b = beta.beta_series(e);
    const JetVec b1 = diff(b);
    const SJet sigma = norm(b1);
    const JetVec T = b1 / sigma;
    const JetVec g = cross(b, T);
    const Vec3 dT = derivative_of(T, 1) / o.speed;
    const Vec3 dg = derivative_of(g, 1) / o.speed;
    o.n_star = value_of(b);
    o.g_star = value_of(g);
    o.k_g = dot(dT, o.g_star);
    o.k_n = dot(dT, o.n_star);
    o.tau_g = dot(dg, o.n_star);
    o.phi_star = std::atan2(dot(o.g_star, o.B), dot(o.g_star, o.N));
    return o;
}

OracleInvariants oracle_sphere_darboux(const SmarandacheCurve& beta, double s) {
    return oracle_sphere_darboux(beta, beta.base().expand(s));
}

double phi_star_rate(const SmarandacheCurve& beta, double s, double h) {
    const double length = beta.base().total_length();
    if (h <= 0.0) h = length / 256.0;
    const auto offsets = stencil_offsets(s, h, length);
    const OracleInvariants centre = oracle_sphere_darboux(beta, s);
    std::vector<double> phi(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        const double si = std::clamp(s + offsets[i] * h, 0.0, length);
        phi[i] = nearest_branch(oracle_sphere_darboux(beta, si).phi_star, centre.phi_star);
    }
    return stencil_derivative(phi, offsets, h) / centre.speed;
}

ClosedFormContext make_context(const SmarandacheCurve& beta, double s, double h) {
    return {oracle_sphere_darboux(beta, s).phi_star, phi_star_rate(beta, s, h)};
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Confirmed: return "CONFIRMED";
    case Verdict::SignOnly: return "SIGN_ONLY";
    case Verdict::Discrepant: return "DISCREPANT";
    case Verdict::Undefined: return "UNDEFINED";
    }
    return "?";
}

const FormulaResult* VerificationReport::find(const std::string& id) const {
    for (const auto& f : formulas)
        if (f.id == id) return &f;
    return nullptr;
}

std::vector<double> audit_grid(const SurfaceCurve& base, int samples, double margin) {
    const double length = base.total_length();
    const double lo = margin * length;
    const double hi = (1.0 - margin) * length;
    std::vector<double> s(static_cast<std::size_t>(std::max(samples, 1)));
    if (samples <= 1) {
        s[0] = 0.5 * length;
        return s;
    }
    for (int i = 0; i < samples; ++i) s[i] = lo + (hi - lo) * i / (samples - 1);
    return s;
}

std::vector<std::string> formula_ids(SmarandacheKind k) {
    const std::string K = kind_suffix(k);
    std::vector<std::string> ids = {"rate" + K,      "tangent" + K, "kappa-star" + K, "normal-star" + K,
                                    "binormal-star" + K, "tau-star" + K, "gstar" + K,  "nstar" + K,
                                    "kg-star" + K,   "kn-star" + K, "taug-star" + K};
    if (k == SmarandacheKind::Tg) ids.push_back("taug-star-Tg-single");
    for (Family f : families(k)) ids.push_back("coeff-" + std::string(to_string(f)) + K);
    if (const char* c = corollary_name(k)) {
        for (const char* q : {"kappa-star", "tau-star", "kg-star", "kn-star", "taug-star"})
            ids.push_back(std::string(q) + "-" + c + K);
    }
    return ids;
}

std::vector<std::string> base_formula_ids() { return {"base-kg-relation", "base-kn-relation", "base-taug-relation"}; }

std::vector<std::string> formula_registry() {
    std::vector<std::string> ids = base_formula_ids();
    for (SmarandacheKind k : all_kinds()) {
        const auto more = formula_ids(k);
        ids.insert(ids.end(), more.begin(), more.end());
    }
    return ids;
}

double formula_tolerance(const std::string& id, double tol) {
    const bool stencil = id.rfind("taug-star", 0) == 0 || id == "base-taug-relation";
    return stencil ? std::max(tol, kStencilTolerance) : tol;
}

FormulaResult compare(const std::string& id, std::vector<FormulaSample> samples, double tol) {
    FormulaResult r;
    r.id = id;
    r.tol = tol;
    bool closed_failed = false;
    for (auto& fs : samples) {
        fs.compared = false;
        if (fs.oracle.empty() || !all_finite(fs.oracle)) {
            if (fs.error.empty()) fs.error = "oracle value is not finite";
            ++r.failed;
            continue;
        }
        if (fs.closed.empty() || !all_finite(fs.closed) || fs.closed.size() != fs.oracle.size()) {
            if (fs.error.empty()) fs.error = "closed form is not finite";
            ++r.failed;
            closed_failed = true;
            continue;
        }
        double abs = 0.0, flip = 0.0, mag = 0.0, scale = 0.0, inner = 0.0;
        for (std::size_t j = 0; j < fs.oracle.size(); ++j) {
            const double c = fs.closed[j], o = fs.oracle[j];
            abs = std::max(abs, std::abs(c - o));
            flip = std::max(flip, std::abs(c + o));
            mag = std::max(mag, std::abs(std::abs(c) - std::abs(o)));
            scale = std::max(scale, std::abs(o));
            inner += c * o;
        }
        scale = std::max(1.0, scale);
        fs.abs_residual = abs;
        fs.rel_residual = abs / scale;
        if (fs.oracle.size() == 1) {
            const double c = fs.closed[0], o = fs.oracle[0];
            const bool tiny = std::abs(c) < 1e-12 && std::abs(o) < 1e-12;
            fs.sign_agrees = tiny || std::signbit(c) == std::signbit(o);
            r.max_rel_sign_free = std::max(r.max_rel_sign_free, mag / scale);
        } else {
            fs.sign_agrees = inner >= 0.0;
            r.max_rel_sign_free = std::max(r.max_rel_sign_free, flip / scale);
        }
        fs.compared = true;
        ++r.compared;
        r.max_abs = std::max(r.max_abs, fs.abs_residual);
        r.max_rel = std::max(r.max_rel, fs.rel_residual);
    }
    r.samples = std::move(samples);

    if (r.compared == 0 && !closed_failed) {
        r.verdict = Verdict::Undefined;
        r.note = r.samples.empty() ? "no samples" : "no sample where the oracle is defined";
    } else if (closed_failed) {
        r.verdict = Verdict::Discrepant;
        r.note = "closed form undefined where the oracle is defined";
    } else if (r.max_rel < tol) {
        r.verdict = Verdict::Confirmed;
    } else if (r.max_rel_sign_free < tol) {
        r.verdict = Verdict::SignOnly;
    } else {
        r.verdict = Verdict::Discrepant;
    }
    return r;
}

VerificationReport audit(SmarandacheKind k, const SurfaceCurve& base, const std::vector<LocalExpansion>& local,
                         const AuditOptions& opts) {
    VerificationReport rep;
    rep.base = base.name();
    rep.kind = k;
    rep.tol = opts.tol;
    rep.phi_star_override = opts.phi_star;
    for (const auto& e : local) rep.grid.push_back(e.s);

    const SmarandacheCurve beta(k, base);
    const std::string K = kind_suffix(k);
    const double c = combination_scale(k);
    const std::size_t n = local.size();

    // Oracle pass first: phi* must be unwrapped along the grid before it is
    // differentiated.
    std::vector<std::optional<OracleInvariants>> oracle(n);
    std::vector<std::string> oracle_error(n);
    std::vector<std::optional<double>> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            oracle[i] = oracle_sphere_darboux(beta, local[i]);
            phi[i] = oracle[i]->phi_star;
        } catch (const Error& err) {
            oracle_error[i] = err.what();
        }
    }
    unwrap_optional(phi);
    const double h = grid_spacing(rep.grid);

    std::optional<std::string> gate_error;
    const auto need = corollary_class(k);
    if (need) {
        const auto classes = classify(base, 1e-6);
        if (!classes.count(*need))
            gate_error = "ClassificationMismatch: base is not " + to_string(*need) + " at tol 1e-06";
    }

    Collector col(formula_ids(k));
    col.reserve(n);
    const auto fam = families(k);
    const char* cor = corollary_name(k);
    auto cid = [&](const char* q) { return std::string(q) + "-" + cor + K; };

    for (std::size_t i = 0; i < n; ++i) {
        const LocalExpansion& e = local[i];
        const double s = e.s;
        const InvariantDerivatives d = invariant_derivatives(e);
        const DarbouxInvariants inv{d.k_g[0], d.k_n[0], d.tau_g[0]};
        const DarbouxFrame frame{s, value_of(e.position), value_of(e.T), value_of(e.g), value_of(e.n)};

        // The rate is compared against |beta'| even where beta is singular.
        col.add("rate" + K, s, printed_rate(k, inv), norm(value_of(diff(beta.beta_series(e)))));

        if (!oracle[i]) {
            for (const auto& id : formula_ids(k))
                if (id != "rate" + K) col.skip(id, s, oracle_error[i]);
            continue;
        }
        const OracleInvariants& o = *oracle[i];

        ClosedFormContext ctx;
        std::string ctx_error;
        if (opts.phi_star) {
            ctx = {*opts.phi_star, 0.0};
        } else {
            ctx.phi_star = *phi[i];
            if (const auto dp = grid_derivative(phi, i, h))
                ctx.dphi_star = *dp / o.speed;
            else
                ctx_error = "d phi*/ds* unavailable at this sample";
        }

        const ClosedFormInvariants p = printed_closed_form(k, d, ctx);
        const Vec3 T_o = to_frame(o.T, frame);
        col.add("tangent" + K, s, p.T_star, T_o);
        col.add("kappa-star" + K, s, p.kappa_star, o.kappa);
        col.add("normal-star" + K, s, p.N_star, to_frame(o.N, frame));
        col.add("binormal-star" + K, s, p.B_star, to_frame(o.B, frame));
        col.add("tau-star" + K, s, p.tau_star, o.tau);
        col.add("gstar" + K, s, p.g_star, to_frame(o.g_star, frame));
        col.add("nstar" + K, s, p.n_star, to_frame(o.n_star, frame));
        col.add("kg-star" + K, s, p.k_g_star, o.k_g);
        col.add("kn-star" + K, s, p.k_n_star, o.k_n);
        if (ctx_error.empty()) {
            col.add("taug-star" + K, s, p.tau_g_star, o.tau_g);
            if (p.tau_g_star_single) col.add("taug-star-Tg-single", s, *p.tau_g_star_single, o.tau_g);
        } else {
            col.skip("taug-star" + K, s, ctx_error);
            if (k == SmarandacheKind::Tg) col.skip("taug-star-Tg-single", s, ctx_error);
        }

        // Oracle coefficient triples: the tangent-derivative family from
        // dT*/ds, the binormal family as the printed determinant applied to it,
        // the third-derivative family from beta'''.
        const double v = (c * o.speed) * (c * o.speed);
        const Vec3 F1 = to_frame(o.dT_ds, frame) * (-std::pow(v, 1.5));
        const Vec3 F2 = cross(T_o * std::sqrt(v), F1);
        const Vec3 F3 = to_frame(o.beta3, frame) * (-c);
        col.add("coeff-" + std::string(to_string(fam[0])) + K, s, coefficients(fam[0], d), F1);
        col.add("coeff-" + std::string(to_string(fam[1])) + K, s, coefficients(fam[1], d), F2);
        col.add("coeff-" + std::string(to_string(fam[2])) + K, s, coefficients(fam[2], d), F3);

        if (cor) {
            if (gate_error) {
                for (const char* q : {"kappa-star", "tau-star", "kg-star", "kn-star", "taug-star"})
                    col.skip(cid(q), s, *gate_error);
            } else {
                const CorollaryInvariants ci = printed_corollary(k, d, ctx);
                col.add(cid("kappa-star"), s, ci.kappa_star, o.kappa);
                col.add(cid("tau-star"), s, ci.tau_star, o.tau);
                col.add(cid("kg-star"), s, ci.k_g_star, o.k_g);
                col.add(cid("kn-star"), s, ci.k_n_star, o.k_n);
                if (ctx_error.empty())
                    col.add(cid("taug-star"), s, ci.tau_g_star, o.tau_g);
                else
                    col.skip(cid("taug-star"), s, ctx_error);
            }
        }
    }

    rep.formulas = col.finish(opts.tol);
    if (gate_error) {
        for (auto& f : rep.formulas)
            if (f.id.find(cor) != std::string::npos) f.note = *gate_error;
    }
    return rep;
}

VerificationReport audit(SmarandacheKind k, const SurfaceCurve& base, const std::vector<double>& grid,
                         const AuditOptions& opts) {
    return audit(k, base, expand_all(base, grid), opts);
}

VerificationReport audit_base(const SurfaceCurve& base, const std::vector<LocalExpansion>& local,
                              const AuditOptions& opts) {
    VerificationReport rep;
    rep.base = base.name();
    rep.tol = opts.tol;
    for (const auto& e : local) rep.grid.push_back(e.s);

    const std::size_t n = local.size();
    std::vector<FrameSample> fs(n);
    std::vector<std::optional<double>> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        fs[i] = sample(local[i]);
        phi[i] = fs[i].phi;
    }
    unwrap_optional(phi);
    const double h = grid_spacing(rep.grid);

    Collector col(base_formula_ids());
    col.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FrameSample& f = fs[i];
        if (!phi[i]) {
            const std::string why = "kappa = " + fmt(f.kappa) + " below the curvature threshold";
            for (const auto& id : base_formula_ids()) col.skip(id, f.s, why);
            continue;
        }
        col.add("base-kg-relation", f.s, f.kappa * std::cos(*phi[i]), f.k_g);
        col.add("base-kn-relation", f.s, f.kappa * std::sin(*phi[i]), f.k_n);
        if (const auto dp = grid_derivative(phi, i, h))
            col.add("base-taug-relation", f.s, *f.tau + *dp, f.tau_g);
        else
            col.skip("base-taug-relation", f.s, "d phi/ds unavailable at this sample");
    }
    rep.formulas = col.finish(opts.tol);
    return rep;
}

VerificationReport audit_base(const SurfaceCurve& base, const std::vector<double>& grid, const AuditOptions& opts) {
    return audit_base(base, expand_all(base, grid), opts);
}

}  // namespace darboux
