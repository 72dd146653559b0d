#include "darboux/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace darboux {

namespace {

const std::set<std::string> kCurveVars{"t"};

using SpeedJet = Jet<2>;

/// F(tau(sigma)) for a series tau with zero constant term.
SJet compose(const SJet& f, const SJet& tau) {
    SJet r(f.c[kSeriesLength - 1]);
    for (std::size_t j = kSeriesLength - 1; j-- > 0;) {
        r = r * tau;
        r.c[0] += f.c[j];
    }
    return r;
}

JetVec compose(const JetVec& f, const SJet& tau) {
    return {compose(f.x, tau), compose(f.y, tau), compose(f.z, tau)};
}

/// Series of t(s) - t0 from the series of dt/ds = 1 / speed(t0 + h).
SJet inverse_arc_series(const SJet& inv_speed) {
    SJet tau(0.0);
    for (std::size_t k = 0; k + 1 < kSeriesLength; ++k) {
        const SJet w = compose(inv_speed, tau);
        tau.c[k + 1] = w.c[k] / static_cast<double>(k + 1);
    }
    return tau;
}

template <typename S>
S eval_t(const Expr& e, const S& t) {
    const Binding<S> b[] = {{"t", t}};
    return evaluate_with<S>(e, std::span<const Binding<S>>(b));
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

Vec3 dvalue(const JetVec& v) { return value_of(diff(v)); }

double curve_speed(const Surface& surface, const Expr& u_of_t, const Expr& v_of_t, double t) {
    const SpeedJet tj = SpeedJet::variable(t);
    const SpeedJet u = eval_t(u_of_t, tj);
    const SpeedJet v = eval_t(v_of_t, tj);
    const Vec3T<SpeedJet> p = surface.position_of(u, v);
    return norm(Vec3{p.x.c[1], p.y.c[1], p.z.c[1]});
}

// Holds its own copies so the map stays valid when the curve is copied.
ScalarFn speed_function(const Surface& surface, const Expr& u_of_t, const Expr& v_of_t) {
    return [surface, u_of_t, v_of_t](double t) { return curve_speed(surface, u_of_t, v_of_t, t); };
}

}  // namespace

SurfaceCurve::SurfaceCurve(Surface surface, Expr u_of_t, Expr v_of_t, double t_lo, double t_hi, std::string name)
    : surface_(std::move(surface)),
      u_(std::move(u_of_t)),
      v_(std::move(v_of_t)),
      name_(std::move(name)),
      arc_(speed_function(surface_, u_, v_), t_lo, t_hi) {
    // The arc map above already rejected non-regular speed; check the domain.
    constexpr int kProbe = 256;
    for (int i = 0; i <= kProbe; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / kProbe;
        const double u = eval_t(u_, t);
        const double v = eval_t(v_, t);
        if (!surface_.contains(u, v))
            throw OutOfDomain("curve leaves the domain of '" + surface_.name() + "' at t = " + fmt(t));
    }
}

SurfaceCurve SurfaceCurve::from_strings(Surface surface, std::string_view u_of_t, std::string_view v_of_t,
                                        double t_lo, double t_hi, std::string name) {
    return SurfaceCurve(std::move(surface), parse(u_of_t, kCurveVars), parse(v_of_t, kCurveVars), t_lo, t_hi,
                        std::move(name));
}

SurfaceCurve SurfaceCurve::with_flipped_normal(bool flip) const {
    SurfaceCurve c = *this;
    c.surface_ = surface_.with_flipped_normal(flip);
    return c;
}

double SurfaceCurve::speed(double t) const { return curve_speed(surface_, u_, v_, t); }

std::vector<double> SurfaceCurve::uniform_grid(int n) const {
    std::vector<double> s(static_cast<std::size_t>(std::max(n, 1)));
    const double length = total_length();
    if (n == 1) {
        s[0] = 0.0;
        return s;
    }
    for (int i = 0; i < n; ++i) s[i] = i + 1 == n ? length : length * i / (n - 1);
    return s;
}

LocalExpansion SurfaceCurve::expand(double s) const {
    const double t0 = arc_.parameter_at(s);
    const SJet tj = SJet::variable(t0);
    const SJet u = eval_t(u_, tj);
    const SJet v = eval_t(v_, tj);

    const JetVec p_t = surface_.position_of(u, v);
    const JetVec nraw_t = surface_.raw_normal_of(u, v);

    const SJet speed_t = norm(diff(p_t));
    if (!(speed_t.value() >= kRegularityThreshold))
        throw NonRegularCurve("speed " + fmt(speed_t.value()) + " at t = " + fmt(t0));
    const SJet tau = inverse_arc_series(SJet(1.0) / speed_t);

    LocalExpansion out;
    out.s = s;
    out.t = t0;
    out.position = compose(p_t, tau);
    const JetVec nraw = compose(nraw_t, tau);
    const SJet nlen = norm(nraw);
    if (!(nlen.value() > kNormalThreshold))
        throw DegenerateParameterization("|r_u x r_v| = " + fmt(nlen.value()) + " at t = " + fmt(t0));

    out.T = diff(out.position);
    out.n = nraw / nlen;
    out.g = cross(out.n, out.T);

    const JetVec dT = diff(out.T);
    out.k_g = dot(dT, out.g);
    out.k_n = dot(dT, out.n);
    out.tau_g = dot(diff(out.g), out.n);
    return out;
}

DarbouxFrame darboux_frame(const SurfaceCurve& curve, double s) {
    const LocalExpansion e = curve.expand(s);
    return {s, value_of(e.position), value_of(e.T), value_of(e.g), value_of(e.n)};
}

DarbouxInvariants darboux_invariants(const SurfaceCurve& curve, double s) {
    const LocalExpansion e = curve.expand(s);
    return {e.k_g.value(), e.k_n.value(), e.tau_g.value()};
}

InvariantDerivatives invariant_derivatives(const LocalExpansion& e) {
    InvariantDerivatives d;
    for (std::size_t k = 0; k < 3; ++k) {
        d.k_g[k] = e.k_g.derivative(k);
        d.k_n[k] = e.k_n.derivative(k);
        d.tau_g[k] = e.tau_g.derivative(k);
    }
    return d;
}

InvariantDerivatives invariant_derivatives(const SurfaceCurve& curve, double s) {
    return invariant_derivatives(curve.expand(s));
}

FrenetData frenet_invariants(const LocalExpansion& e) {
    const JetVec dT = diff(e.T);
    const SJet kappa = norm(dT);
    if (!(kappa.value() >= kCurvatureThreshold))
        throw VanishingCurvature("kappa = " + fmt(kappa.value()) + " at s = " + fmt(e.s));
    const JetVec N = dT / kappa;
    const JetVec B = cross(e.T, N);
    const SJet tau = dot(diff(N), B);
    return {kappa.value(), tau.value(), value_of(N), value_of(B)};
}

FrenetData frenet_invariants(const SurfaceCurve& curve, double s) { return frenet_invariants(curve.expand(s)); }

double frame_angle(const FrameSample& sample) {
    if (!sample.N || !sample.B)
        throw VanishingCurvature("frame angle undefined at s = " + fmt(sample.s));
    return std::atan2(dot(sample.g, *sample.B), dot(sample.g, *sample.N));
}

FrameSample sample(const LocalExpansion& e) {
    FrameSample fs;
    fs.s = e.s;
    fs.t = e.t;
    fs.position = value_of(e.position);
    fs.T = value_of(e.T);
    fs.g = value_of(e.g);
    fs.n = value_of(e.n);
    fs.k_g = e.k_g.value();
    fs.k_n = e.k_n.value();
    fs.tau_g = e.tau_g.value();
    fs.kappa = norm(dvalue(e.T));
    if (fs.kappa >= kCurvatureThreshold) {
        const FrenetData f = frenet_invariants(e);
        fs.N = f.N;
        fs.B = f.B;
        fs.tau = f.tau;
        fs.phi = frame_angle(fs);
    }
    return fs;
}

FrameSample sample(const SurfaceCurve& curve, double s) { return sample(curve.expand(s)); }

std::vector<FrameSample> sample_grid(const SurfaceCurve& curve, const std::vector<double>& s_values) {
    std::vector<FrameSample> out;
    out.reserve(s_values.size());
    std::optional<double> prev;
    for (double s : s_values) {
        FrameSample fs = sample(curve, s);
        if (fs.phi) {
            if (prev) fs.phi = nearest_branch(*fs.phi, *prev);
            prev = fs.phi;
        }
        out.push_back(fs);
    }
    return out;
}

std::vector<double> stencil_offsets(double s, double h, double length) {
    // Largest shift keeping all five nodes inside [0, length].
    double first = -2.0;
    if (s - 2.0 * h < 0.0) first = -std::floor(s / h + 1e-9);
    if (s + (first + 4.0) * h > length) first = std::ceil((length - s) / h - 1e-9) - 4.0;
    first = std::clamp(first, -4.0, 0.0);
    return {first, first + 1.0, first + 2.0, first + 3.0, first + 4.0};
}

double frame_angle_rate(const SurfaceCurve& curve, double s, double h) {
    const auto offsets = stencil_offsets(s, h, curve.total_length());
    const double centre = frame_angle(sample(curve, s));
    std::vector<double> phi(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        const double si = std::clamp(s + offsets[i] * h, 0.0, curve.total_length());
        phi[i] = nearest_branch(frame_angle(sample(curve, si)), centre);
    }
    return stencil_derivative(phi, offsets, h);
}

double darboux_system_residual(const LocalExpansion& e) {
    const Vec3 T = value_of(e.T), g = value_of(e.g), n = value_of(e.n);
    const double kg = e.k_g.value(), kn = e.k_n.value(), tg = e.tau_g.value();
    const Vec3 rT = dvalue(e.T) - (kg * g + kn * n);
    const Vec3 rg = dvalue(e.g) - (-kg * T + tg * n);
    const Vec3 rn = dvalue(e.n) - (-kn * T - tg * g);
    return std::max({norm(rT), norm(rg), norm(rn)});
}

double frenet_system_residual(const LocalExpansion& e) {
    const JetVec dT = diff(e.T);
    const SJet kappa = norm(dT);
    if (!(kappa.value() >= kCurvatureThreshold))
        throw VanishingCurvature("kappa = " + fmt(kappa.value()) + " at s = " + fmt(e.s));
    const JetVec N = dT / kappa;
    const JetVec B = cross(e.T, N);
    const double k = kappa.value();
    const double tau = dot(diff(N), B).value();
    const Vec3 rT = dvalue(e.T) - k * value_of(N);
    const Vec3 rN = dvalue(N) - (-k * value_of(e.T) + tau * value_of(B));
    const Vec3 rB = dvalue(B) - (-tau * value_of(N));
    return std::max({norm(rT), norm(rN), norm(rB)});
}

double gram_deviation(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3* v[3] = {&a, &b, &c};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(dot(*v[i], *v[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}

std::string to_string(CurveClass c) {
    switch (c) {
    case CurveClass::Geodesic: return "Geodesic";
    case CurveClass::AsymptoticLine: return "AsymptoticLine";
    case CurveClass::PrincipalLine: return "PrincipalLine";
    }
    return "?";
}

std::set<CurveClass> classify(const SurfaceCurve& curve, double tol, int samples) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
    double kg = 0.0, kn = 0.0, tg = 0.0;
    for (double s : curve.uniform_grid(samples)) {
        const DarbouxInvariants inv = darboux_invariants(curve, s);
        kg = std::max(kg, std::abs(inv.k_g));
        kn = std::max(kn, std::abs(inv.k_n));
        tg = std::max(tg, std::abs(inv.tau_g));
    }
    std::set<CurveClass> out;
    if (kg < tol) out.insert(CurveClass::Geodesic);
    if (kn < tol) out.insert(CurveClass::AsymptoticLine);
    if (tg < tol) out.insert(CurveClass::PrincipalLine);
    return out;
}

std::vector<PresetInfo> preset_catalog() {
    return {
        {"equator", "unit sphere, u = pi/2, v = t, t in [0, 2 pi] (geodesic, principal line)"},
        {"latitude", "unit sphere, u = pi/4, v = t, t in [0, 2 pi] (principal line, k_g = 1)"},
        {"helix", "unit cylinder, u = t, v = t, t in [0, 2 pi]: (cos t, sin t, t)"},
        {"ruling", "unit cylinder, u = 0, v = t, t in [0, 2] (straight line)"},
        {"plane-circle", "plane z = 0, unit circle u = cos t, v = sin t, t in [0, 2 pi]"},
    };
}

SurfaceCurve make_preset(const std::string& name, bool flip_normal) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto build = [&]() -> SurfaceCurve {
        if (name == "equator") return SurfaceCurve::from_strings(make_sphere(), "pi/2", "t", 0.0, two_pi, name);
        if (name == "latitude") return SurfaceCurve::from_strings(make_sphere(), "pi/4", "t", 0.0, two_pi, name);
        if (name == "helix") return SurfaceCurve::from_strings(make_cylinder(1.0), "t", "t", 0.0, two_pi, name);
        if (name == "ruling") return SurfaceCurve::from_strings(make_cylinder(1.0), "0", "t", 0.0, 2.0, name);
        if (name == "plane-circle")
            return SurfaceCurve::from_strings(make_plane(), "cos(t)", "sin(t)", 0.0, two_pi, name);
        throw std::invalid_argument("unknown preset '" + name + "'");
    };
    SurfaceCurve c = build();
    return flip_normal ? c.with_flipped_normal(true) : c;
}

}  // namespace darboux
