#include "darboux/smarandache.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "darboux/errors.hpp"

namespace darboux {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double sq(double x) { return x * x; }

// Invariants and derivatives under short names.
struct In {
    double kg, kn, tg;
    double kg1, kn1, tg1;
    double kg2, kn2, tg2;

    explicit In(const InvariantDerivatives& d)
        : kg(d.k_g[0]), kn(d.k_n[0]), tg(d.tau_g[0]),
          kg1(d.k_g[1]), kn1(d.k_n[1]), tg1(d.tau_g[1]),
          kg2(d.k_g[2]), kn2(d.k_n[2]), tg2(d.tau_g[2]) {}
};

InvariantDerivatives from_values(const DarbouxInvariants& d) {
    InvariantDerivatives r;
    r.k_g[0] = d.k_g;
    r.k_n[0] = d.k_n;
    r.tau_g[0] = d.tau_g;
    return r;
}

// ---- Tg ----

double radicand_Tg(const In& x) { return 2 * sq(x.kg) + sq(x.kn + x.tg); }

Vec3 Gamma(const In& x) {
    const double K = x.kn + x.tg;
    const double v = radicand_Tg(x);
    return {K * (x.kg * (x.kn1 + x.tg1 - x.kn * x.kg - x.tg * x.kg) - x.kg1 * K - x.kn * v) - 2 * std::pow(x.kg, 4),
            K * (-x.kg * (x.kn1 + x.tg1 + x.kn * x.kg + x.tg * x.kg) + x.kg1 * K - x.tg * v) - 2 * std::pow(x.kg, 4),
            x.kg * K * (-2 * x.kg1 - x.kn + x.tg * K) + 2 * sq(x.kg) * (x.kg * x.tg + x.kn1 + x.tg1)};
}

Vec3 mu(const In& x) {
    const Vec3 G = Gamma(x);
    const double K = x.kn + x.tg;
    return {x.kg * G.z - K * G.y, K * G.x + x.kg * G.z, -x.kg * G.y - x.kg * G.x};
}

Vec3 eta(const In& x) {
    const double K = x.kn + x.tg;
    const double s3 = sq(x.tg) + sq(x.kn) + sq(x.kg);
    return {x.kg2 + 2 * x.kn * (x.kn1 + x.tg1) + x.kg * (3 * x.kg1 - sq(x.tg) - sq(x.kn) - sq(x.kg)) + x.kn1 * K,
            -x.kg2 + 2 * x.tg * (x.kn1 + x.tg1) + x.kg * (3 * x.kg1 + s3) + x.tg1 * K,
            -x.kg2 - x.tg2 + x.kg * (x.kn1 - x.tg1) + K * s3 + 2 * x.kg1 * (x.kn - x.tg)};
}

// Quotient of the torsion display without its -1/sqrt2 prefix.
double tau_quotient_Tg(const In& x) {
    const double K = x.kn + x.tg;
    const Vec3 e = eta(x);
    const double num = (e.x + e.y) * (x.kg * (x.kn1 + x.tg1) - x.kg1 * K) +
                       radicand_Tg(x) * (x.tg * e.x - x.kn * e.y + x.kg * e.z);
    const double den = 2 * (sq(x.kg1) + std::pow(x.kg, 4)) +
                       K * (K * (sq(x.kn) + sq(x.tg)) + 2 * x.kn * (x.kg1 + sq(x.kg)) + 2 * x.tg * (x.kg1 - sq(x.kg))) +
                       (x.kn1 + x.tg1) * (x.kn1 + x.tg1 - 2 * x.kg * (x.kn - x.tg)) + sq(x.kg) * sq(x.kn - x.tg);
    return num / den;
}

// ---- Tn ----

double radicand_Tn(const In& x) { return 2 * sq(x.kn) + sq(x.tg - x.kg); }

Vec3 gamma_(const In& x) {
    const double D = x.tg - x.kg;
    return {D * (x.kn * (-x.kg1 + x.tg1 + x.kn * x.kg - x.tg * x.kn) - x.kn1 * D + x.kg * (2 * sq(x.kn) + x.tg - x.kg)) -
                2 * std::pow(x.kn, 4),
            x.kn * D * (2 * x.kn1 + x.tg * (sq(x.kg) - sq(x.tg))) -
                2 * sq(x.kn) * (x.kn * x.kg + x.tg1 - x.kg1 - x.kn * x.tg),
            D * (-x.kn * (-x.kg1 + x.tg1 - x.kn * x.kg + x.tg * x.kn) + x.kn1 * D - x.tg * (2 * sq(x.kn) + x.tg - x.kg)) -
                2 * std::pow(x.kn, 4)};
}

Vec3 nu(const In& x) {
    const Vec3 g = gamma_(x);
    const double D = x.tg - x.kg;
    return {(x.kg - x.tg) * g.z - x.kn * g.y, x.kn * g.x + x.kn * g.z, -x.kn * g.y + D * g.x};
}

Vec3 omega(const In& x) {
    const double s3 = sq(x.tg) + sq(x.kn) + sq(x.kg);
    return {x.kn2 - 2 * x.kg * (x.tg1 - x.kg1) + x.kn * (3 * x.kn1 - sq(x.tg) - sq(x.kn) - sq(x.kg)) +
                x.kg1 * (x.kg - x.tg),
            x.kg2 - x.tg2 + x.kn * (x.kg1 + x.tg1) + (x.kg - x.tg) * s3 + x.tg * (2 * x.kn1 - sq(x.kn)) +
                2 * x.kg * x.kn1,
            -x.kn2 + 2 * x.tg * (x.tg1 - x.kg1) + x.kn * (3 * x.kn1 + sq(x.tg) + x.tg * (x.kg + x.tg)) +
                (x.kg - x.tg) * (x.kn * x.kg - x.tg1)};
}

double tau_quotient_Tn(const In& x) {
    const double D = x.tg - x.kg;
    const Vec3 w = omega(x);
    const double num = (w.x + w.z) * (x.kn * (x.tg1 - x.kg1) - x.kn1 * D + sq(x.kn) * (x.tg + x.kg)) +
                       sq(D) * (x.tg * w.x + x.kg * w.z) + x.kn * D * (x.kn * (w.x - w.z) + w.y * (x.kg - x.tg)) -
                       2 * x.kn * (x.kn1 + sq(x.kn)) * w.y;
    const double den = 2 * (sq(x.kn1) + std::pow(x.kn, 4)) +
                       D * (2 * (sq(x.kn) - x.kn1) - 2 * (sq(x.kn) - x.kn1) * x.kg) + sq(D) * (1 + sq(x.kg)) +
                       (x.tg - x.kg1) * ((x.tg1 - x.kg1) + 2 * (x.kn * x.kg + x.kn * x.tg)) +
                       sq(x.kn) * sq(x.kg + x.tg);
    return num / den;
}

// ---- gn ----

double radicand_gn(const In& x) { return 2 * sq(x.tg) + sq(x.kn + x.kg); }

Vec3 lambda(const In& x) {
    const double P = x.kn + x.kg;
    return {2 * x.tg * x.tg1 * P - 2 * sq(x.tg) * (x.kn1 + x.kg1) + x.tg * (x.kg - x.kn) * (2 * sq(x.tg) + sq(P)),
            -2 * std::pow(x.tg, 4) + x.tg * P * ((x.kn1 + x.kg1) - 2 * x.tg * x.kg) -
                sq(P) * (P * x.kg + x.tg1 + sq(x.tg)),
            -2 * std::pow(x.tg, 4) + x.tg * P * ((x.kn1 + x.kg1) - 2 * x.tg * x.kn) +
                sq(P) * (-P * x.kn + x.tg1 - sq(x.tg))};
}

Vec3 rho(const In& x) {
    const Vec3 l = lambda(x);
    const double P = x.kn + x.kg;
    return {-x.tg * l.z - x.tg * l.y, x.tg * l.x + P * l.z, -P * l.y + x.tg * l.x};
}

Vec3 chi(const In& x) {
    const double P = x.kn + x.kg;
    return {x.kn2 + x.kg2 - 2 * x.tg1 * (x.kn - x.kg) + x.tg * (x.kn1 - x.kg1) -
                P * (sq(x.tg) + sq(x.kn) + sq(x.kg)),
            x.tg2 + 2 * x.kg * (x.kn1 + x.kg1) + 3 * x.tg * x.tg1 + P * (x.kg1 - x.tg * x.kn) +
                x.kg * x.tg * (x.kn - x.kg) - std::pow(x.tg, 3),
            x.tg2 + 2 * x.kn * (x.kn1 + x.kg1) + 3 * x.tg * x.tg1 + P * (x.kg1 + x.tg * x.kg) +
                x.kn * x.tg * (x.kn - x.kg) + std::pow(x.tg, 3)};
}

double tau_quotient_gn(const In& x) {
    const double P = x.kn + x.kg;
    const Vec3 c = chi(x);
    const double Q = (x.kn1 + x.kg1) + x.tg * (x.kn - x.kg);
    const double num = sq(P) * ((sq(x.tg1 + x.tg) + x.kg * P) * c.z - (sq(x.tg1 - x.tg) - x.kn * P) * c.y +
                                x.tg * P * c.x) -
                       x.tg * (c.y + c.z) * sq(Q);
    const double den = sq(P) * (sq(x.kn) + sq(x.kg)) +
                       2 * P * (x.kg * (x.tg1 + sq(x.tg)) + 2 * x.kn * (sq(x.tg) - x.tg1)) + 2 * sq(x.tg1) +
                       2 * std::pow(x.tg, 4) + sq(Q);
    return num / den;
}

// ---- Tgn ----

double radicand_Tgn(const In& x) { return sq(x.kn + x.kg) + sq(x.tg - x.kg) + sq(x.tg + x.kn); }

Vec3 delta(const In& x) {
    const double A = x.kn + x.kg;
    const double Bq = x.tg - x.kg;
    const double C = x.tg + x.kn;
    return {sq(A) * (x.kg * Bq - x.kn * C) + A * (Bq * (x.tg1 - x.kg1) + (x.tg + x.kg) * (x.tg1 + x.kn1)) +
                (sq(Bq) + sq(C)) * (x.kg * Bq - (x.kg1 + x.kn1) - x.kn * C),
            sq(Bq) * (-x.kg * A - x.tg * C) + Bq * (A * (x.kg1 + x.kn1) + C * (x.tg1 + x.kn1)) +
                (sq(A) + sq(C)) * (-x.kg * A + (x.kg1 - x.tg1) - x.tg * C),
            sq(C) * (x.tg * (x.kg - x.tg) - x.kn * A) + C * (-A * (x.kg1 + x.kn1) - Bq * (x.tg1 - x.kg1)) +
                (sq(A) + sq(Bq)) * (x.tg * (x.kg - x.tg) + (x.tg1 + x.kn1) - x.kn * A)};
}

Vec3 sigma(const In& x) {
    const Vec3 d = delta(x);
    const double A = x.kn + x.kg;
    const double C = x.tg + x.kn;
    return {(x.kg - x.tg) * d.z - C * d.y, C * d.x + A * d.z, -A * d.y - (x.kg - x.tg) * d.x};
}

Vec3 xi(const In& x) {
    const double A = x.kn + x.kg;
    const double Bq = x.tg - x.kg;
    const double C = x.tg + x.kn;
    return {x.kn2 + x.kg2 - 2 * x.kg1 * (x.kg1 - x.tg1) - A * (sq(x.kn) + sq(x.kg)) +
                (x.kg - x.tg) * (x.kg1 + x.kn * x.tg) + 2 * x.kn * (x.kn1 + x.tg1) + (x.kn + x.tg) * (x.kn1 - x.kg * x.tg),
            x.tg2 - x.kg2 + 2 * x.tg * (x.kn1 + x.tg1) + 2 * x.kg * (x.kn1 + x.kg1) + A * (x.kg1 - x.kn * x.tg) +
                C * (x.kn * x.kg + x.tg1) + (x.kg - x.tg) * (sq(x.kg) + sq(x.tg)),
            -(x.tg2 + x.kn2) + 2 * x.kn * (x.kn1 + x.kg1) + Bq * (x.tg1 - x.kn * x.kg) + A * (x.kn1 + x.kg * x.tg) +
                2 * x.tg * (x.tg1 - x.kg1) + (x.kn + x.tg) * (sq(x.kn) + sq(x.tg))};
}

double tau_quotient_Tgn(const In& x) {
    const double A = x.kn + x.kg;
    const double C = x.kn + x.tg;
    const double E = x.kg - x.tg;
    const Vec3 q = xi(x);
    const double num = A * E * (x.tg * q.y - x.kn * q.x) + sq(E) * (x.tg * q.x + x.kg * q.z) +
                       (x.kn1 + x.tg1) * (E * q.x + A * q.y) -
                       (x.kn1 + x.kg1) * ((x.kn1 + x.tg) * q.x + E * q.z - C * q.y) +
                       sq(C) * (x.tg * q.x - x.kn * q.y) + C * A * (x.tg * q.z + x.kg * q.x) +
                       sq(C) * (x.kg * q.z - x.kn * q.y) + E * C * (x.kn * q.z - x.kg * q.y) + A * (x.tg1 - x.kg1);
    const double den = sq(E) * (sq(x.kg) + sq(x.tg)) + 2 * (x.kn1 + x.kg1) * (x.kg * E + x.kn * C) +
                       sq(C) * (sq(x.kn) + sq(x.tg)) + 2 * C * (x.tg * (x.tg1 - x.kg1) + sq(x.kg) * C) +
                       sq(A) * (sq(x.kn) + sq(x.tg)) + 2 * A * (x.kg * (x.tg1 - x.kg1) - x.kn * (x.tg1 + x.kg1)) +
                       x.kn * x.tg * (x.tg - x.kg) + sq(x.kn1 + x.kg1) + (sq(x.kn) + sq(x.tg)) + sq(x.tg1 - x.kg1) +
                       sq(x.tg1 - x.kn1) - 2 * x.tg * (x.tg - x.kg) * (x.tg1 + x.kn1);
    return num / den;
}

// Printed beta' up to the -1/c prefix.
Vec3 printed_direction(SmarandacheKind k, const In& x) {
    switch (k) {
    case SmarandacheKind::Tg: return {x.kg, -x.kg, -(x.kn + x.tg)};
    case SmarandacheKind::Tn: return {x.kn, x.tg - x.kg, -x.kn};
    case SmarandacheKind::gn: return {x.kn + x.kg, x.tg, -x.tg};
    case SmarandacheKind::Tgn: return {x.kn + x.kg, x.tg - x.kg, -(x.tg + x.kn)};
    }
    return {};
}

double radicand(SmarandacheKind k, const In& x) {
    switch (k) {
    case SmarandacheKind::Tg: return radicand_Tg(x);
    case SmarandacheKind::Tn: return radicand_Tn(x);
    case SmarandacheKind::gn: return radicand_gn(x);
    case SmarandacheKind::Tgn: return radicand_Tgn(x);
    }
    return 0.0;
}

double tau_quotient(SmarandacheKind k, const In& x) {
    switch (k) {
    case SmarandacheKind::Tg: return tau_quotient_Tg(x);
    case SmarandacheKind::Tn: return tau_quotient_Tn(x);
    case SmarandacheKind::gn: return tau_quotient_gn(x);
    case SmarandacheKind::Tgn: return tau_quotient_Tgn(x);
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(SmarandacheKind k) {
    switch (k) {
    case SmarandacheKind::Tg: return "Tg";
    case SmarandacheKind::Tn: return "Tn";
    case SmarandacheKind::gn: return "gn";
    case SmarandacheKind::Tgn: return "Tgn";
    }
    return "?";
}

SmarandacheKind parse_kind(std::string_view name) {
    for (SmarandacheKind k : all_kinds())
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown Smarandache kind '" + std::string(name) + "'");
}

std::array<SmarandacheKind, 4> all_kinds() {
    return {SmarandacheKind::Tg, SmarandacheKind::Tn, SmarandacheKind::gn, SmarandacheKind::Tgn};
}

Vec3 combination_weights(SmarandacheKind k) {
    switch (k) {
    case SmarandacheKind::Tg: return {1, 1, 0};
    case SmarandacheKind::Tn: return {1, 0, 1};
    case SmarandacheKind::gn: return {0, 1, 1};
    case SmarandacheKind::Tgn: return {1, 1, 1};
    }
    return {};
}

double combination_scale(SmarandacheKind k) { return k == SmarandacheKind::Tgn ? kSqrt3 : kSqrt2; }

SmarandacheCurve::SmarandacheCurve(SmarandacheKind kind, SurfaceCurve base) : kind_(kind), base_(std::move(base)) {}

SmarandacheCurve construct(SmarandacheKind kind, SurfaceCurve base) { return SmarandacheCurve(kind, std::move(base)); }

JetVec SmarandacheCurve::beta_series(const LocalExpansion& e) const {
    const Vec3 w = combination_weights(kind_) / combination_scale(kind_);
    return e.T * SJet(w.x) + e.g * SJet(w.y) + e.n * SJet(w.z);
}

Vec3 SmarandacheCurve::beta(double s) const {
    const DarbouxFrame f = darboux_frame(base_, s);
    return to_ambient(combination_weights(kind_), f) / combination_scale(kind_);
}

double SmarandacheCurve::speed(double s) const { return norm(value_of(diff(beta_series(base_.expand(s))))); }

double SmarandacheCurve::rate(double s) const { return darboux::rate(kind_, darboux_invariants(base_, s)); }

double rate_radicand(SmarandacheKind k, const DarbouxInvariants& d) { return radicand(k, In(from_values(d))); }

double printed_rate(SmarandacheKind k, const DarbouxInvariants& d) {
    const In x(from_values(d));
    switch (k) {
    case SmarandacheKind::Tg: return std::sqrt((2 * sq(x.kg) + sq(x.kn + x.tg)) / 2);
    case SmarandacheKind::Tn: return std::sqrt((2 * sq(x.kn) + sq(x.tg - x.kg)) / 2);
    case SmarandacheKind::gn: return std::sqrt((2 * sq(x.tg) + sq(x.kn + x.kg)) / 2);
    case SmarandacheKind::Tgn: return std::sqrt((sq(x.kn + x.kg) + sq(x.tg - x.kg) + sq(x.tg + x.kn)) / 3);
    }
    return 0.0;
}

double rate(SmarandacheKind k, const DarbouxInvariants& d) {
    const double r = rate_radicand(k, d);
    if (!(r > kRadicandThreshold))
        throw NonRegularSmarandache(std::string(to_string(k)) + " curve is singular: radicand " + fmt(r));
    return printed_rate(k, d);
}

std::string_view to_string(Family f) {
    switch (f) {
    case Family::Gamma: return "Gamma";
    case Family::mu: return "mu";
    case Family::eta: return "eta";
    case Family::gamma: return "gamma";
    case Family::nu: return "nu";
    case Family::omega: return "omega";
    case Family::lambda: return "lambda";
    case Family::rho: return "rho";
    case Family::chi: return "chi";
    case Family::delta: return "delta";
    case Family::sigma: return "sigma";
    case Family::xi: return "xi";
    }
    return "?";
}

SmarandacheKind kind_of(Family f) {
    switch (f) {
    case Family::Gamma:
    case Family::mu:
    case Family::eta: return SmarandacheKind::Tg;
    case Family::gamma:
    case Family::nu:
    case Family::omega: return SmarandacheKind::Tn;
    case Family::lambda:
    case Family::rho:
    case Family::chi: return SmarandacheKind::gn;
    default: return SmarandacheKind::Tgn;
    }
}

std::array<Family, 3> families(SmarandacheKind k) {
    switch (k) {
    case SmarandacheKind::Tg: return {Family::Gamma, Family::mu, Family::eta};
    case SmarandacheKind::Tn: return {Family::gamma, Family::nu, Family::omega};
    case SmarandacheKind::gn: return {Family::lambda, Family::rho, Family::chi};
    case SmarandacheKind::Tgn: return {Family::delta, Family::sigma, Family::xi};
    }
    return {};
}

Vec3 coefficients(Family f, const InvariantDerivatives& d) {
    const In x(d);
    switch (f) {
    case Family::Gamma: return Gamma(x);
    case Family::mu: return mu(x);
    case Family::eta: return eta(x);
    case Family::gamma: return gamma_(x);
    case Family::nu: return nu(x);
    case Family::omega: return omega(x);
    case Family::lambda: return lambda(x);
    case Family::rho: return rho(x);
    case Family::chi: return chi(x);
    case Family::delta: return delta(x);
    case Family::sigma: return sigma(x);
    case Family::xi: return xi(x);
    }
    return {};
}

ClosedFormInvariants printed_closed_form(SmarandacheKind k, const InvariantDerivatives& d,
                                         const ClosedFormContext& ctx) {
    const In x(d);
    const auto fam = families(k);
    const Vec3 F = coefficients(fam[0], d);
    const Vec3 M = coefficients(fam[1], d);
    const double v = radicand(k, x);
    const double eps = norm(F);
    const double c = combination_scale(k);
    const double cp = std::cos(ctx.phi_star);
    const double sp = std::sin(ctx.phi_star);

    ClosedFormInvariants r;
    r.radicand = v;
    r.family_norm = eps;
    r.T_star = printed_direction(k, x) * (-1.0 / std::sqrt(v));
    // Every kind prints sqrt(2) here, the Tgn section included.
    r.kappa_star = std::sqrt(2 * dot(F, F)) / sq(v);
    r.N_star = F / std::sqrt(dot(F, F));
    // The Tgn binormal is normalised with the gn family.
    const double b_norm = k == SmarandacheKind::Tgn ? norm(lambda(x)) : eps;
    r.B_star = M / (std::sqrt(v) * b_norm);
    r.tau_star = -1.0 / c * tau_quotient(k, x);

    if (k == SmarandacheKind::Tgn) {
        // 1 / (sqrt(Phi) Lambda) outside, sqrt(Lambda) inside, as printed.
        const double pre = 1.0 / (std::sqrt(eps) * v);
        const double rl = std::sqrt(v);
        r.g_star = (F * (rl * cp) + M * sp) * pre;
        r.n_star = (M * cp - F * (rl * sp)) * pre;
    } else {
        const double pre = 1.0 / (std::sqrt(v) * eps);
        const double rv = std::sqrt(v);
        r.g_star = (F * (rv * cp) + M * sp) * pre;
        r.n_star = (M * cp - F * (rv * sp)) * pre;
    }

    r.k_g_star = r.kappa_star * cp;
    r.k_n_star = r.kappa_star * sp;
    if (k == SmarandacheKind::Tg) {
        const double q = tau_quotient_Tg(x);
        r.tau_g_star = (-1.0 / kSqrt2) * (-1.0 / kSqrt2) * q + ctx.dphi_star;
        r.tau_g_star_single = (-1.0 / kSqrt2) * q + ctx.dphi_star;
    } else {
        r.tau_g_star = r.tau_star + ctx.dphi_star;
    }
    return r;
}

ClosedFormInvariants closed_form(SmarandacheKind k, const InvariantDerivatives& d, const ClosedFormContext& ctx) {
    const In x(d);
    const double v = radicand(k, x);
    if (!(v > kRadicandThreshold))
        throw NonRegularSmarandache(std::string(to_string(k)) + " curve is singular: radicand " + fmt(v));
    const Vec3 F = coefficients(families(k)[0], d);
    if (!(dot(F, F) > kRadicandThreshold))
        throw DegenerateNormalizer(std::string(to_string(families(k)[0])) + " family vanishes");
    if (k == SmarandacheKind::Tgn && !(dot(lambda(x), lambda(x)) > kRadicandThreshold))
        throw DegenerateNormalizer("lambda family vanishes in the Tgn binormal");
    return printed_closed_form(k, d, ctx);
}

ClosedFormInvariants closed_form(SmarandacheKind k, const SurfaceCurve& base, double s,
                                 const ClosedFormContext& ctx) {
    return closed_form(k, invariant_derivatives(base, s), ctx);
}

std::optional<CurveClass> corollary_class(SmarandacheKind k) {
    switch (k) {
    case SmarandacheKind::Tg: return CurveClass::Geodesic;
    case SmarandacheKind::Tn: return CurveClass::AsymptoticLine;
    case SmarandacheKind::gn: return CurveClass::PrincipalLine;
    case SmarandacheKind::Tgn: return std::nullopt;
    }
    return std::nullopt;
}

CorollaryInvariants printed_corollary(SmarandacheKind k, const InvariantDerivatives& d,
                                      const ClosedFormContext& ctx) {
    const In x(d);
    CorollaryInvariants r;
    switch (k) {
    case SmarandacheKind::Tg: {
        const double K = x.kn + x.tg;
        r.kappa_star = std::sqrt(2 * (sq(x.kn) + sq(x.tg))) / K;
        r.tau_star = -1.0 / kSqrt2 * (sq(K) + K * (x.kn1 * x.tg - x.kn * x.tg1)) /
                     (std::pow(K, 3) * (sq(x.kn) + sq(x.tg)) + sq(x.kn1 + x.tg1));
        break;
    }
    case SmarandacheKind::Tn: {
        const double D = x.tg - x.kg;
        r.kappa_star = std::sqrt(2 * (sq(x.kg) + sq(x.tg))) / sq(D);
        r.tau_star = -1.0 / kSqrt2 * (x.kg - x.tg) * (x.kg1 * x.tg - x.kg * x.tg1) /
                     ((1 + sq(x.kg)) * (x.tg - x.kg1) * (x.tg1 - x.kg1) * std::pow(D, -2));
        break;
    }
    case SmarandacheKind::gn: {
        r.kappa_star = std::sqrt(2 * (sq(x.kn) + sq(x.tg))) / (x.kn + x.tg);
        r.tau_star = -1.0 / kSqrt2 * (sq(x.kn + x.tg) + (x.kg * x.kn1 - x.kn * x.kg1)) /
                     ((sq(x.kn) + sq(x.kg)) + sq(x.kn1 + x.tg1) * std::pow(x.kn + x.kg, -2));
        break;
    }
    case SmarandacheKind::Tgn: throw std::invalid_argument("no corollary is stated for Tgn");
    }
    r.k_g_star = r.kappa_star * std::cos(ctx.phi_star);
    r.k_n_star = r.kappa_star * std::sin(ctx.phi_star);
    r.tau_g_star = r.tau_star + ctx.dphi_star;
    return r;
}

CorollaryInvariants corollary(SmarandacheKind k, const SurfaceCurve& base, double s, const ClosedFormContext& ctx) {
    const auto need = corollary_class(k);
    if (!need) throw std::invalid_argument("no corollary is stated for Tgn");
    const auto classes = classify(base, 1e-6);
    if (!classes.count(*need))
        throw ClassificationMismatch("corollary for " + std::string(to_string(k)) + " needs a base that is " +
                                     to_string(*need));
    return printed_corollary(k, invariant_derivatives(base, s), ctx);
}

Vec3 to_ambient(const Vec3& c, const DarbouxFrame& f) { return f.T * c.x + f.g * c.y + f.n * c.z; }

Vec3 to_frame(const Vec3& v, const DarbouxFrame& f) { return {dot(v, f.T), dot(v, f.g), dot(v, f.n)}; }

}  // namespace darboux
