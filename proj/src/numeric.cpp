#include "darboux/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "darboux/errors.hpp"

namespace darboux {

namespace {

constexpr int kMaxDepth = 48;

double simpson_step(const ScalarFn& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMaxDepth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 0);
}

double arc_length(const ScalarFn& speed, double t0, double t1) {
    if (!(t0 < t1)) throw std::invalid_argument("arc_length: requires t0 < t1");
    constexpr int kProbe = 256;
    for (int i = 0; i <= kProbe; ++i) {
        const double t = t0 + (t1 - t0) * i / kProbe;
        const double v = speed(t);
        if (!(v >= kRegularityThreshold))
            throw NonRegularCurve("speed " + std::to_string(v) + " at t = " + std::to_string(t));
    }
    // Split into panels so the per-subinterval tolerance stays meaningful.
    constexpr int kPanels = 16;
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double a = t0 + (t1 - t0) * i / kPanels;
        const double b = i + 1 == kPanels ? t1 : t0 + (t1 - t0) * (i + 1) / kPanels;
        total += integrate(speed, a, b, 1e-12);
    }
    return total;
}

ArcLengthMap::ArcLengthMap(ScalarFn speed, double t_lo, double t_hi, int panels)
    : speed_(std::move(speed)), t_lo_(t_lo), t_hi_(t_hi) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("ArcLengthMap: requires t_lo < t_hi");
    if (panels < 1) panels = 1;
    knots_.resize(panels + 1);
    cumulative_.resize(panels + 1);
    for (int i = 0; i <= panels; ++i) knots_[i] = i == panels ? t_hi : t_lo + (t_hi - t_lo) * i / panels;
    cumulative_[0] = 0.0;
    for (int i = 0; i < panels; ++i)
        cumulative_[i + 1] = cumulative_[i] + arc_length(speed_, knots_[i], knots_[i + 1]);
}

double ArcLengthMap::length_at(double t) const {
    if (t <= t_lo_) return 0.0;
    if (t >= t_hi_) return total_length();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
    return cumulative_[i] + integrate(speed_, knots_[i], t, 1e-13);
}

double ArcLengthMap::parameter_at(double s) const {
    const double total = total_length();
    const double slack = 1e-12 * (1.0 + total);
    if (s < -slack || s > total + slack)
        throw OutOfRange("arc length " + std::to_string(s) + " outside [0, " + std::to_string(total) + "]");
    if (s <= 0.0) return t_lo_;
    if (s >= total) return t_hi_;

    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
    double lo = knots_[i];
    double hi = knots_[std::min(i + 1, knots_.size() - 1)];
    const double base = cumulative_[i];
    const double target = s - base;
    const double tol = 1e-13 * (1.0 + total);

    // Newton on g(t) = L(lo, t) - target with speed as exact derivative,
    // bisection whenever the step leaves the bracket.
    double t = lo + (hi - lo) * (target / std::max(cumulative_[i + 1] - base, 1e-300));
    for (int iter = 0; iter < 100; ++iter) {
        const double g = integrate(speed_, knots_[i], t, 1e-13) - target;
        if (std::abs(g) <= tol) return t;
        if (g > 0.0) hi = t; else lo = t;
        double next = t - g / speed_(t);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) return next;
        t = next;
    }
    return t;
}

double reparameterize(const ArcLengthMap& map, double s) { return map.parameter_at(s); }

std::vector<double> stencil_weights(std::span<const double> offsets, int order) {
    // Fornberg's recursion evaluated at x0 = 0.
    const int n = static_cast<int>(offsets.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = offsets[0];
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = offsets[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][order];
    return w;
}

double stencil_derivative(std::span<const double> values, std::span<const double> offsets, double h) {
    const auto w = stencil_weights(offsets, 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * values[i];
    return acc / h;
}

double nearest_branch(double angle, double reference) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return angle - two_pi * std::round((angle - reference) / two_pi);
}

void unwrap_angles(std::span<double> angles) {
    for (std::size_t i = 1; i < angles.size(); ++i) angles[i] = nearest_branch(angles[i], angles[i - 1]);
}

}  // namespace darboux
