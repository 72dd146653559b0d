#pragma once

// Seeded random expressions in one variable x, kept to a domain where every
// operator is smooth so finite differences are meaningful.

#include <cmath>
#include <random>

#include "darboux/expr.hpp"

namespace darboux::fixtures {

class RandomExpr {
public:
    explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

    Expr next(int depth = 4) { return build(depth); }

    double point() { return std::uniform_real_distribution<double>(0.3, 1.7)(rng_); }

private:
    std::mt19937_64 rng_;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Expr leaf() {
        if (pick(3) == 0) {
            const double c = std::round(std::uniform_real_distribution<double>(0.25, 3.0)(rng_) * 4.0) / 4.0;
            return Expr::constant(c);
        }
        return Expr::variable("x");
    }

    // Arguments of ln, sqrt and divisors are shifted to stay positive.
    Expr positive(const Expr& e) { return Expr::constant(2.0) + e * e; }

    Expr build(int depth) {
        if (depth == 0 || pick(4) == 0) return leaf();
        const Expr a = build(depth - 1);
        switch (pick(11)) {
            case 0: return a + build(depth - 1);
            case 1: return a - build(depth - 1);
            case 2: return a * build(depth - 1);
            case 3: return a / positive(build(depth - 1));
            case 4: return pow(positive(a), Expr::constant(pick(2) == 0 ? 1.5 : 2.0));
            case 5: return sin(a);
            case 6: return cos(a);
            case 7: return exp(sin(a));
            case 8: return ln(positive(a));
            case 9: return sqrt(positive(a));
            default: return -a;
        }
    }
};

/// Ridders' extrapolated central difference; the tableau entry with the
/// smallest error estimate wins.
inline double central_difference(const Expr& e, double x, double h = 0.01) {
    auto f = [&](double y) { return evaluate(e, {{"x", y}}); };
    constexpr int kSize = 12;
    constexpr double kShrink = 1.4, kShrink2 = kShrink * kShrink;
    double a[kSize][kSize];
    a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    double best = a[0][0], err = 1e300;
    for (int i = 1; i < kSize; ++i) {
        h /= kShrink;
        a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double e1 = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (e1 <= err) {
                err = e1;
                best = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return best;
}

}  // namespace darboux::fixtures
