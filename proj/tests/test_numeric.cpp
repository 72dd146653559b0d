#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "darboux/errors.hpp"
#include "darboux/kernels.hpp"
#include "darboux/numeric.hpp"

using namespace darboux;
using std::numbers::pi;

TEST(Integrate, Polynomials) {
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0), 9.0, 1e-12);
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, pi), 2.0, 1e-12);
    EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 1.0, 0.0), 1.0 - std::exp(1.0), 1e-12);
    EXPECT_DOUBLE_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0), 0.0);
}

TEST(ArcLength, Circle) {
    EXPECT_NEAR(arc_length([](double) { return 2.0; }, 0.0, pi), 2.0 * pi, 1e-12);
}

TEST(ArcLength, EllipseQuarter) {
    // Complete elliptic integral E(m = 0.75) times a = 2.
    auto speed = [](double t) { return std::hypot(2.0 * std::sin(t), std::cos(t)); };
    EXPECT_NEAR(arc_length(speed, 0.0, pi / 2), 2.0 * 1.2110560275684595, 1e-11);
}

TEST(ArcLengthMap, InverseRoundTrip) {
    const ArcLengthMap map([](double t) { return 1.0 + t * t; }, 0.0, 2.0);
    EXPECT_NEAR(map.total_length(), 2.0 + 8.0 / 3.0, 1e-12);
    for (double t : {0.0, 0.3, 1.0, 1.7, 2.0}) {
        EXPECT_NEAR(map.length_at(t), t + t * t * t / 3.0, 1e-12);
        EXPECT_NEAR(map.parameter_at(map.length_at(t)), t, 1e-12);
    }
    EXPECT_NEAR(reparameterize(map, 4.0 / 3.0), 1.0, 1e-12);
    EXPECT_THROW(map.parameter_at(-1e-3), OutOfRange);
    EXPECT_THROW(map.parameter_at(map.total_length() + 1e-3), OutOfRange);
}

TEST(Stencil, WeightsReproducePolynomials) {
    const double offsets[] = {-2, -1, 0, 1, 2};
    const auto w = stencil_weights(offsets, 1);
    ASSERT_EQ(w.size(), 5u);
    EXPECT_NEAR(w[0], 1.0 / 12.0, 1e-14);
    EXPECT_NEAR(w[1], -8.0 / 12.0, 1e-14);
    EXPECT_NEAR(w[2], 0.0, 1e-14);
    const double shifted[] = {0, 1, 2, 3, 4};
    const double h = 0.1;
    double values[5];
    for (int i = 0; i < 5; ++i) values[i] = std::pow(1.0 + shifted[i] * h, 4);
    EXPECT_NEAR(stencil_derivative(values, shifted, h), 4.0, 1e-10);
}

TEST(Angles, Unwrap) {
    std::vector<double> a = {3.0, -3.1, 3.0, -3.0};
    unwrap_angles(a);
    EXPECT_NEAR(a[1], 2 * pi - 3.1, 1e-15);
    EXPECT_NEAR(a[3], 2 * pi - 3.0, 1e-15);
    EXPECT_NEAR(nearest_branch(0.1, 2 * pi), 2 * pi + 0.1, 1e-15);
}

class KernelEquivalence : public ::testing::TestWithParam<simd::Backend> {};

TEST_P(KernelEquivalence, MatchesScalar) {
    if (!simd::backend_available(GetParam())) GTEST_SKIP() << "backend not available on this host";
    const auto& ref = simd::scalar_kernels();
    const auto& k = simd::kernels_for(GetParam());
    std::mt19937_64 rng(11);
    std::normal_distribution<double> d(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        std::vector<double> x(n), y(n), z(n), a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = d(rng), y[i] = d(rng), z[i] = d(rng), a[i] = d(rng), b[i] = d(rng) * 10.0;
        }
        EXPECT_EQ(k.max_unit_deviation(x.data(), y.data(), z.data(), n),
                  ref.max_unit_deviation(x.data(), y.data(), z.data(), n));
        EXPECT_EQ(k.max_abs(a.data(), n), ref.max_abs(a.data(), n));
        std::vector<double> n1(n), n2(n), abs1(n), abs2(n), rel1(n), rel2(n);
        k.norms(x.data(), y.data(), z.data(), n1.data(), n);
        ref.norms(x.data(), y.data(), z.data(), n2.data(), n);
        k.residuals(a.data(), b.data(), abs1.data(), rel1.data(), n);
        ref.residuals(a.data(), b.data(), abs2.data(), rel2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(n1[i], n2[i]);
            EXPECT_EQ(abs1[i], abs2[i]);
            EXPECT_EQ(rel1[i], rel2[i]);
        }
    }
    std::vector<double> with_nan(9, 0.5);
    with_nan[6] = std::nan("");
    EXPECT_TRUE(std::isnan(k.max_abs(with_nan.data(), with_nan.size())));
    EXPECT_TRUE(std::isnan(k.max_unit_deviation(with_nan.data(), with_nan.data(), with_nan.data(), with_nan.size())));
}

INSTANTIATE_TEST_SUITE_P(Backends, KernelEquivalence,
                         ::testing::Values(simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon),
                         [](const auto& info) { return std::string(simd::backend_name(info.param)); });

TEST(Kernels, DispatchOverride) {
    const simd::Backend before = simd::active_backend();
    simd::set_backend(simd::Backend::Scalar);
    EXPECT_EQ(simd::active_backend(), simd::Backend::Scalar);
    const std::vector<double> x = {1.0, 0.0}, y = {0.0, 2.0}, z = {0.0, 0.0};
    EXPECT_NEAR(simd::max_unit_deviation(x, y, z), 1.0, 1e-15);
    simd::set_backend(before);
}
