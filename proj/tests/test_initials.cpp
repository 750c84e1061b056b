#include "maxeig/errors.hpp"
#include "maxeig/initials.hpp"
#include "maxeig/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace maxeig;

TEST(SpeedMeasure, Examples)
{
    for (double m : speed_measure(square_model(7))) {
        EXPECT_EQ(m, 1.0);
    }
    EXPECT_EQ(speed_measure(build_system({1}, {2}, {0, 1})), (std::vector<double>{1, 2}));
    EXPECT_EQ(speed_measure(build_system({2, 3}, {4, 6}, {0, 0, 1})), (std::vector<double>{1, 2, 4}));
}

TEST(HSequence, SquareModelIsFlatWithBoundary64)
{
    const HSequence hs = h_sequence(square_model(7));
    ASSERT_EQ(hs.h.size(), 9u);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_EQ(hs.h[i], 1.0);
    }
    EXPECT_EQ(hs.boundary(), 64.0);
}

TEST(HSequence, NoKillingAnywhere)
{
    const HSequence hs = h_sequence(build_system({1, 2}, {3, 4}, {0, 0, 0}));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(hs.h[i], 1.0);
    }
    EXPECT_EQ(hs.boundary(), 0.0);
    EXPECT_THROW(efficient_initials(build_system({1, 2}, {3, 4}, {0, 0, 0})), ZeroEigenvalueError);
}

TEST(HSequence, KilledFirstRow)
{
    const HSequence hs = h_sequence(build_system({1}, {1}, {1, 0}));
    EXPECT_EQ(hs.r[0], 2.0);
    EXPECT_EQ(hs.h[1], 2.0);
}

TEST(HSequence, OneByOne)
{
    const HSequence hs = h_sequence(build_system({}, {}, {5}));
    EXPECT_EQ(hs.h[0], 1.0);
    EXPECT_EQ(hs.boundary(), 5.0);
    EXPECT_THROW(efficient_initials(build_system({}, {}, {0})), ZeroEigenvalueError);
}

TEST(Phi, SquareModelValues)
{
    const InitialsBundle b = initials_bundle(square_model(7));
    double expected0 = 1.0 / 64.0;
    for (int k = 1; k <= 7; ++k) {
        expected0 += 1.0 / (k * k);
    }
    EXPECT_NEAR(b.phi[0], expected0, 1e-15);
    EXPECT_NEAR(b.phi[0], 1.527422, 1e-6);
    EXPECT_EQ(b.phi[7], 0.015625);
}

TEST(Phi, OneByOne)
{
    const InitialsBundle b = initials_bundle(build_system({}, {}, {4}));
    EXPECT_EQ(b.phi[0], 0.25);
}

TEST(EfficientInitials, SquareModelSeven)
{
    const InitialGuess g = efficient_initials(square_model(7));
    const double printed[] = {1, 0.587624, 0.426178, 0.329975, 0.260701, 0.204394, 0.153593, 0.101142};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(g.v0_raw[i] / g.v0_raw[0], printed[i], 1e-6);
    }
    EXPECT_NEAR(g.delta1, 2.05768, 1e-4);
    EXPECT_EQ(g.delta1_argmax, 0u);
    EXPECT_NEAR(g.z0_inverse_delta, 0.485985, 1e-6);
    EXPECT_NEAR(g.z0_table4, 0.523309, 1e-5);
    EXPECT_NEAR(norm_mu(g.v0, speed_measure(square_model(7))), 1.0, 1e-14);
}

TEST(EfficientInitials, SquareModelHundred)
{
    EXPECT_NEAR(efficient_initials(square_model(99)).z0_table4, 0.387333, 1e-5);
}

TEST(EfficientInitials, DeltaAgreesWithDirectDoubleSum)
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const TridiagonalSystem q = maxeig::testing::random_system(rng, trial % 10);
        const InitialsBundle b = initials_bundle(q);
        const std::size_t n = q.size();
        double best = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            double left = 0.0;
            double right = 0.0;
            for (std::size_t k = 0; k <= m; ++k) {
                left += b.mu[k] * b.h[k] * b.h[k] * std::sqrt(b.phi[k]);
            }
            for (std::size_t j = m + 1; j < n; ++j) {
                right += b.mu[j] * b.h[j] * b.h[j] * std::pow(b.phi[j], 1.5);
            }
            best = std::max(best, std::sqrt(b.phi[m]) * left + right / std::sqrt(b.phi[m]));
        }
        EXPECT_NEAR(efficient_initials(q).delta1, best, 1e-12 * best);
    }
}

TEST(RayleighQuotient, Examples)
{
    const TridiagonalSystem q = square_model(7);
    const std::vector<double> mu = speed_measure(q);
    // With mu = 1 the quotient of the uniform vector is sum(c) / 8.
    EXPECT_DOUBLE_EQ(rayleigh_quotient(q, std::vector<double>(8, 1.0), mu), 8.0);
    const ReferencePair ref = max_eigenpair_reference(q);
    EXPECT_NEAR(rayleigh_quotient(q, ref.g, mu), 0.525268, 1e-5);
    const TridiagonalSystem one = build_system({}, {}, {5});
    EXPECT_EQ(rayleigh_quotient(one, std::vector<double>{1.0}, std::vector<double>{1.0}), 5.0);
    EXPECT_THROW(rayleigh_quotient(q, std::vector<double>(8, 0.0), mu), std::invalid_argument);
}

TEST(InitialsProperties, RandomSystems)
{
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const TridiagonalSystem q = maxeig::testing::random_system(rng, trial % 13);
        const InitialsBundle b = initials_bundle(q);
        EXPECT_EQ(b.mu[0], 1.0);
        for (double r : b.r) {
            EXPECT_GE(r, 1.0);
        }
        EXPECT_EQ(b.h[0], 1.0);
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            EXPECT_LE(b.h[i], b.h[i + 1]);
            EXPECT_GT(b.phi[i], b.phi[i + 1]);
            const double step = 1.0 / (b.h[i] * b.h[i + 1] * b.mu[i] * q.upper(i));
            EXPECT_NEAR(b.phi[i] - b.phi[i + 1], step, 1e-14 * b.phi[i] + 1e-14 * step);
        }
        EXPECT_GT(b.phi.back(), 0.0);
        const InitialGuess g = efficient_initials(q, b);
        for (double v : g.v0_raw) {
            EXPECT_GT(v, 0.0);
        }
        EXPECT_GT(g.delta1, 0.0);
    }
}

TEST(InitialsProperties, FactorTwoBracket)
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const TridiagonalSystem q = maxeig::testing::random_system(rng, trial % 13);
        const double lambda0 = max_eigenpair_reference(q).lambda0;
        const double delta1 = efficient_initials(q).delta1;
        EXPECT_GE(lambda0 * delta1, 1.0 - 1e-12);
        EXPECT_LE(lambda0 * delta1, 2.0 + 1e-12);
    }
}

TEST(InitialsProperties, ScalingInvariance)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const TridiagonalSystem q = maxeig::testing::random_system(rng, 1 + trial % 12);
        const double t = 3.7;
        std::vector<double> a(q.a().begin(), q.a().end()), b(q.b().begin(), q.b().end()),
            c(q.c().begin(), q.c().end());
        for (double* seq : {a.data(), b.data()}) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                seq[i] *= t;
            }
        }
        for (double& x : c) {
            x *= t;
        }
        const TridiagonalSystem qt(a, b, c);
        const InitialGuess g = efficient_initials(q);
        const InitialGuess gt = efficient_initials(qt);
        EXPECT_NEAR(1.0 / gt.delta1, t / g.delta1, 1e-12 * t / g.delta1);
        EXPECT_NEAR(max_eigenpair_reference(qt).lambda0, t * max_eigenpair_reference(q).lambda0,
                    1e-10 * t * max_eigenpair_reference(q).lambda0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            EXPECT_NEAR(gt.v0[i], g.v0[i], 1e-12 * std::max(1.0, std::abs(g.v0[i])));
        }
    }
}
