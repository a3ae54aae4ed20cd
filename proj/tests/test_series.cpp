#include <biunivalent/series.hpp>

#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace biuni;

namespace
{

constexpr double tol = 1e-10;

void expect_near(const TruncatedSeries &actual, const std::vector<complex> &expected, double eps = tol)
{
    ASSERT_EQ(actual.order() + 1, expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(std::abs(actual[k] - expected[k]), 0.0, eps) << "coefficient " << k;
    }
}

complex random_disk(std::mt19937_64 &eng, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        complex c{u(eng), u(eng)};
        if (std::abs(c) <= radius) {
            return c;
        }
    }
}

// Rounding-error budget for coefficient k of a(b): 1e-10 plus a multiple of
// eps times the magnitude of the terms summed, i.e. the composition of the
// coefficient-wise absolute values. At N = 12 with |a_k| <= 2 the inverse
// coefficients reach ~1e9, where a single ulp already exceeds 1e-10.
std::vector<double> compose_budget(const TruncatedSeries &a, const TruncatedSeries &b)
{
    auto absolute = [](const TruncatedSeries &s) {
        std::vector<complex> c;
        for (const auto &x : s.coeffs()) {
            c.emplace_back(std::abs(x));
        }
        return TruncatedSeries(std::move(c));
    };
    const auto mag = compose(absolute(a), absolute(b));
    std::vector<double> out;
    for (const auto &m : mag.coeffs()) {
        out.push_back(tol + 64 * std::numeric_limits<double>::epsilon() * m.real());
    }
    return out;
}

NormalizedFunction random_normalized(std::mt19937_64 &eng, std::size_t order, double radius = 2)
{
    std::vector<complex> tail(order - 1);
    for (auto &c : tail) {
        c = random_disk(eng, radius);
    }
    return NormalizedFunction::from_tail(tail);
}

} // namespace

TEST(RingOps, DifferenceOfSquares)
{
    const TruncatedSeries a{1, 1, 0};
    const TruncatedSeries b{1, -1, 0};
    expect_near(a * b, {1, 0, -1});
}

TEST(RingOps, DerivativeShiftsDown)
{
    const TruncatedSeries a{0, 1, 2, 3};
    const auto d = derivative(a);
    EXPECT_EQ(d.order(), 2u);
    expect_near(d, {1, 4, 9});
}

TEST(RingOps, AdditionCancels)
{
    expect_near(TruncatedSeries{1, 2} + TruncatedSeries{1, -2}, {2, 0});
}

TEST(RingOps, MismatchedOrdersTruncateToSmaller)
{
    const TruncatedSeries a{1, 1, 1, 1};
    const TruncatedSeries b{1, 1};
    EXPECT_EQ((a + b).order(), 1u);
    EXPECT_EQ((a * b).order(), 1u);
    expect_near(a * b, {1, 2});
}

TEST(RingOps, DerivativeOfOrderZeroThrows)
{
    EXPECT_THROW(derivative(TruncatedSeries{3}), std::domain_error);
}

TEST(RingOps, CoefficientBeyondOrderThrows)
{
    const TruncatedSeries a{1, 2};
    EXPECT_THROW((void)a[2], std::out_of_range);
}

TEST(PowReal, QuadraticPrefixMatchesBinomialExpansion)
{
    const complex a2{0.3, -0.2}, a3{-0.7, 0.4};
    for (double mu : {0.5, 1.7, 2.0, 3.0, -1.0}) {
        const auto r = pow_real(TruncatedSeries{1, a2, a3}, mu);
        expect_near(r, {1, mu * a2, mu * a3 + mu * (mu - 1) / 2 * a2 * a2});
    }
}

TEST(PowReal, IntegerExponentsAgreeWithRepeatedMultiplication)
{
    const oracle::poly a{1, {0.3, 0.1}, {-0.5, 0.2}, {0.25, -0.4}, {0.1, 0.9}};
    const TruncatedSeries s(a);
    for (unsigned m : {2u, 3u}) {
        expect_near(pow_real(s, m), oracle::ipow(a, m, 4));
    }
}

TEST(PowReal, ZeroAndUnitExponents)
{
    const TruncatedSeries a{1, 2, -3, 0.5};
    expect_near(pow_real(a, 0), {1, 0, 0, 0});
    expect_near(pow_real(a, 1), {1, 2, -3, 0.5});
}

TEST(PowReal, RejectsNonUnitConstant)
{
    EXPECT_THROW(pow_real(TruncatedSeries{2, 1}, 0.5), std::domain_error);
    EXPECT_THROW(pow_real(TruncatedSeries{0, 1}, 0.5), std::domain_error);
}

TEST(PowReal, ExponentsAdd)
{
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> ex(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<complex> c(9);
        c[0] = 1;
        for (std::size_t k = 1; k < c.size(); ++k) {
            c[k] = random_disk(eng, 1);
        }
        const TruncatedSeries a(c);
        const double m = ex(eng), n = ex(eng);
        const auto lhs = pow_real(a, m + n);
        const auto rhs = pow_real(a, m) * pow_real(a, n);
        for (std::size_t k = 0; k <= 8; ++k) {
            EXPECT_NEAR(std::abs(lhs[k] - rhs[k]), 0.0, tol);
        }
    }
}

TEST(Revert, GeometricSeries)
{
    const auto g = revert(NormalizedFunction::from_tail({1, 1, 1}));
    expect_near(g.series(), {0, 1, -1, 1, -1});
}

TEST(Revert, KoebePrefix)
{
    const auto g = revert(NormalizedFunction::from_tail({2, 3, 4}));
    expect_near(g.series(), {0, 1, -2, 5, -14});
    // Small integers stay exact in double arithmetic.
    EXPECT_EQ(g.coeff(4), complex(-14));
}

TEST(Revert, Identity)
{
    const auto g = revert(NormalizedFunction::identity(1));
    expect_near(g.series(), {0, 1});
}

TEST(Revert, MatchesLagrangeInversion)
{
    std::mt19937_64 eng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_normalized(eng, 10);
        const oracle::poly fc(f.series().coeffs().begin(), f.series().coeffs().end());
        const auto expected = oracle::lagrange_revert(fc);
        // Coefficients grow like 4^n for |a_k| <= 2, so compare relatively.
        const auto g = revert(f);
        for (std::size_t k = 0; k <= 10; ++k) {
            EXPECT_NEAR(std::abs(g.coeff(k) - expected[k]), 0.0, tol * std::max(1.0, std::abs(expected[k])));
        }
    }
}

TEST(Revert, ComposesToIdentity)
{
    std::mt19937_64 eng(5);
    for (std::size_t order = 1; order <= 12; ++order) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = random_normalized(eng, order);
            const auto g = revert(f).series();
            const auto id = compose(f.series(), g);
            const auto budget = compose_budget(f.series(), g);
            for (std::size_t k = 0; k <= order; ++k) {
                EXPECT_LE(std::abs(id[k] - complex(k == 1 ? 1.0 : 0.0)), budget[k]) << "order " << order;
            }
        }
    }
}

TEST(Revert, IsAnInvolution)
{
    std::mt19937_64 eng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_normalized(eng, 12);
        const auto g = revert(f);
        const auto ff = revert(g);
        // Reverting g back amplifies the rounding in g by the same term sizes.
        const auto budget = compose_budget(g.series(), f.series());
        for (std::size_t k = 0; k <= 12; ++k) {
            EXPECT_LE(std::abs(ff.coeff(k) - f.coeff(k)), budget[k]);
        }
    }
}

TEST(InverseCoeffsClosed, Examples)
{
    const auto koebe = inverse_coeffs_closed(2, 3, 4);
    EXPECT_EQ(koebe[0], complex(-2));
    EXPECT_EQ(koebe[1], complex(5));
    EXPECT_EQ(koebe[2], complex(-14));

    const auto zero = inverse_coeffs_closed(0, 0, 0);
    for (auto c : zero) {
        EXPECT_EQ(c, complex(0));
    }

    const auto geo = inverse_coeffs_closed(1, 1, 1);
    EXPECT_EQ(geo[0], complex(-1));
    EXPECT_EQ(geo[1], complex(1));
    EXPECT_EQ(geo[2], complex(-1));
}

TEST(InverseCoeffsClosed, AgreesWithRevert)
{
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const complex a2 = random_disk(eng, 3), a3 = random_disk(eng, 3), a4 = random_disk(eng, 3);
        const auto g = revert(NormalizedFunction::from_tail({a2, a3, a4}));
        const auto closed = inverse_coeffs_closed(a2, a3, a4);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_NEAR(std::abs(g.coeff(k + 2) - closed[k]), 0.0, tol);
        }
    }
}

TEST(Evaluate, Examples)
{
    EXPECT_EQ(evaluate(TruncatedSeries{1, 2, 2}, 0), complex(1));
    EXPECT_NEAR(std::abs(evaluate(TruncatedSeries{0, 1, 1}, 0.5) - 0.75), 0.0, 1e-15);
    const auto v = evaluate(TruncatedSeries{1, 2, 2, 2}, 0.5);
    EXPECT_NEAR(v.real(), 2.75, 1e-15);
    // Within the geometric tail bound of (1+z)/(1-z) = 3.
    EXPECT_LE(std::abs(v - 3.0), 0.25 + 1e-15);
}

TEST(Evaluate, RejectsPointsOutsideDisk)
{
    EXPECT_THROW(evaluate(TruncatedSeries{1, 1}, 1.0), std::domain_error);
    EXPECT_THROW(evaluate(TruncatedSeries{1, 1}, complex(0.8, 0.8)), std::domain_error);
}

TEST(NormalizedFunction, RejectsBadNormalization)
{
    EXPECT_THROW(NormalizedFunction(TruncatedSeries{0, 2, 1}), std::invalid_argument);
    EXPECT_THROW(NormalizedFunction(TruncatedSeries{1, 1}), std::invalid_argument);
    EXPECT_THROW(NormalizedFunction(TruncatedSeries{0}), std::invalid_argument);
}

TEST(LogExp, AreInverse)
{
    const TruncatedSeries a{1, {0.2, 0.1}, -0.3, {0.05, 0.4}, 0.7};
    const auto back = exp_nil(log_unit(a));
    for (std::size_t k = 0; k <= 4; ++k) {
        EXPECT_NEAR(std::abs(back[k] - a[k]), 0.0, 1e-14);
    }
}
