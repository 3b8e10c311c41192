#include <gtest/gtest.h>

#include <ordgap/series.hpp>

#include "generators.hpp"
#include "test_util.hpp"

using namespace ordgap;
using testutil::P;
using testutil::Q;
using testutil::S;

namespace
{

TruncatedSeries random_series(RngHandle &rng, std::size_t precision, std::size_t min_order = 0)
{
    TruncatedSeries s(precision);
    for (std::size_t k = min_order; k < precision; ++k) {
        s[k] = gen::small_rat(rng, 5, 4);
    }
    return s;
}

} // namespace

TEST(FromPoly, Examples)
{
    EXPECT_EQ(from_poly(P({"1", "2"}), 4), S({"1", "2", "0", "0"}));
    const auto zero = from_poly(Poly{}, 1);
    EXPECT_EQ(zero.precision(), 1u);
    EXPECT_EQ(order(zero), OrderResult::at_least(1));
    const auto s = from_poly(P({"0", "0", "5"}), 3);
    EXPECT_EQ(order(s), OrderResult::known(2));
    EXPECT_ORDGAP_ERROR(from_poly(P({"1", "2", "3"}), 2), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(TruncatedSeries(0), errc::invalid_argument);
}

TEST(LinearCombine, Examples)
{
    const auto a = S({"1", "1", "0"});
    const auto b = S({"1", "1", "1"});
    EXPECT_EQ(order(linear_combine({1, -1}, {a, a})), OrderResult::at_least(3));
    EXPECT_EQ(linear_combine({1}, {b}), b);
    const auto d = linear_combine({1, -1}, {a, b});
    EXPECT_EQ(d, S({"0", "0", "-1"}));
    EXPECT_EQ(order(d), OrderResult::known(2));
    EXPECT_ORDGAP_ERROR(linear_combine({1, 2}, {a}), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(linear_combine({}, {}), errc::invalid_argument);
}

TEST(LinearCombine, PrecisionIsMinimum)
{
    const auto r = linear_combine({1, 1}, {S({"1", "2", "3", "4"}), S({"1", "1"})});
    EXPECT_EQ(r, S({"2", "3"}));
}

TEST(Mul, Examples)
{
    EXPECT_EQ(mul(S({"1", "1", "0"}), S({"1", "-1", "0"})), S({"1", "0", "-1"}));
    EXPECT_EQ(mul(S({"0", "1", "0"}), S({"0", "1", "0"})), S({"0", "0", "1"}));
    const auto sq = mul(S({"1", "1", "0", "0"}), S({"1", "1", "0", "0"}));
    EXPECT_EQ(mul(sq, S({"1", "2", "0", "0"})), S({"1", "4", "5", "2"}));
}

TEST(Div, Examples)
{
    EXPECT_EQ(divide(S({"1", "0", "0", "0"}), S({"1", "-1", "0", "0"})), S({"1", "1", "1", "1"}));
    const auto q = divide(S({"0", "0", "1", "0"}), S({"0", "1", "0", "0"}));
    EXPECT_EQ(q, S({"0", "1", "0"}));
    EXPECT_EQ(q.precision(), 3u);
    const auto r = divide(S({"1", "2", "0"}), S({"1", "1", "0"}));
    EXPECT_EQ(r, S({"1", "1", "-1"}));
    EXPECT_EQ(mul(r, S({"1", "1", "0"})), S({"1", "2", "0"}));
}

TEST(Div, Errors)
{
    EXPECT_ORDGAP_ERROR(divide(S({"1", "2"}), S({"0", "0"})), errc::division_indeterminate);
    EXPECT_ORDGAP_ERROR(divide(S({"1", "2"}), S({"0", "1"})), errc::not_divisible);
    EXPECT_ORDGAP_ERROR(divide(S({"0"}), S({"0", "1"})), errc::insufficient_precision);
}

TEST(Derivative, Examples)
{
    EXPECT_EQ(derivative(S({"1", "1", "1"})), S({"1", "2"}));
    EXPECT_EQ(derivative(S({"5", "0", "0"})), S({"0", "0"}));
    EXPECT_EQ(derivative(S({"0", "0", "0", "1/6"})), S({"0", "0", "1/2"}));
    EXPECT_ORDGAP_ERROR(derivative(S({"3"})), errc::insufficient_precision);
}

TEST(Order, Examples)
{
    EXPECT_EQ(order(S({"0", "2", "1", "0"})), OrderResult::known(1));
    EXPECT_EQ(order(TruncatedSeries(8)), OrderResult::at_least(8));
    EXPECT_EQ(order(S({"0", "0", "1", "-2"})), OrderResult::known(2));
}

TEST(Sqrt, Examples)
{
    EXPECT_EQ(sqrt_series(S({"1", "2", "0", "0"})), S({"1", "1", "-1/2", "1/2"}));
    EXPECT_EQ(sqrt_series(S({"1", "2", "1", "0"})), S({"1", "1", "0", "0"}));
    EXPECT_EQ(sqrt_series(S({"4"})), S({"2"}));
    EXPECT_EQ(sqrt_series(S({"9/4", "0"})), S({"3/2", "0"}));
}

TEST(Sqrt, Errors)
{
    EXPECT_ORDGAP_ERROR(sqrt_series(S({"0", "1"})), errc::not_square_constant_term);
    EXPECT_ORDGAP_ERROR(sqrt_series(S({"2", "1"})), errc::not_square_constant_term);
    EXPECT_ORDGAP_ERROR(sqrt_series(S({"-1", "1"})), errc::not_square_constant_term);
}

TEST(Exp, Examples)
{
    EXPECT_EQ(exp_series(S({"0", "1", "0", "0", "0"})), S({"1", "1", "1/2", "1/6", "1/24"}));
    EXPECT_EQ(exp_series(S({"0"})), S({"1"}));
    EXPECT_EQ(exp_series(S({"0", "0", "1", "0", "0"})), S({"1", "0", "1", "0", "1/2"}));
    EXPECT_ORDGAP_ERROR(exp_series(S({"1", "1"})), errc::nonzero_constant_term);
}

TEST(Log, Examples)
{
    EXPECT_EQ(log_series(S({"1", "1", "0", "0"})), S({"0", "1", "-1/2", "1/3"}));
    EXPECT_EQ(log_series(S({"1"})), S({"0"}));
    EXPECT_EQ(exp_series(log_series(S({"1", "1", "0", "0", "0"}))), S({"1", "1", "0", "0", "0"}));
    EXPECT_ORDGAP_ERROR(log_series(S({"2", "1"})), errc::non_unit_constant_term);
}

TEST(PowRat, Examples)
{
    EXPECT_EQ(pow_series(S({"1", "1", "0"}), Q("1/2")), S({"1", "1/2", "-1/8"}));
    EXPECT_EQ(pow_series(S({"1", "1", "0"}), Q("0")), S({"1", "0", "0"}));
    const auto cube_root = pow_series(S({"1", "1", "0", "0", "0", "0"}), Q("1/3"));
    EXPECT_EQ(mul(mul(cube_root, cube_root), cube_root), S({"1", "1", "0", "0", "0", "0"}));
    EXPECT_ORDGAP_ERROR(pow_series(S({"0", "1"}), Q("1/2")), errc::non_unit_constant_term);
}

TEST(PowRat, IntegerExponentMatchesRepeatedProduct)
{
    RngHandle rng(21);
    for (int i = 0; i < 50; ++i) {
        auto a = random_series(rng, 8);
        a[0] = 1;
        const auto e = 1 + rng.below(4);
        auto expected = a;
        for (std::size_t j = 1; j < e; ++j) {
            expected = mul(expected, a);
        }
        EXPECT_EQ(pow_series(a, Rat(static_cast<long>(e))), expected);
    }
}

TEST(SinCos, MatchesTaylorCoefficients)
{
    const auto [s, c] = sin_cos_series(S({"0", "1", "0", "0", "0", "0"}), false);
    EXPECT_EQ(s, S({"0", "1", "0", "-1/6", "0", "1/120"}));
    EXPECT_EQ(c, S({"1", "0", "-1/2", "0", "1/24", "0"}));
    const auto [sh, ch] = sin_cos_series(S({"0", "1", "0", "0", "0", "0"}), true);
    EXPECT_EQ(sh, S({"0", "1", "0", "1/6", "0", "1/120"}));
    EXPECT_EQ(ch, S({"1", "0", "1/2", "0", "1/24", "0"}));
    EXPECT_ORDGAP_ERROR(sin_cos_series(S({"1", "1"}), false), errc::nonzero_constant_term);
}

TEST(SinCos, PythagoreanIdentity)
{
    RngHandle rng(22);
    for (int i = 0; i < 30; ++i) {
        const auto f = random_series(rng, 9, 1);
        const auto [s, c] = sin_cos_series(f, false);
        EXPECT_EQ(mul(s, s) + mul(c, c), from_poly(P({"1"}), 9));
        const auto [sh, ch] = sin_cos_series(f, true);
        EXPECT_EQ(mul(ch, ch) - mul(sh, sh), from_poly(P({"1"}), 9));
    }
}

TEST(SeriesProperties, OrderAdditivity)
{
    RngHandle rng(23);
    for (int i = 0; i < 200; ++i) {
        const std::size_t p = 4 + rng.below(10);
        const auto j = rng.below(p);
        const auto k = rng.below(p);
        auto a = random_series(rng, p, j);
        auto b = random_series(rng, p, k);
        a[j] = gen::nonzero_rat(rng, 5, 4);
        b[k] = gen::nonzero_rat(rng, 5, 4);
        const auto prod = mul(a, b);
        if (j + k < p) {
            EXPECT_EQ(order(prod), OrderResult::known(j + k));
        } else {
            EXPECT_EQ(order(prod), OrderResult::at_least(p));
        }
    }
}

TEST(SeriesProperties, ReSquare)
{
    RngHandle rng(24);
    for (int i = 0; i < 100; ++i) {
        auto a = random_series(rng, 2 + rng.below(10));
        const Rat r = gen::nonzero_rat(rng, 5, 4);
        a[0] = r * r;
        const auto y = sqrt_series(a);
        EXPECT_GT(y[0], 0);
        EXPECT_EQ(mul(y, y), a);
    }
}

TEST(SeriesProperties, ExpLogRoundTrips)
{
    RngHandle rng(25);
    for (int i = 0; i < 100; ++i) {
        const std::size_t p = 1 + rng.below(10);
        auto a = random_series(rng, p);
        a[0] = 1;
        EXPECT_EQ(exp_series(log_series(a)), a);
        const auto b = random_series(rng, p, 1);
        EXPECT_EQ(log_series(exp_series(b)), b);
    }
}

TEST(SeriesProperties, DivisionInvertsMultiplication)
{
    RngHandle rng(26);
    for (int i = 0; i < 100; ++i) {
        const std::size_t p = 3 + rng.below(8);
        const auto k = rng.below(3);
        auto b = random_series(rng, p, k);
        b[k] = gen::nonzero_rat(rng, 5, 4);
        const auto q = random_series(rng, p);
        const auto a = mul(q, b);
        const auto back = divide(a, b);
        EXPECT_EQ(back.precision(), p - k);
        EXPECT_EQ(back, q.truncated(p - k));
    }
}

TEST(SeriesProperties, DerivativeLowersOrder)
{
    RngHandle rng(27);
    for (int i = 0; i < 200; ++i) {
        const std::size_t p = 2 + rng.below(10);
        const auto k = rng.below(p);
        auto a = random_series(rng, p, k);
        a[k] = gen::nonzero_rat(rng, 5, 4);
        const auto da = derivative(a);
        const auto od = order(da);
        if (k >= 1) {
            EXPECT_EQ(od, OrderResult::known(k - 1));
        }
        EXPECT_LE(order(a).value, od.value + 1);
    }
}

TEST(SeriesProperties, PowMatchesDifferentialEquation)
{
    RngHandle rng(28);
    for (int i = 0; i < 60; ++i) {
        const std::size_t p = 2 + rng.below(8);
        auto a = random_series(rng, p);
        a[0] = 1;
        const Rat alpha = gen::small_rat(rng, 5, 4);
        const auto y = pow_series(a, alpha);
        // a y' = alpha a' y
        EXPECT_EQ(mul(a.truncated(p - 1), derivative(y)), scale(mul(derivative(a), y.truncated(p - 1)), alpha));
    }
}
