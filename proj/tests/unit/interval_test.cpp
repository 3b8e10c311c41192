#include <gtest/gtest.h>

#include <cmath>

#include <ordgap/interval.hpp>

#include "test_util.hpp"

using namespace ordgap;
using testutil::Q;

TEST(Interval, ExactIntegersArePoints)
{
    const Interval a(Int(12345), 64);
    EXPECT_EQ(a.lower(), 12345);
    EXPECT_EQ(a.upper(), 12345);
    EXPECT_EQ(a.certified_sign(), 1);
    EXPECT_EQ(Interval(64).certified_sign(), 0);
    EXPECT_TRUE(Interval(64).contains_zero());
}

TEST(Interval, RationalEnclosureContainsValue)
{
    const Interval third(Q("1/3"), 64);
    EXPECT_LE(third.lower(), Q("1/3"));
    EXPECT_GE(third.upper(), Q("1/3"));
    EXPECT_LT(third.upper() - third.lower(), Rat(1, Int(1) << 60));
}

TEST(Interval, SqrtEnclosesIrrationalRoot)
{
    for (long v : {2L, 3L, 5L, 1000003L}) {
        const auto r = sqrt(Interval(Int(v), 128));
        EXPECT_LT(r.lower() * r.lower(), Rat(v));
        EXPECT_GT(r.upper() * r.upper(), Rat(v));
    }
    const auto exact = sqrt(Interval(Int(49), 64));
    EXPECT_LE(exact.lower(), 7);
    EXPECT_GE(exact.upper(), 7);
}

TEST(Interval, LogAgreesWithDouble)
{
    for (long v : {2L, 10L, 12345L}) {
        const auto l = log(Interval(Int(v), 128));
        EXPECT_NEAR(l.lower().get_d(), std::log(static_cast<double>(v)), 1e-12);
        EXPECT_LT(l.lower(), l.upper());
    }
    const auto zero = log(Interval(Int(1), 64));
    EXPECT_TRUE(zero.contains_zero());
}

TEST(Interval, ArithmeticIsInclusionMonotone)
{
    const Interval two(Int(2), 96);
    const Interval three(Int(3), 96);
    const auto root2 = sqrt(two);
    const auto root3 = sqrt(three);
    const auto s = root2 + root3;
    const auto d = root2 - root3;
    const auto p = root2 * root3;
    // sqrt(2) sqrt(3) = sqrt(6)
    const auto root6 = sqrt(Interval(Int(6), 96));
    EXPECT_LE(p.lower(), root6.upper());
    EXPECT_GE(p.upper(), root6.lower());
    EXPECT_EQ(d.certified_sign(), -1);
    EXPECT_EQ((-d).certified_sign(), 1);
    EXPECT_GT(s.lower(), Q("314/100"));
    EXPECT_LT(s.upper(), Q("315/100"));
}

TEST(Interval, CancellationNeedsPrecision)
{
    // sqrt(n) - sqrt(n + 1) + 1 / (sqrt(n) + sqrt(n + 1)) = 0 in exact arithmetic;
    // only the enclosure width depends on precision.
    const Int n = pow_int(10, 30);
    for (std::size_t prec : {64u, 256u}) {
        const auto a = sqrt(Interval(n, prec));
        const auto b = sqrt(Interval(Int(n + 1), prec));
        const auto diff = a - b;
        EXPECT_LE(diff.lower(), 0);
        if (prec == 64) {
            EXPECT_TRUE(diff.contains_zero());
        } else {
            EXPECT_EQ(diff.certified_sign(), -1);
        }
    }
}

TEST(Interval, AbsBoundsAndDecimal)
{
    const auto d = sqrt(Interval(Int(2), 64)) - Interval(Int(2), 64);
    EXPECT_EQ(d.certified_sign(), -1);
    EXPECT_GT(d.abs_lower(), Q("585/1000"));
    EXPECT_LT(d.abs_upper(), Q("586/1000"));
    EXPECT_LE(d.abs_lower(), d.abs_upper());
    EXPECT_EQ(Interval(64).abs_lower(), 0);
    EXPECT_EQ(d.to_decimal(5), "-5.8579e-01");
    const Interval copy = d;
    EXPECT_EQ(copy.lower(), d.lower());
    EXPECT_EQ(copy.precision(), 64u);
}
