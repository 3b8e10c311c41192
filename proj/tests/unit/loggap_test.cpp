#include <gtest/gtest.h>

#include <cmath>

#include <ordgap/loggap.hpp>

#include "generators.hpp"
#include "test_util.hpp"

using namespace ordgap;
using testutil::P;
using testutil::Q;

namespace
{

LogSumInstance two_term(const Int &x, long c1, std::vector<Int> b1, long c2, std::vector<Int> b2)
{
    return LogSumInstance{x, {LogTerm{c1, std::move(b1)}, LogTerm{c2, std::move(b2)}}};
}

const Int three_pow_111_plus_1 = pow_int(3, 111) + 1;

} // namespace

TEST(LogSumOrder, Examples)
{
    const auto a = log_sum_order({1, -1}, {P({"1", "2", "1"}), P({"1", "2"})});
    EXPECT_EQ(a.report.order, OrderResult::known(2));
    EXPECT_EQ(a.report.bound, 4u);
    EXPECT_TRUE(a.report.holds());
    EXPECT_TRUE(a.routes_agree);

    const auto b = log_sum_order({1}, {P({"1", "1"})});
    EXPECT_EQ(b.report.order, OrderResult::known(1));
    EXPECT_EQ(b.report.bound, 1u);
    EXPECT_TRUE(b.report.holds());

    const auto c = log_sum_order({2, -2}, {P({"1", "1"}), P({"1", "1"})});
    EXPECT_EQ(c.report.status, BoundStatus::zero_sum);
    EXPECT_TRUE(c.routes_agree);
    EXPECT_FALSE(c.derivative_numerator_order.has_value());
}

TEST(LogSumOrder, NonUnitConstantUsesDerivativeRoute)
{
    const auto r = log_sum_order({1, -1}, {P({"2", "2"}), P({"1", "1"})});
    EXPECT_FALSE(r.series_order.has_value());
    // log(2 + 2x) - log(1 + x) = log 2, a nonzero constant; N = 0.
    EXPECT_EQ(r.report.status, BoundStatus::indeterminate);

    const auto s = log_sum_order({1}, {P({"3", "1"})});
    EXPECT_EQ(s.report.order, OrderResult::known(1));
    EXPECT_TRUE(s.report.holds());

    EXPECT_ORDGAP_ERROR(log_sum_order({1}, {P({"0", "1"})}), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(log_sum_order({1, 2}, {P({"1", "1"})}), errc::invalid_argument);
}

TEST(LogSumOrder, RandomInstancesRespectBoundAndRoutesAgree)
{
    RngHandle rng(81);
    for (int iter = 0; iter < 300; ++iter) {
        const auto [c, f] = gen::log_order_instance(rng);
        const auto r = log_sum_order(c, f);
        EXPECT_TRUE(r.routes_agree) << "iteration " << iter;
        EXPECT_NE(r.report.status, BoundStatus::violated) << "iteration " << iter;
        EXPECT_NE(r.report.status, BoundStatus::indeterminate) << "iteration " << iter;
    }
}

TEST(GapExponents, Examples)
{
    const auto e22 = gap_exponents(2, 2);
    EXPECT_EQ(e22.p1, 111u);
    EXPECT_EQ(e22.p2, 11u);
    const auto e12 = gap_exponents(1, 2);
    EXPECT_EQ(e12.p1, 28u);
    EXPECT_EQ(e12.p2, 5u);
    EXPECT_ORDGAP_ERROR(gap_exponents(0, 2), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(gap_exponents(1, 1), errc::invalid_argument);
}

TEST(GapExponents, MatchDoubleEvaluationAndAreMonotone)
{
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t d = 2; d <= 12; ++d) {
            const double dn = static_cast<double>(d * n);
            const auto e = gap_exponents(n, d);
            // The double values never land within 1e-9 of an integer here.
            EXPECT_EQ(e.p1, static_cast<std::size_t>(std::ceil(20.0 * dn * std::log(dn))));
            EXPECT_EQ(e.p2, static_cast<std::size_t>(std::ceil(1.0 + dn * (std::log(dn) + 1.0))));
            if (n > 1) {
                EXPECT_GE(e.p1, gap_exponents(n - 1, d).p1);
                EXPECT_GE(e.p2, gap_exponents(n - 1, d).p2);
            }
            if (d > 2) {
                EXPECT_GE(e.p1, gap_exponents(n, d - 1).p1);
                EXPECT_GE(e.p2, gap_exponents(n, d - 1).p2);
            }
        }
    }
}

TEST(LogSumParams, DerivedQuantities)
{
    const auto p = log_sum_params(two_term(10, 3, {1, -4}, -2, {2}));
    EXPECT_EQ(p.n, 2u);
    EXPECT_EQ(p.big_b, 4);
    EXPECT_EQ(p.big_c, 3);
    EXPECT_EQ(p.d, 3u);
    EXPECT_EQ(p.degrees, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(p.a, (std::vector<Int>{100 + 10 - 4, 12}));
    EXPECT_EQ(p.big_a, 3 * 2 - 2 * 1);

    EXPECT_ORDGAP_ERROR(log_sum_params(LogSumInstance{10, {}}), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(log_sum_params(LogSumInstance{10, {LogTerm{1, {}}}}), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(log_sum_params(LogSumInstance{0, {LogTerm{1, {1}}}}), errc::invalid_argument);
    EXPECT_ORDGAP_ERROR(log_sum_params(LogSumInstance{2, {LogTerm{1, {-3}}}}), errc::invalid_argument);
}

TEST(CoeffHij, Examples)
{
    EXPECT_EQ(coeff_hij({1}, 1).series_route, 1);
    EXPECT_EQ(coeff_hij({1}, 2).series_route, Q("-1/2"));
    const auto h = coeff_hij({1, 1}, 2);
    EXPECT_EQ(h.series_route, Q("1/2"));
    EXPECT_TRUE(h.agree());
}

TEST(CoeffHij, MultinomialCounts)
{
    // (b1 y + b2 y^2)^2 = b1^2 y^2 + 2 b1 b2 y^3 + b2^2 y^4
    const auto v = multinomial_v({3, 5}, 3);
    ASSERT_GE(v.size(), 3u);
    EXPECT_EQ(v[2], 2 * 3 * 5);
    EXPECT_EQ(v[3], 27);
    EXPECT_EQ(v[1], 0);
}

TEST(CoeffHij, TwoRoutesAgreeOnRandomPolynomials)
{
    RngHandle rng(82);
    for (int iter = 0; iter < 100; ++iter) {
        const auto deg = static_cast<std::size_t>(gen::range(rng, 1, 4));
        std::vector<Int> b;
        for (std::size_t k = 0; k < deg; ++k) {
            b.emplace_back(gen::range(rng, -5, 5));
        }
        const auto series = log_coefficients(b, 12);
        for (std::size_t j = 1; j <= 12; ++j) {
            const auto h = coeff_hij(b, j);
            EXPECT_TRUE(h.agree()) << "iteration " << iter << " j " << j;
            EXPECT_EQ(h.series_route, series[j]);
            EXPECT_EQ(multinomial_log_coefficient(b, j), series[j]);
        }
    }
}

TEST(SjBoundsCheck, Examples)
{
    for (long x : {3L, 10L, 1000L}) {
        const auto inst = two_term(x, 1, {1}, -1, {2});
        const auto r = sj_bounds_check(inst, 8);
        const Rat y = make_rat(1, x);
        ASSERT_TRUE(r.ell.has_value());
        EXPECT_EQ(*r.ell, 1u);
        EXPECT_EQ(r.s[1], -y);
        EXPECT_EQ(r.s[2], Q("3/2") * y * y);
        EXPECT_LE(abs(r.s[2]), y * y * 2 * 1 * pow_int(2 * 2, 3));
        EXPECT_TRUE(r.upper_bound_holds);
        EXPECT_TRUE(r.lower_bound_holds);
        EXPECT_TRUE(r.integrality_holds);
        EXPECT_TRUE(r.ell_within_dn);
    }
}

TEST(SjBoundsCheck, WrongBranchAndArguments)
{
    EXPECT_ORDGAP_ERROR(sj_bounds_check(two_term(10, 1, {1}, 1, {2}), 8), errc::wrong_branch);
    EXPECT_ORDGAP_ERROR(sj_bounds_check(two_term(10, 1, {1}, -1, {2}), 0), errc::invalid_argument);
}

TEST(SjBoundsCheck, IdenticalTermsHaveNoEll)
{
    const auto r = sj_bounds_check(two_term(10, 1, {3, 1}, -1, {3, 1}), 6);
    EXPECT_FALSE(r.ell.has_value());
    EXPECT_FALSE(r.all_hold());
}

TEST(SjBoundsCheck, RandomInstancesHoldIncludingGoalRatios)
{
    RngHandle rng(83);
    std::size_t goal_checked = 0;
    for (int iter = 0; iter < 60; ++iter) {
        const bool huge = gen::coin(rng);
        const auto inst = gen::log_sum_instance(rng, true, huge);
        const auto r = sj_bounds_check(inst, 12);
        if (!r.ell) {
            continue;
        }
        const auto p = log_sum_params(inst);
        EXPECT_TRUE(r.upper_bound_holds) << "iteration " << iter;
        EXPECT_TRUE(r.ell_within_dn) << "iteration " << iter;
        EXPECT_TRUE(r.integrality_holds) << "iteration " << iter;
        EXPECT_TRUE(r.lower_bound_holds) << "iteration " << iter;
        EXPECT_LE(*r.ell, p.d * p.n);
        if (huge) {
            EXPECT_TRUE(r.preconditions_met);
            EXPECT_TRUE(r.goal_checked);
            EXPECT_TRUE(r.goal_holds) << "iteration " << iter;
            ++goal_checked;
        }
    }
    EXPECT_GT(goal_checked, 10u);
}

TEST(GapVerify, AZeroBranchExample)
{
    const auto inst = two_term(three_pow_111_plus_1, 1, {1}, -1, {2});
    const auto r = gap_verify(inst, 4096);
    EXPECT_EQ(r.branch, GapBranch::a_zero);
    EXPECT_EQ(r.exponents.p1, 111u);
    EXPECT_EQ(r.exponents.p2, 11u);
    EXPECT_TRUE(r.preconditions_met);
    EXPECT_TRUE(r.resolved);
    EXPECT_TRUE(r.gap_holds);
    EXPECT_EQ(r.e.certified_sign(), -1);
    // |E| = log(1 + 1/(X+1)) lies between 1/(X+2) and 1/(X+1).
    EXPECT_GE(r.e.abs_upper(), make_rat(1, three_pow_111_plus_1 + 2));
    EXPECT_LE(r.abs_e_lower, make_rat(1, three_pow_111_plus_1 + 1));
    EXPECT_GE(r.abs_e_lower, r.threshold);
    EXPECT_EQ(r.threshold, make_rat(1, pow_int(three_pow_111_plus_1, 11)));
}

TEST(GapVerify, ANonzeroBranchExample)
{
    const auto r = gap_verify(two_term(three_pow_111_plus_1, 1, {1}, 1, {2}), 512);
    EXPECT_EQ(r.branch, GapBranch::a_nonzero);
    EXPECT_TRUE(r.gap_holds);
    ASSERT_TRUE(r.half_log_x_holds.has_value());
    EXPECT_TRUE(*r.half_log_x_holds);
}

TEST(GapVerify, EqualTermsAreExactlyZero)
{
    const auto r = gap_verify(two_term(1000, 1, {5}, -1, {5}), 256);
    EXPECT_TRUE(r.exact_zero);
    EXPECT_FALSE(r.resolved);
    EXPECT_FALSE(r.gap_holds);
    EXPECT_TRUE(r.e.contains_zero());
}

TEST(GapVerify, HiddenZeroIsExactlyDetected)
{
    // (X+1)^2 = X^2 + 2X + 1, so 2 log(X+1) - log(X^2+2X+1) = 0.
    const auto r = gap_verify(two_term(50, 2, {1}, -1, {2, 1}), 128);
    EXPECT_TRUE(r.exact_zero);
    EXPECT_FALSE(r.resolved);
}

TEST(GapVerify, SmallXReportsUnmetPreconditions)
{
    const auto r = gap_verify(two_term(10, 1, {1}, -1, {2}), 128);
    EXPECT_FALSE(r.preconditions_met);
    EXPECT_TRUE(r.resolved);
    // log(11/12) is far above 10^-11.
    EXPECT_TRUE(r.gap_holds);
}

TEST(GapVerify, TinyCapLeavesTinyGapUnresolved)
{
    const auto r = gap_verify(two_term(three_pow_111_plus_1, 1, {1}, -1, {2}), 64, 128);
    EXPECT_FALSE(r.resolved);
    EXPECT_FALSE(r.exact_zero);
    EXPECT_FALSE(r.gap_holds);
}

TEST(GapVerify, HoldsOnRandomInstancesMeetingPreconditions)
{
    RngHandle rng(84);
    std::size_t verified = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const auto inst = gen::log_sum_instance(rng, gen::coin(rng), true);
        const auto r = gap_verify(inst, 256);
        EXPECT_TRUE(r.preconditions_met);
        if (r.exact_zero) {
            continue;
        }
        ASSERT_TRUE(r.resolved) << "iteration " << iter;
        EXPECT_TRUE(r.gap_holds) << "iteration " << iter;
        EXPECT_EQ(r.abs_e_lower, r.e.abs_lower());
        if (r.branch == GapBranch::a_nonzero) {
            EXPECT_EQ(r.half_log_x_holds, std::optional<bool>(true));
        }
        ++verified;
    }
    EXPECT_GT(verified, 25u);
}

TEST(GapVerify, LowerBoundStaysValidUnderRefinement)
{
    const auto inst = two_term(three_pow_111_plus_1, 1, {1}, -1, {2});
    const auto params = log_sum_params(inst);
    const Rat truth_upper = make_rat(1, three_pow_111_plus_1 + 1);
    for (std::size_t prec : {512u, 1024u, 4096u, 8192u}) {
        const auto e = detail::log_sum_enclosure(inst, params, prec);
        ASSERT_NE(e.certified_sign(), 0) << prec;
        EXPECT_LE(e.abs_lower(), truth_upper) << prec;
    }
}
