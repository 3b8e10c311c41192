#ifndef ORDGAP_ODE_SUM_HPP
#define ORDGAP_ODE_SUM_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/polynomial.hpp>
#include <ordgap/series.hpp>
#include <ordgap/wronskian.hpp>

namespace ordgap
{

/// Power series solution of q y' = p y with y(0) = y0.
///
/// Equating the coefficients of x^k gives
///   (k+1) q_0 y_{k+1} = sum_j p_j y_{k-j} - sum_{j>=1} q_j (k+1-j) y_{k+1-j},
/// which determines every coefficient once q(0) != 0.
inline TruncatedSeries ode_series(const Poly &p, const Poly &q, const Rat &y0, std::size_t precision)
{
    const Rat q0 = poly_coeff(q, 0);
    if (q0 == 0) {
        fail(errc::invalid_argument, "ode_series needs q(0) != 0");
    }
    TruncatedSeries y(precision);
    y[0] = y0;
    const auto dp = poly_degree(p);
    const auto dq = poly_degree(q);
    Rat acc;
    for (std::size_t k = 0; k + 1 < precision; ++k) {
        acc = 0;
        for (long j = 0; j <= dp && static_cast<std::size_t>(j) <= k; ++j) {
            const auto &pj = p[static_cast<std::size_t>(j)];
            if (pj != 0) {
                acc += pj * y[k - static_cast<std::size_t>(j)];
            }
        }
        for (long j = 1; j <= dq && static_cast<std::size_t>(j) <= k + 1; ++j) {
            const auto &qj = q[static_cast<std::size_t>(j)];
            const auto idx = k + 1 - static_cast<std::size_t>(j);
            if (qj != 0 && y[idx] != 0) {
                acc -= qj * y[idx] * static_cast<unsigned long>(idx);
            }
        }
        y[k + 1] = acc / (q0 * static_cast<unsigned long>(k + 1));
    }
    return y;
}

struct OdeTerm {
    Rat c;
    Poly g;
    Poly p;
    Poly q;
    Rat y0;
};

// S = sum c_i g_i y_i with q_i y_i' = p_i y_i; all polynomial degrees <= d.
struct OdeSumInstance {
    std::size_t d = 0;
    std::vector<OdeTerm> terms;
};

struct SqrtTerm {
    Rat c;
    Poly g;
    Poly f;
};

// S = sum c_i g_i sqrt(f_i), branch with positive constant term.
struct SqrtSumInstance {
    std::size_t d = 0;
    std::vector<SqrtTerm> terms;
};

enum class BoundStatus { holds, violated, zero_sum, indeterminate };

inline const char *name(BoundStatus s)
{
    switch (s) {
        case BoundStatus::holds:
            return "Holds";
        case BoundStatus::violated:
            return "Violated";
        case BoundStatus::zero_sum:
            return "ZeroSum";
        case BoundStatus::indeterminate:
            return "Indeterminate";
    }
    return "?";
}

struct BoundReport {
    BoundStatus status = BoundStatus::indeterminate;
    OrderResult order;
    std::size_t bound = 0;
    std::size_t precision = 0;
    // Literal closed form for the corollary families, which only applies
    // under its degree hypothesis (see special_family_check).
    std::optional<std::size_t> stated_bound;
    std::optional<bool> stated_holds;

    bool holds() const noexcept
    {
        return status == BoundStatus::holds;
    }
};

// Known(k): holds iff k <= bound. All-zero to precision P: the sum is zero
// when P > bound (a nonzero sum would show up by index bound), otherwise the
// truncation is too short to say anything.
inline BoundReport classify_order(const TruncatedSeries &s, std::size_t bound)
{
    BoundReport r;
    r.order = order(s);
    r.bound = bound;
    r.precision = s.precision();
    if (r.order.is_known()) {
        r.status = r.order.value <= bound ? BoundStatus::holds : BoundStatus::violated;
    } else {
        r.status = r.order.value >= bound + 1 ? BoundStatus::zero_sum : BoundStatus::indeterminate;
    }
    return r;
}

namespace detail
{

inline void require_degree(const Poly &p, std::size_t d, const char *what)
{
    if (poly_degree(p) > static_cast<long>(d)) {
        fail(errc::invalid_argument, std::string(what) + " has degree " + std::to_string(poly_degree(p))
                                         + " > d = " + std::to_string(d));
    }
}

inline void validate(const OdeSumInstance &inst)
{
    if (inst.terms.empty()) {
        fail(errc::invalid_argument, "instance needs at least one term");
    }
    for (const auto &t : inst.terms) {
        require_degree(t.g, inst.d, "g");
        require_degree(t.p, inst.d, "p");
        require_degree(t.q, inst.d, "q");
        if (poly_coeff(t.q, 0) == 0) {
            fail(errc::invalid_argument, "q(0) must be nonzero");
        }
        if (t.y0 == 0) {
            fail(errc::invalid_argument, "y0 must be nonzero");
        }
    }
}

} // namespace detail

// Sum of ord(y_i) + n^2 d + n - 1.
inline std::size_t ode_sum_bound(const OdeSumInstance &inst, std::size_t sum_orders)
{
    const auto n = inst.terms.size();
    return sum_orders + n * n * inst.d + n - 1;
}

inline std::vector<TruncatedSeries> ode_solutions(const OdeSumInstance &inst, std::size_t precision)
{
    std::vector<TruncatedSeries> ys;
    ys.reserve(inst.terms.size());
    for (const auto &t : inst.terms) {
        ys.push_back(ode_series(t.p, t.q, t.y0, precision));
    }
    return ys;
}

inline std::size_t sum_of_orders(const std::vector<TruncatedSeries> &ys)
{
    std::size_t total = 0;
    for (const auto &y : ys) {
        // y(0) = y0 != 0, so every order here is Known(0); kept general.
        total += order(y).value;
    }
    return total;
}

inline BoundReport ode_sum_check(const OdeSumInstance &inst, std::size_t precision)
{
    detail::validate(inst);
    const auto ys = ode_solutions(inst, precision);
    TruncatedSeries s(precision);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const auto &t = inst.terms[i];
        s = s + scale(mul(from_poly(t.g, precision), ys[i]), t.c);
    }
    return classify_order(s, ode_sum_bound(inst, sum_of_orders(ys)));
}

// Intermediate step of the ODE bound: ord W(g_1 y_1, ..., g_n y_n) is at most
// sum ord(y_i) + n^2 d. ZeroSum here means the h_i are dependent.
inline BoundReport wronskian_route_check(const OdeSumInstance &inst, std::size_t precision)
{
    detail::validate(inst);
    const auto ys = ode_solutions(inst, precision);
    std::vector<TruncatedSeries> hs;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        hs.push_back(mul(from_poly(inst.terms[i].g, precision), ys[i]));
    }
    const auto n = inst.terms.size();
    const auto w = wronskian_det(SeriesFamily(std::move(hs)));
    return classify_order(w, sum_of_orders(ys) + n * n * inst.d);
}

inline std::size_t sqrt_sum_bound(const SqrtSumInstance &inst)
{
    const auto n = inst.terms.size();
    return inst.d * n * n + n;
}

inline BoundReport sqrt_sum_check(const SqrtSumInstance &inst, std::size_t precision)
{
    if (inst.terms.empty()) {
        fail(errc::invalid_argument, "instance needs at least one term");
    }
    TruncatedSeries s(precision);
    for (const auto &t : inst.terms) {
        detail::require_degree(t.g, inst.d, "g");
        detail::require_degree(t.f, inst.d, "f");
        const auto root = sqrt_series(from_poly(t.f, precision));
        s = s + scale(mul(from_poly(t.g, precision), root), t.c);
    }
    return classify_order(s, sqrt_sum_bound(inst));
}

enum class SpecialKind { exp, trig, rational_power };
enum class TrigFn { cosh, sinh, cos, sin };

// One summand c g y. Exp: y = exp(f). Trig: y = fn(f). RationalPower:
// y = (p/q)^alpha.
struct SpecialTerm {
    Rat c;
    Poly g;
    Poly f;
    TrigFn fn = TrigFn::sin;
    Poly p;
    Poly q;
    Rat alpha;
};

struct SpecialInstance {
    SpecialKind kind = SpecialKind::exp;
    std::size_t d = 1;
    std::vector<SpecialTerm> terms;
};

struct SpecialBounds {
    // Literal corollary bound in terms of d.
    std::size_t stated = 0;
    // Whether its degree hypothesis is met by this instance.
    bool stated_applies = false;
    // Bound guaranteed for this instance: the stated one when it applies,
    // otherwise the ODE bound with the actual ODE degree.
    std::size_t guaranteed = 0;
};

// The exp and trig closed forms treat y_i' = f_i' y_i as an equation of
// degree d - 1, which also needs deg g_i <= d - 1: x^d e^x has order d.
// When some g_i reaches degree d we fall back to n^2 D + n - 1 (and the 2n
// term version for trig) with D = max(deg g_i, deg f_i').
inline SpecialBounds special_family_bounds(const SpecialInstance &inst)
{
    const auto n = inst.terms.size();
    const auto d = inst.d;
    long max_g = -1;
    long max_df = -1;
    for (const auto &t : inst.terms) {
        max_g = std::max(max_g, poly_degree(t.g));
        max_df = std::max(max_df, poly_degree(poly_derivative(t.f)));
    }
    const auto ode_deg = static_cast<std::size_t>(std::max({max_g, max_df, 0L}));
    SpecialBounds b;
    switch (inst.kind) {
        case SpecialKind::exp:
            b.stated = n * n * (d - 1) + n - 1;
            b.stated_applies = max_g <= static_cast<long>(d) - 1;
            b.guaranteed = b.stated_applies ? b.stated : n * n * ode_deg + n - 1;
            break;
        case SpecialKind::trig:
            b.stated = 4 * n * n * (d - 1) + 2 * n - 1;
            b.stated_applies = max_g <= static_cast<long>(d) - 1;
            b.guaranteed = b.stated_applies ? b.stated : 4 * n * n * ode_deg + 2 * n - 1;
            break;
        case SpecialKind::rational_power:
            b.stated = 2 * n * n * d + n - 1;
            b.stated_applies = true;
            b.guaranteed = b.stated;
            break;
    }
    return b;
}

inline TruncatedSeries special_term_series(SpecialKind kind, const SpecialTerm &t, std::size_t precision)
{
    switch (kind) {
        case SpecialKind::exp:
            return exp_series(from_poly(t.f, precision));
        case SpecialKind::trig: {
            const bool hyperbolic = t.fn == TrigFn::cosh || t.fn == TrigFn::sinh;
            auto [s, c] = sin_cos_series(from_poly(t.f, precision), hyperbolic);
            return (t.fn == TrigFn::sin || t.fn == TrigFn::sinh) ? s : c;
        }
        case SpecialKind::rational_power: {
            if (poly_coeff(t.p, 0) != 1 || poly_coeff(t.q, 0) != 1) {
                fail(errc::non_unit_constant_term, "rational power needs p(0) = q(0) = 1");
            }
            return pow_series(divide(from_poly(t.p, precision), from_poly(t.q, precision)), t.alpha);
        }
    }
    fail(errc::invalid_argument, "unknown special kind");
}

inline BoundReport special_family_check(const SpecialInstance &inst, std::size_t precision)
{
    if (inst.terms.empty()) {
        fail(errc::invalid_argument, "instance needs at least one term");
    }
    if (inst.kind != SpecialKind::rational_power && inst.d < 1) {
        fail(errc::invalid_argument, "exp/trig families need d >= 1");
    }
    for (const auto &t : inst.terms) {
        detail::require_degree(t.g, inst.d, "g");
        if (inst.kind == SpecialKind::rational_power) {
            detail::require_degree(t.p, inst.d, "p");
            detail::require_degree(t.q, inst.d, "q");
        } else {
            detail::require_degree(t.f, inst.d, "f");
            if (poly_coeff(t.f, 0) != 0) {
                fail(errc::nonzero_constant_term, "exp/trig families are normalised to f(0) = 0");
            }
        }
    }
    const auto bounds = special_family_bounds(inst);
    TruncatedSeries s(precision);
    for (const auto &t : inst.terms) {
        const auto y = special_term_series(inst.kind, t, precision);
        s = s + scale(mul(from_poly(t.g, y.precision()), y), t.c);
    }
    auto r = classify_order(s, bounds.guaranteed);
    r.stated_bound = bounds.stated;
    if (r.order.is_known()) {
        r.stated_holds = r.order.value <= bounds.stated;
    }
    return r;
}

// Runs check(precision) starting at `start`, doubling while the report is
// Indeterminate, up to `cap`.
template <typename Check>
BoundReport with_precision_escalation(Check &&check, std::size_t start, std::size_t cap)
{
    auto p = std::max<std::size_t>(start, 1);
    while (true) {
        auto r = check(p);
        if (r.status != BoundStatus::indeterminate || p >= cap) {
            return r;
        }
        p = std::min(cap, 2 * p);
    }
}

} // namespace ordgap

#endif // ORDGAP_ODE_SUM_HPP
