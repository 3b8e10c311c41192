#ifndef ORDGAP_LOGGAP_HPP
#define ORDGAP_LOGGAP_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/interval.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/ode_sum.hpp>
#include <ordgap/polynomial.hpp>
#include <ordgap/series.hpp>

namespace ordgap
{

// ---------------------------------------------------------------------------
// Order of sum_i c_i log f_i(x)
// ---------------------------------------------------------------------------

struct LogOrderReport {
    BoundReport report;
    // Order from the coefficients of sum c_i log f_i; absent unless every
    // f_i(0) = 1.
    std::optional<OrderResult> series_order;
    // Index of the first nonzero coefficient of sum c_i f_i' prod_{j!=i} f_j,
    // the numerator of S' over prod f_i; absent when that numerator is zero.
    std::optional<std::size_t> derivative_numerator_order;
    bool routes_agree = true;
};

/// Checks ord(S) <= n d for S = sum c_i log f_i with deg f_i <= d.
///
/// Two independent routes: the series route expands each logarithm, the
/// derivative route uses S' = N / prod f_i with the polynomial
/// N = sum c_i f_i' prod_{j != i} f_j, so ord(S') = ord(N) and, when
/// S(0) = 0, ord(S) = ord(N) + 1. With some f_i(0) != 1 the constant term of
/// S is transcendental and only the derivative route is used, as an upper
/// bound ord(S) <= ord(N) + 1.
inline LogOrderReport log_sum_order(const std::vector<Rat> &c, const std::vector<Poly> &f,
                                    std::optional<std::size_t> precision = std::nullopt)
{
    if (c.empty() || c.size() != f.size()) {
        fail(errc::invalid_argument, "log_sum_order needs nonempty lists of equal length");
    }
    const auto n = f.size();
    long d = 0;
    bool normalised = true;
    for (const auto &fi : f) {
        if (poly_coeff(fi, 0) <= 0) {
            fail(errc::invalid_argument, "log_sum_order needs f_i(0) > 0");
        }
        normalised = normalised && poly_coeff(fi, 0) == 1;
        d = std::max(d, poly_degree(fi));
    }
    const auto bound = n * static_cast<std::size_t>(d);

    Poly numerator;
    for (std::size_t i = 0; i < n; ++i) {
        Poly term = poly_derivative(f[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                term = poly_mul(term, f[j]);
            }
        }
        numerator = poly_add(numerator, poly_scale(term, c[i]));
    }
    LogOrderReport out;
    const auto num_ord = poly_order(numerator);
    if (num_ord >= 0) {
        out.derivative_numerator_order = static_cast<std::size_t>(num_ord);
    }

    if (!normalised) {
        out.report.bound = bound;
        if (out.derivative_numerator_order) {
            out.report.order = OrderResult::known(*out.derivative_numerator_order + 1);
            out.report.status = out.report.order.value <= bound ? BoundStatus::holds : BoundStatus::violated;
        } else {
            // S is the constant sum c_i log f_i(0); its vanishing is not
            // decided here.
            out.report.status = BoundStatus::indeterminate;
        }
        return out;
    }

    const auto p = std::max(precision.value_or(0), bound + 2);
    std::vector<TruncatedSeries> logs;
    for (const auto &fi : f) {
        logs.push_back(log_series(from_poly(fi, p)));
    }
    const auto s = linear_combine(c, logs);
    out.report = classify_order(s, bound);
    out.series_order = out.report.order;
    if (out.report.order.is_known()) {
        out.routes_agree = out.derivative_numerator_order && *out.derivative_numerator_order + 1 == out.report.order.value;
    } else {
        // Zero through index p - 1 >= n d + 1 > deg N + 1 forces N = 0.
        out.routes_agree = !out.derivative_numerator_order;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exponents p1, p2
// ---------------------------------------------------------------------------

struct GapExponents {
    std::size_t p1 = 0;
    std::size_t p2 = 0;
};

namespace detail
{

inline Int ceil_rat(const Rat &q)
{
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace detail

// Smallest integers with p1 >= 20 dn ln(dn) and p2 >= 1 + dn (ln(dn) + 1).
// Both right-hand sides are irrational for dn >= 2, so refining the
// enclosure always pins the ceiling down.
inline GapExponents gap_exponents(std::size_t n, std::size_t d)
{
    if (n < 1 || d < 2) {
        fail(errc::invalid_argument, "gap_exponents needs n >= 1 and d >= 2");
    }
    const Int dn = Int(static_cast<unsigned long>(d)) * static_cast<unsigned long>(n);
    for (std::size_t prec = 64; prec <= (1u << 16); prec *= 2) {
        const Interval ln = log(Interval(dn, prec));
        const Interval v1 = Interval(Int(Int(20) * dn), prec) * ln;
        const Interval v2 = Interval(Int(1), prec) + Interval(dn, prec) * (ln + Interval(Int(1), prec));
        const auto lo1 = detail::ceil_rat(v1.lower());
        const auto lo2 = detail::ceil_rat(v2.lower());
        if (lo1 == detail::ceil_rat(v1.upper()) && lo2 == detail::ceil_rat(v2.upper())) {
            return {lo1.get_ui(), lo2.get_ui()};
        }
    }
    fail(errc::unresolved, "could not certify the ceilings of the gap exponents");
}

// ---------------------------------------------------------------------------
// Instances E = sum c_i log a_i with a_i = X^{d_i} + b_{1,i} X^{d_i-1} + ...
// ---------------------------------------------------------------------------

struct LogTerm {
    Int c;
    // b_{1,i} .. b_{d_i,i}; d_i = b.size() > 0.
    std::vector<Int> b;
};

struct LogSumInstance {
    Int x;
    std::vector<LogTerm> terms;
};

struct LogSumParams {
    std::size_t n = 0;
    // max |b_{j,i}|, at least 1
    Int big_b;
    // max |c_i|
    Int big_c;
    // max d_i + 1
    std::size_t d = 0;
    std::vector<std::size_t> degrees;
    std::vector<Int> a;
    // sum c_i d_i; E = A log X + S
    Int big_a;
};

inline LogSumParams log_sum_params(const LogSumInstance &inst)
{
    if (inst.terms.empty()) {
        fail(errc::invalid_argument, "instance needs at least one term");
    }
    if (inst.x < 1) {
        fail(errc::invalid_argument, "X must be a positive integer");
    }
    LogSumParams p;
    p.n = inst.terms.size();
    p.big_b = 1;
    p.big_c = 0;
    p.big_a = 0;
    std::size_t max_deg = 0;
    for (const auto &t : inst.terms) {
        if (t.b.empty()) {
            fail(errc::invalid_argument, "every term needs d_i > 0 coefficients");
        }
        const auto di = t.b.size();
        max_deg = std::max(max_deg, di);
        p.degrees.push_back(di);
        p.big_c = std::max(p.big_c, Int(abs(t.c)));
        Int a = 1;
        for (const auto &bj : t.b) {
            p.big_b = std::max(p.big_b, Int(abs(bj)));
            a = a * inst.x + bj;
        }
        if (a <= 0) {
            fail(errc::invalid_argument, "a_i must be positive");
        }
        p.a.push_back(std::move(a));
        p.big_a += t.c * static_cast<unsigned long>(di);
    }
    p.d = max_deg + 1;
    return p;
}

// X > max(C^2, (B+1)^p1)
inline bool gap_preconditions_met(const LogSumInstance &inst, const LogSumParams &p, std::size_t p1)
{
    return inst.x > p.big_c * p.big_c && inst.x > pow_int(p.big_b + 1, p1);
}

// ---------------------------------------------------------------------------
// Coefficients h_{i,j} of h_i(y) = log(1 + b_1 y + ... + b_{d_i} y^{d_i})
// ---------------------------------------------------------------------------

// h_1 .. h_{j_max} (index 0 holds h_0 = 0) from the series logarithm.
inline std::vector<Rat> log_coefficients(const std::vector<Int> &b, std::size_t j_max)
{
    Poly poly{Rat(1)};
    for (const auto &bj : b) {
        poly.emplace_back(bj);
    }
    const auto p = std::max(j_max + 1, static_cast<std::size_t>(poly_degree(poly) + 1));
    const auto l = log_series(from_poly(poly, p));
    return {l.coeffs().begin(), l.coeffs().begin() + static_cast<std::ptrdiff_t>(j_max + 1)};
}

namespace detail
{

// Accumulates v_k += multinomial(k; k_1..k_d) prod b_m^{k_m} over all
// (k_1..k_d) with sum m k_m = j, where k = sum k_m.
inline void accumulate_compositions(const std::vector<Int> &b, std::size_t m, std::size_t remaining,
                                    std::vector<std::size_t> &ks, std::vector<Int> &v)
{
    if (m == 0) {
        if (remaining != 0) {
            return;
        }
        std::size_t k = 0;
        for (auto km : ks) {
            k += km;
        }
        Int term = factorial(k);
        for (std::size_t idx = 0; idx < ks.size(); ++idx) {
            term /= factorial(ks[idx]);
        }
        for (std::size_t idx = 0; idx < ks.size(); ++idx) {
            term *= pow_int(b[idx], ks[idx]);
        }
        v[k] += term;
        return;
    }
    for (std::size_t km = 0; km * m <= remaining; ++km) {
        ks[m - 1] = km;
        accumulate_compositions(b, m - 1, remaining - km * m, ks, v);
    }
    ks[m - 1] = 0;
}

} // namespace detail

// v_{k,j} for k = 0..j: the sum over k_1 + 2 k_2 + ... + d k_d = j with
// k_1 + ... + k_d = k of multinomial(k; k_1..k_d) b_1^{k_1} ... b_d^{k_d},
// i.e. the coefficient of y^j in (b_1 y + ... + b_d y^d)^k.
inline std::vector<Int> multinomial_v(const std::vector<Int> &b, std::size_t j)
{
    std::vector<Int> v(j + 1);
    std::vector<std::size_t> ks(b.size(), 0);
    detail::accumulate_compositions(b, b.size(), j, ks, v);
    return v;
}

// h_j = sum_{k=1}^{j} (-1)^(k+1) / k * v_{k,j}
inline Rat multinomial_log_coefficient(const std::vector<Int> &b, std::size_t j)
{
    const auto v = multinomial_v(b, j);
    Rat h = 0;
    for (std::size_t k = 1; k <= j; ++k) {
        const Rat term = make_rat(v[k], Int(static_cast<unsigned long>(k)));
        h += (k % 2 == 1) ? term : Rat(-term);
    }
    return h;
}

struct HijRoutes {
    Rat series_route;
    Rat multinomial_route;

    bool agree() const
    {
        return series_route == multinomial_route;
    }
};

inline HijRoutes coeff_hij(const std::vector<Int> &b, std::size_t j)
{
    if (j < 1) {
        fail(errc::invalid_argument, "coeff_hij needs j >= 1");
    }
    if (b.empty()) {
        fail(errc::invalid_argument, "coeff_hij needs d_i >= 1");
    }
    return {log_coefficients(b, j)[j], multinomial_log_coefficient(b, j)};
}

// ---------------------------------------------------------------------------
// S_j = y^j sum_i c_i h_{i,j} with y = 1/X, in the A = 0 branch
// ---------------------------------------------------------------------------

struct SjReport {
    std::size_t j_max = 0;
    Int big_a;
    std::vector<Rat> s;
    // First j with S_j != 0, if any up to j_max.
    std::optional<std::size_t> ell;
    // |S_j| <= y^j n C (B d)^(j+1) for every j <= j_max
    bool upper_bound_holds = true;
    std::optional<std::size_t> upper_bound_first_failure;
    // ell <= d n
    bool ell_within_dn = false;
    // ell! sum c_i h_{i,ell} is an integer
    bool integrality_holds = false;
    // |S_ell| >= y^ell / ell!
    bool lower_bound_holds = false;
    bool preconditions_met = false;
    std::size_t p1 = 0;
    // |S_{ell+t}| / |S_ell| <= 1 / 2^(t+1) for 1 <= t <= j_max - ell; only
    // evaluated when the preconditions hold.
    bool goal_checked = false;
    bool goal_holds = false;
    std::optional<std::size_t> goal_first_failure;

    bool all_hold() const
    {
        return upper_bound_holds && ell && ell_within_dn && integrality_holds && lower_bound_holds
               && (!goal_checked || goal_holds);
    }
};

inline SjReport sj_bounds_check(const LogSumInstance &inst, std::size_t j_max)
{
    const auto params = log_sum_params(inst);
    if (params.big_a != 0) {
        fail(errc::wrong_branch, "A = sum c_i d_i = " + to_string(params.big_a) + " is nonzero");
    }
    if (j_max < 1) {
        fail(errc::invalid_argument, "j_max must be >= 1");
    }
    SjReport r;
    r.j_max = j_max;
    r.big_a = params.big_a;
    const Rat y = make_rat(Int(1), inst.x);
    const auto n = static_cast<unsigned long>(params.n);
    const Int bd = params.big_b * static_cast<unsigned long>(params.d);

    std::vector<Rat> weighted(j_max + 1);
    for (const auto &t : inst.terms) {
        const auto h = log_coefficients(t.b, j_max);
        for (std::size_t j = 1; j <= j_max; ++j) {
            weighted[j] += t.c * h[j];
        }
    }
    r.s.assign(j_max + 1, Rat(0));
    Rat yj = 1;
    for (std::size_t j = 1; j <= j_max; ++j) {
        yj *= y;
        r.s[j] = yj * weighted[j];
        const Rat upper = yj * n * params.big_c * pow_int(bd, j + 1);
        if (abs(r.s[j]) > upper && r.upper_bound_holds) {
            r.upper_bound_holds = false;
            r.upper_bound_first_failure = j;
        }
        if (!r.ell && r.s[j] != 0) {
            r.ell = j;
        }
    }
    const auto p1 = params.d >= 2 ? gap_exponents(params.n, params.d).p1 : 0;
    r.p1 = p1;
    r.preconditions_met = gap_preconditions_met(inst, params, p1);
    if (!r.ell) {
        return r;
    }
    const auto ell = *r.ell;
    r.ell_within_dn = ell <= params.d * params.n;
    const Int ell_fact = factorial(ell);
    r.integrality_holds = is_integer(weighted[ell] * ell_fact);
    r.lower_bound_holds = abs(r.s[ell]) >= pow_rat(y, ell) / ell_fact;
    if (r.preconditions_met) {
        r.goal_checked = true;
        r.goal_holds = true;
        const Rat s_ell = abs(r.s[ell]);
        for (std::size_t t = 1; ell + t <= j_max; ++t) {
            const Rat ratio = abs(r.s[ell + t]) / s_ell;
            if (ratio > make_rat(Int(1), Int(1) << (t + 1))) {
                r.goal_holds = false;
                r.goal_first_failure = t;
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Certified gap |E| >= X^-p2
// ---------------------------------------------------------------------------

enum class GapBranch { a_nonzero, a_zero };

struct GapReport {
    GapBranch branch = GapBranch::a_zero;
    LogSumParams params;
    GapExponents exponents;
    bool preconditions_met = false;
    // false: E could not be separated from 0 (Unresolved).
    bool resolved = false;
    // E = 0 decided exactly from prod a_i^c_i.
    bool exact_zero = false;
    std::size_t precision_bits = 0;
    Interval e{64};
    Rat abs_e_lower = 0;
    // X^-p2
    Rat threshold = 0;
    bool gap_holds = false;
    // A != 0 only: |E| >= (1/2) log X certified.
    std::optional<bool> half_log_x_holds;
};

namespace detail
{

// E = 0 iff prod_{c_i > 0} a_i^{c_i} = prod_{c_i < 0} a_i^{-c_i}; skipped
// when the products would be too large.
inline std::optional<bool> exact_log_sum_zero(const LogSumInstance &inst, const LogSumParams &p,
                                              std::size_t bit_cap = 1u << 20)
{
    Int total_bits = 0;
    for (std::size_t i = 0; i < p.n; ++i) {
        total_bits += abs(inst.terms[i].c) * static_cast<unsigned long>(bit_length(p.a[i]));
    }
    if (total_bits > static_cast<unsigned long>(bit_cap)) {
        return std::nullopt;
    }
    Int pos = 1, neg = 1;
    for (std::size_t i = 0; i < p.n; ++i) {
        const auto &c = inst.terms[i].c;
        if (c > 0) {
            pos *= pow_int(p.a[i], c.get_ui());
        } else if (c < 0) {
            neg *= pow_int(p.a[i], Int(-c).get_ui());
        }
    }
    return pos == neg;
}

inline Interval log_sum_enclosure(const LogSumInstance &inst, const LogSumParams &p, std::size_t prec)
{
    Interval acc(prec);
    for (std::size_t i = 0; i < p.n; ++i) {
        acc = acc + Interval(inst.terms[i].c, prec) * log(Interval(p.a[i], prec));
    }
    return acc;
}

} // namespace detail

// Encloses E with interval arithmetic, doubling the precision from
// initial_precision_bits until 0 is excluded (cap 2^16 bits), and compares
// the certified |E| against X^-p2. Unmet preconditions are reported, not
// fatal.
inline GapReport gap_verify(const LogSumInstance &inst, std::size_t initial_precision_bits,
                            std::size_t precision_cap = 1u << 16)
{
    GapReport r;
    r.params = log_sum_params(inst);
    r.branch = r.params.big_a != 0 ? GapBranch::a_nonzero : GapBranch::a_zero;
    if (r.params.d < 2) {
        fail(errc::invalid_argument, "d = max d_i + 1 must be >= 2");
    }
    r.exponents = gap_exponents(r.params.n, r.params.d);
    r.preconditions_met = gap_preconditions_met(inst, r.params, r.exponents.p1);
    r.threshold = make_rat(Int(1), pow_int(inst.x, r.exponents.p2));

    if (auto zero = detail::exact_log_sum_zero(inst, r.params); zero && *zero) {
        r.exact_zero = true;
        r.precision_bits = initial_precision_bits;
        r.e = detail::log_sum_enclosure(inst, r.params, initial_precision_bits);
        return r;
    }
    auto prec = std::max<std::size_t>(initial_precision_bits, 64);
    while (true) {
        r.e = detail::log_sum_enclosure(inst, r.params, prec);
        r.precision_bits = prec;
        if (r.e.certified_sign() != 0) {
            break;
        }
        if (prec >= precision_cap) {
            return r;
        }
        prec = std::min(precision_cap, 2 * prec);
    }
    r.resolved = true;
    r.abs_e_lower = r.e.abs_lower();
    r.gap_holds = r.abs_e_lower >= r.threshold;
    if (r.branch == GapBranch::a_nonzero) {
        const Interval half_log_x = log(Interval(inst.x, prec)) * Interval(Rat(1, 2), prec);
        r.half_log_x_holds = r.abs_e_lower >= half_log_x.upper();
    }
    return r;
}

} // namespace ordgap

#endif // ORDGAP_LOGGAP_HPP
