#ifndef ORDGAP_SERIES_HPP
#define ORDGAP_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/polynomial.hpp>

namespace ordgap
{

/// Valuation of a truncated series: either the exact index of the first
/// nonzero coefficient, or a lower bound when every known coefficient
/// vanishes. AtLeast is never upgraded to a claim that the series is zero.
struct OrderResult {
    enum class kind_t { known, at_least };

    kind_t kind = kind_t::at_least;
    std::size_t value = 0;

    static OrderResult known(std::size_t k)
    {
        return {kind_t::known, k};
    }
    static OrderResult at_least(std::size_t p)
    {
        return {kind_t::at_least, p};
    }

    bool is_known() const noexcept
    {
        return kind == kind_t::known;
    }

    friend bool operator==(const OrderResult &, const OrderResult &) = default;
};

inline std::ostream &operator<<(std::ostream &os, const OrderResult &o)
{
    return os << (o.is_known() ? "Known(" : "AtLeast(") << o.value << ')';
}

/// A power series known modulo x^P: exactly P rational coefficients for
/// x^0 .. x^(P-1). Nothing is claimed about coefficients at index >= P.
class TruncatedSeries
{
public:
    /// The zero series known to precision P.
    explicit TruncatedSeries(std::size_t precision) : c_(precision)
    {
        if (precision == 0) {
            fail(errc::invalid_argument, "series precision must be >= 1");
        }
    }

    explicit TruncatedSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty()) {
            fail(errc::invalid_argument, "series precision must be >= 1");
        }
    }

    std::size_t precision() const noexcept
    {
        return c_.size();
    }

    const Rat &operator[](std::size_t k) const
    {
        return c_.at(k);
    }

    Rat &operator[](std::size_t k)
    {
        return c_.at(k);
    }

    const std::vector<Rat> &coeffs() const noexcept
    {
        return c_;
    }

    /// Same series, forgetting coefficients at index >= p (p <= precision).
    TruncatedSeries truncated(std::size_t p) const
    {
        if (p == 0 || p > c_.size()) {
            fail(errc::invalid_argument, "cannot truncate to precision " + std::to_string(p) + " from "
                                             + std::to_string(c_.size()));
        }
        return TruncatedSeries(std::vector<Rat>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(p)));
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    std::vector<Rat> c_;
};

inline std::ostream &operator<<(std::ostream &os, const TruncatedSeries &s)
{
    bool first = true;
    for (std::size_t k = 0; k < s.precision(); ++k) {
        if (s[k] == 0) {
            continue;
        }
        os << (first ? "" : " + ") << s[k];
        if (k > 0) {
            os << "*x^" << k;
        }
        first = false;
    }
    if (first) {
        os << '0';
    }
    return os << " + O(x^" << s.precision() << ')';
}

/// Embed a polynomial as a series known to `precision` coefficients.
inline TruncatedSeries from_poly(const Poly &poly, std::size_t precision)
{
    const auto support = static_cast<std::size_t>(poly_degree(poly) + 1);
    if (precision < support) {
        fail(errc::invalid_argument, "precision " + std::to_string(precision) + " is below polynomial support "
                                         + std::to_string(support));
    }
    TruncatedSeries s(precision);
    for (std::size_t k = 0; k < support; ++k) {
        s[k] = poly[k];
    }
    return s;
}

inline OrderResult order(const TruncatedSeries &a)
{
    for (std::size_t k = 0; k < a.precision(); ++k) {
        if (a[k] != 0) {
            return OrderResult::known(k);
        }
    }
    return OrderResult::at_least(a.precision());
}

inline TruncatedSeries scale(const TruncatedSeries &a, const Rat &c)
{
    TruncatedSeries r(a.precision());
    if (c != 0) {
        for (std::size_t k = 0; k < a.precision(); ++k) {
            r[k] = a[k] * c;
        }
    }
    return r;
}

inline TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
{
    TruncatedSeries r(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < r.precision(); ++k) {
        r[k] = a[k] + b[k];
    }
    return r;
}

inline TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b)
{
    TruncatedSeries r(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < r.precision(); ++k) {
        r[k] = a[k] - b[k];
    }
    return r;
}

/// sum_i coeffs[i] * series[i], at the smallest input precision.
inline TruncatedSeries linear_combine(const std::vector<Rat> &coeffs, const std::vector<TruncatedSeries> &series)
{
    if (coeffs.empty() || coeffs.size() != series.size()) {
        fail(errc::invalid_argument, "linear_combine needs nonempty lists of equal length");
    }
    std::size_t p = series.front().precision();
    for (const auto &s : series) {
        p = std::min(p, s.precision());
    }
    TruncatedSeries r(p);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) {
            continue;
        }
        for (std::size_t k = 0; k < p; ++k) {
            if (series[i][k] != 0) {
                r[k] += coeffs[i] * series[i][k];
            }
        }
    }
    return r;
}

/// Cauchy product at precision min(Pa, Pb).
inline TruncatedSeries mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const auto p = std::min(a.precision(), b.precision());
    TruncatedSeries r(p);
    Rat t;
    for (std::size_t i = 0; i < p; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j < p; ++j) {
            if (b[j] == 0) {
                continue;
            }
            mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
            mpq_add(r[i + j].get_mpq_t(), r[i + j].get_mpq_t(), t.get_mpq_t());
        }
    }
    return r;
}

inline TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return mul(a, b);
}

/// a / b. If ord(b) = k the quotient is known to precision min(Pa, Pb) - k,
/// and a must itself be divisible by x^k.
inline TruncatedSeries divide(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const auto ob = order(b);
    if (!ob.is_known()) {
        fail(errc::division_indeterminate, "divisor vanishes to precision " + std::to_string(b.precision()));
    }
    const auto k = ob.value;
    const auto pin = std::min(a.precision(), b.precision());
    if (pin <= k) {
        fail(errc::insufficient_precision, "no coefficient of the quotient is determined");
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] != 0) {
            fail(errc::not_divisible, "dividend order is below divisor order " + std::to_string(k));
        }
    }
    const auto p = pin - k;
    TruncatedSeries r(p);
    const Rat inv_lead = 1 / b[k];
    Rat acc, t;
    for (std::size_t m = 0; m < p; ++m) {
        acc = a[m + k];
        for (std::size_t i = 1; i <= m; ++i) {
            if (b[k + i] == 0 || r[m - i] == 0) {
                continue;
            }
            mpq_mul(t.get_mpq_t(), b[k + i].get_mpq_t(), r[m - i].get_mpq_t());
            mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
        }
        r[m] = acc * inv_lead;
    }
    return r;
}

/// d/dx; the result is known to one fewer coefficient.
inline TruncatedSeries derivative(const TruncatedSeries &a)
{
    if (a.precision() < 2) {
        fail(errc::insufficient_precision, "derivative of a series known to a single coefficient");
    }
    TruncatedSeries r(a.precision() - 1);
    for (std::size_t k = 0; k + 1 < a.precision(); ++k) {
        r[k] = a[k + 1] * static_cast<unsigned long>(k + 1);
    }
    return r;
}

/// Square root with positive constant term. The constant term must be a
/// nonzero square in Q so that every coefficient stays rational.
inline TruncatedSeries sqrt_series(const TruncatedSeries &a)
{
    const Rat &a0 = a[0];
    if (a0 <= 0 || !is_perfect_square(a0.get_num()) || !is_perfect_square(a0.get_den())) {
        fail(errc::not_square_constant_term, "constant term " + to_string(a0) + " is not a nonzero rational square");
    }
    const auto p = a.precision();
    TruncatedSeries y(p);
    y[0] = make_rat(int_isqrt(a0.get_num()).root, int_isqrt(a0.get_den()).root);
    const Rat inv_two_y0 = 1 / (2 * y[0]);
    Rat acc, t;
    for (std::size_t k = 1; k < p; ++k) {
        acc = a[k];
        for (std::size_t i = 1; i < k; ++i) {
            if (y[i] == 0 || y[k - i] == 0) {
                continue;
            }
            mpq_mul(t.get_mpq_t(), y[i].get_mpq_t(), y[k - i].get_mpq_t());
            mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
        }
        y[k] = acc * inv_two_y0;
    }
    return y;
}

/// exp(a) for a(0) = 0, from y' = a' y, y(0) = 1.
inline TruncatedSeries exp_series(const TruncatedSeries &a)
{
    if (a[0] != 0) {
        fail(errc::nonzero_constant_term, "exp_series needs a(0) = 0, got " + to_string(a[0]));
    }
    const auto p = a.precision();
    TruncatedSeries y(p);
    y[0] = 1;
    Rat acc, t;
    for (std::size_t k = 1; k < p; ++k) {
        acc = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (a[j] == 0 || y[k - j] == 0) {
                continue;
            }
            mpq_mul(t.get_mpq_t(), a[j].get_mpq_t(), y[k - j].get_mpq_t());
            t *= static_cast<unsigned long>(j);
            acc += t;
        }
        y[k] = acc / static_cast<unsigned long>(k);
    }
    return y;
}

/// log(a) for a(0) = 1, the integral of a'/a with zero constant term.
inline TruncatedSeries log_series(const TruncatedSeries &a)
{
    if (a[0] != 1) {
        fail(errc::non_unit_constant_term, "log_series needs a(0) = 1, got " + to_string(a[0]));
    }
    const auto p = a.precision();
    TruncatedSeries l(p);
    Rat acc, t;
    // k l_k = k a_k - sum_{j=1}^{k-1} j l_j a_{k-j}
    for (std::size_t k = 1; k < p; ++k) {
        acc = a[k] * static_cast<unsigned long>(k);
        for (std::size_t j = 1; j < k; ++j) {
            if (l[j] == 0 || a[k - j] == 0) {
                continue;
            }
            mpq_mul(t.get_mpq_t(), l[j].get_mpq_t(), a[k - j].get_mpq_t());
            t *= static_cast<unsigned long>(j);
            acc -= t;
        }
        l[k] = acc / static_cast<unsigned long>(k);
    }
    return l;
}

/// a^alpha for a(0) = 1 and rational alpha, from a y' = alpha a' y.
inline TruncatedSeries pow_series(const TruncatedSeries &a, const Rat &alpha)
{
    if (a[0] != 1) {
        fail(errc::non_unit_constant_term, "pow_series needs a(0) = 1, got " + to_string(a[0]));
    }
    const auto p = a.precision();
    TruncatedSeries y(p);
    y[0] = 1;
    Rat acc, w;
    // k y_k = sum_{j=1}^{k} (alpha j - (k - j)) a_j y_{k-j}
    for (std::size_t k = 1; k < p; ++k) {
        acc = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (a[j] == 0 || y[k - j] == 0) {
                continue;
            }
            w = alpha * static_cast<unsigned long>(j);
            w -= static_cast<unsigned long>(k - j);
            acc += w * a[j] * y[k - j];
        }
        y[k] = acc / static_cast<unsigned long>(k);
    }
    return y;
}

/// (sin f, cos f), or (sinh f, cosh f) when hyperbolic, for f(0) = 0.
/// Coupled recurrences s' = f' c, c' = -+ f' s keep everything rational.
inline std::pair<TruncatedSeries, TruncatedSeries> sin_cos_series(const TruncatedSeries &f, bool hyperbolic)
{
    if (f[0] != 0) {
        fail(errc::nonzero_constant_term, "sin_cos_series needs f(0) = 0, got " + to_string(f[0]));
    }
    const auto p = f.precision();
    TruncatedSeries s(p), c(p);
    c[0] = 1;
    Rat as, ac;
    for (std::size_t k = 1; k < p; ++k) {
        as = 0;
        ac = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (f[j] == 0) {
                continue;
            }
            const Rat jf = f[j] * static_cast<unsigned long>(j);
            as += jf * c[k - j];
            ac += jf * s[k - j];
        }
        s[k] = as / static_cast<unsigned long>(k);
        c[k] = (hyperbolic ? ac : Rat(-ac)) / static_cast<unsigned long>(k);
    }
    return {std::move(s), std::move(c)};
}

} // namespace ordgap

#endif // ORDGAP_SERIES_HPP
