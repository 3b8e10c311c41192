#ifndef ORDGAP_WRONSKIAN_HPP
#define ORDGAP_WRONSKIAN_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/series.hpp>

namespace ordgap
{

using RatMatrix = std::vector<std::vector<Rat>>;
using SeriesMatrix = std::vector<std::vector<TruncatedSeries>>;

// An ordered family f_1..f_n sharing one precision (the smallest of the
// inputs; longer members are truncated).
class SeriesFamily
{
public:
    explicit SeriesFamily(std::vector<TruncatedSeries> members)
    {
        if (members.empty()) {
            fail(errc::invalid_argument, "series family must have at least one member");
        }
        std::size_t p = members.front().precision();
        for (const auto &m : members) {
            p = std::min(p, m.precision());
        }
        members_.reserve(members.size());
        for (auto &m : members) {
            members_.push_back(m.precision() == p ? std::move(m) : m.truncated(p));
        }
    }

    std::size_t size() const noexcept
    {
        return members_.size();
    }
    std::size_t precision() const noexcept
    {
        return members_.front().precision();
    }
    const std::vector<TruncatedSeries> &members() const noexcept
    {
        return members_;
    }
    const TruncatedSeries &operator[](std::size_t i) const
    {
        return members_.at(i);
    }

private:
    std::vector<TruncatedSeries> members_;
};

// (d)_k = d (d-1) ... (d-k+1), (d)_0 = 1.
inline Int falling_factorial(long d, unsigned long k)
{
    Int r = 1;
    for (unsigned long i = 0; i < k; ++i) {
        r *= d - static_cast<long>(i);
    }
    return r;
}

// prod_{i<j} (d_j - d_i).
inline Int vandermonde(const std::vector<long> &d)
{
    Int r = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            r *= d[j] - d[i];
        }
    }
    return r;
}

// Row r holds the r-th derivatives of the members (precision P - r).
inline SeriesMatrix wronskian_matrix(const SeriesFamily &family)
{
    const auto n = family.size();
    if (family.precision() < n) {
        fail(errc::insufficient_precision, "Wronskian of " + std::to_string(n) + " series needs precision >= "
                                               + std::to_string(n) + ", have "
                                               + std::to_string(family.precision()));
    }
    SeriesMatrix m;
    m.reserve(n);
    m.push_back(family.members());
    for (std::size_t r = 1; r < n; ++r) {
        std::vector<TruncatedSeries> row;
        row.reserve(n);
        for (const auto &e : m.back()) {
            row.push_back(derivative(e));
        }
        m.push_back(std::move(row));
    }
    return m;
}

// Division-free determinant by Laplace expansion along the last row with the
// minors of the leading rows memoised per column subset: n 2^(n-1) series
// products. The result precision is the minimum row precision, which is the
// best any method can certify.
inline TruncatedSeries det_by_minors(const SeriesMatrix &m)
{
    const auto n = m.size();
    if (n == 0 || n > 20) {
        fail(errc::invalid_argument, "det_by_minors supports 1 <= n <= 20");
    }
    std::size_t p = std::numeric_limits<std::size_t>::max();
    for (const auto &row : m) {
        if (row.size() != n) {
            fail(errc::invalid_argument, "matrix is not square");
        }
        for (const auto &e : row) {
            p = std::min(p, e.precision());
        }
    }
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::optional<TruncatedSeries>> minors(std::size_t{full} + 1);
    TruncatedSeries one(p);
    one[0] = 1;
    minors[0] = one;
    // minors[S] = det of rows 0..|S|-1 restricted to the columns in S.
    for (std::uint32_t s = 1; s <= full; ++s) {
        const auto k = static_cast<std::size_t>(std::popcount(s));
        const auto &row = m[k - 1];
        TruncatedSeries acc(p);
        std::size_t pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if ((s & (std::uint32_t{1} << c)) == 0) {
                continue;
            }
            const auto &sub = *minors[s & ~(std::uint32_t{1} << c)];
            const auto term = mul(row[c], sub);
            acc = ((k - 1 + pos) % 2 == 0) ? acc + term : acc - term;
            ++pos;
        }
        minors[s] = std::move(acc);
    }
    return *minors[full];
}

// Fraction-free (Bareiss) elimination over Q[[x]] with minimal-order
// pivoting. Each exact division by the previous pivot costs ord(pivot)
// coefficients of precision, so the result may be known to fewer terms than
// det_by_minors; on the common prefix the two agree.
inline TruncatedSeries det_bareiss(SeriesMatrix m)
{
    const auto n = m.size();
    std::size_t p = std::numeric_limits<std::size_t>::max();
    for (const auto &row : m) {
        if (row.size() != n) {
            fail(errc::invalid_argument, "matrix is not square");
        }
        for (const auto &e : row) {
            p = std::min(p, e.precision());
        }
    }
    TruncatedSeries prev(p);
    prev[0] = 1;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<std::size_t> pivot;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = k; i < n; ++i) {
            const auto o = order(m[i][k]);
            if (o.is_known() && o.value < best) {
                best = o.value;
                pivot = i;
            }
        }
        if (!pivot) {
            // Column k of the remaining block vanishes to precision q. By
            // Sylvester's identity det = det(block) / prev^(n-k-1), so the
            // determinant vanishes to q - (n-k-1) ord(prev).
            std::size_t q = p;
            for (std::size_t i = k; i < n; ++i) {
                q = std::min(q, m[i][k].precision());
            }
            const auto loss = (n - k - 1) * order(prev).value;
            if (q <= loss) {
                fail(errc::insufficient_precision, "Bareiss elimination lost all precision");
            }
            return TruncatedSeries(q - loss);
        }
        if (*pivot != k) {
            std::swap(m[*pivot], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = divide(mul(m[k][k], m[i][j]) - mul(m[i][k], m[k][j]), prev);
            }
        }
        prev = m[k][k];
    }
    return negate ? scale(m[n - 1][n - 1], Rat(-1)) : m[n - 1][n - 1];
}

// W(f_1..f_n), known to precision P - n + 1.
inline TruncatedSeries wronskian_det(const SeriesFamily &family)
{
    return det_by_minors(wronskian_matrix(family));
}

inline OrderResult wronskian_order(const SeriesFamily &family)
{
    return order(wronskian_det(family));
}

// Basis of span(family) with pairwise distinct orders, and the transform T
// with basis[j] = sum_i members[i] * T[i][j].
struct DistinctOrderBasis {
    std::vector<TruncatedSeries> basis;
    std::vector<std::size_t> orders;
    RatMatrix transform;
};

// Repeated elimination: while two members share an order k, the later one
// has the multiple of the earlier one that cancels its x^k coefficient
// subtracted. Every step is a unimodular column operation, so det T = 1.
inline DistinctOrderBasis distinct_order_basis(const SeriesFamily &family)
{
    const auto n = family.size();
    DistinctOrderBasis out;
    out.basis = family.members();
    out.transform.assign(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i) {
        out.transform[i][i] = 1;
    }
    std::vector<OrderResult> ords;
    ords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ords.push_back(order(out.basis[i]));
        if (!ords[i].is_known()) {
            fail(errc::rank_deficient, "member " + std::to_string(i) + " vanishes to precision "
                                           + std::to_string(family.precision()));
        }
    }
    while (true) {
        std::optional<std::pair<std::size_t, std::size_t>> clash;
        for (std::size_t i = 0; i < n && !clash; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (ords[i].value == ords[j].value) {
                    clash = std::make_pair(i, j);
                    break;
                }
            }
        }
        if (!clash) {
            break;
        }
        const auto [i, j] = *clash;
        const auto k = ords[i].value;
        const Rat factor = out.basis[j][k] / out.basis[i][k];
        out.basis[j] = out.basis[j] - scale(out.basis[i], factor);
        for (std::size_t r = 0; r < n; ++r) {
            out.transform[r][j] -= factor * out.transform[r][i];
        }
        ords[j] = order(out.basis[j]);
        if (!ords[j].is_known()) {
            fail(errc::rank_deficient, "member " + std::to_string(j) + " cancels to zero within precision "
                                           + std::to_string(family.precision()));
        }
    }
    for (const auto &o : ords) {
        out.orders.push_back(o.value);
    }
    return out;
}

// Max order of a nonzero element of span(family). The distinct orders of any
// distinct-order basis are the only orders occurring in the span.
inline std::size_t max_linear_order(const SeriesFamily &family)
{
    const auto b = distinct_order_basis(family);
    return *std::max_element(b.orders.begin(), b.orders.end());
}

struct OrderIdentityReport {
    std::size_t n = 0;
    OrderResult w_ord;
    std::vector<std::size_t> orders;
    std::size_t sum_orders = 0;
    std::size_t binom_term = 0;
    std::size_t max_order = 0;
    // W_ord = sum of distinct orders - C(n,2)
    bool identity_holds = false;
    // max order <= W_ord + n - 1
    bool upper_bound_holds = false;
    // W_ord <= n * max order - C(n,2)
    bool lower_bound_holds = false;

    bool all_hold() const noexcept
    {
        return identity_holds && upper_bound_holds && lower_bound_holds;
    }
};

inline OrderIdentityReport check_order_identity(const SeriesFamily &family)
{
    OrderIdentityReport r;
    r.n = family.size();
    r.w_ord = wronskian_order(family);
    if (!r.w_ord.is_known()) {
        fail(errc::indeterminate, "Wronskian vanishes to precision " + std::to_string(r.w_ord.value)
                                      + "; raise the truncation");
    }
    DistinctOrderBasis basis;
    try {
        basis = distinct_order_basis(family);
    } catch (const error &e) {
        if (e.code() == errc::rank_deficient) {
            fail(errc::indeterminate, e.what());
        }
        throw;
    }
    r.orders = basis.orders;
    r.sum_orders = std::accumulate(r.orders.begin(), r.orders.end(), std::size_t{0});
    r.binom_term = r.n * (r.n - 1) / 2;
    r.max_order = *std::max_element(r.orders.begin(), r.orders.end());
    const auto w = static_cast<long long>(r.w_ord.value);
    const auto n = static_cast<long long>(r.n);
    const auto binom = static_cast<long long>(r.binom_term);
    r.identity_holds = w == static_cast<long long>(r.sum_orders) - binom;
    r.upper_bound_holds = static_cast<long long>(r.max_order) <= w + n - 1;
    r.lower_bound_holds = w <= n * static_cast<long long>(r.max_order) - binom;
    return r;
}

} // namespace ordgap

#endif // ORDGAP_WRONSKIAN_HPP
