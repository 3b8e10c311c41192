#ifndef ORDGAP_POLYNOMIAL_HPP
#define ORDGAP_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include <ordgap/numerics.hpp>

namespace ordgap
{

// Dense univariate polynomial, coefficient i multiplies x^i. Trailing zeros
// are allowed on input; the helpers below return trimmed results.
using Poly = std::vector<Rat>;

inline Poly poly_trim(Poly p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
    return p;
}

// -1 for the zero polynomial.
inline long poly_degree(const Poly &p)
{
    for (auto i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
        if (p[static_cast<std::size_t>(i)] != 0) {
            return i;
        }
    }
    return -1;
}

inline Rat poly_coeff(const Poly &p, std::size_t i)
{
    return i < p.size() ? p[i] : Rat(0);
}

inline Poly poly_add(const Poly &a, const Poly &b)
{
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = poly_coeff(a, i) + poly_coeff(b, i);
    }
    return poly_trim(std::move(r));
}

inline Poly poly_scale(const Poly &a, const Rat &c)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * c;
    }
    return poly_trim(std::move(r));
}

inline Poly poly_sub(const Poly &a, const Poly &b)
{
    return poly_add(a, poly_scale(b, Rat(-1)));
}

inline Poly poly_mul(const Poly &a, const Poly &b)
{
    const auto da = poly_degree(a);
    const auto db = poly_degree(b);
    if (da < 0 || db < 0) {
        return {};
    }
    Poly r(static_cast<std::size_t>(da + db + 1));
    for (long i = 0; i <= da; ++i) {
        const auto &ai = a[static_cast<std::size_t>(i)];
        if (ai == 0) {
            continue;
        }
        for (long j = 0; j <= db; ++j) {
            r[static_cast<std::size_t>(i + j)] += ai * b[static_cast<std::size_t>(j)];
        }
    }
    return poly_trim(std::move(r));
}

inline Poly poly_derivative(const Poly &a)
{
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) {
        r.push_back(a[i] * static_cast<unsigned long>(i));
    }
    return poly_trim(std::move(r));
}

// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
inline long poly_order(const Poly &a)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) {
            return static_cast<long>(i);
        }
    }
    return -1;
}

} // namespace ordgap

#endif // ORDGAP_POLYNOMIAL_HPP
