#ifndef ORDGAP_INTERVAL_HPP
#define ORDGAP_INTERVAL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include <mpfr.h>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>

namespace ordgap
{

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
// lower endpoint down and the upper endpoint up, so the exact real result is
// always enclosed.
class Interval
{
public:
    explicit Interval(std::size_t prec_bits) : prec_(static_cast<mpfr_prec_t>(prec_bits))
    {
        if (prec_bits < MPFR_PREC_MIN || prec_bits > 1u << 24) {
            fail(errc::invalid_argument, "interval precision out of range");
        }
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Int &v, std::size_t prec_bits) : Interval(prec_bits)
    {
        mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
    }

    Interval(const Rat &v, std::size_t prec_bits) : Interval(prec_bits)
    {
        mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
    }

    Interval(const Interval &o) : Interval(static_cast<std::size_t>(o.prec_))
    {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval &&o) noexcept : Interval(static_cast<std::size_t>(o.prec_))
    {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval &operator=(Interval o) noexcept
    {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }

    ~Interval()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    std::size_t precision() const noexcept
    {
        return static_cast<std::size_t>(prec_);
    }

    friend Interval operator+(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval &a)
    {
        Interval r(a.precision());
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator*(const Interval &a, const Interval &b)
    {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
        const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : xs) {
            for (auto y : ys) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_)) {
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                }
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_)) {
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                }
                first = false;
            }
        }
        mpfr_clear(t);
        return r;
    }

    friend Interval sqrt(const Interval &a)
    {
        if (mpfr_sgn(a.lo_) < 0) {
            fail(errc::invalid_argument, "interval sqrt of a possibly negative value");
        }
        Interval r(a.precision());
        mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval log(const Interval &a)
    {
        if (mpfr_sgn(a.lo_) <= 0) {
            fail(errc::invalid_argument, "interval log of a possibly non-positive value");
        }
        Interval r(a.precision());
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    bool contains_zero() const noexcept
    {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }

    // +1 / -1 when the whole interval is positive / negative, 0 otherwise.
    int certified_sign() const noexcept
    {
        if (mpfr_sgn(lo_) > 0) {
            return 1;
        }
        if (mpfr_sgn(hi_) < 0) {
            return -1;
        }
        return 0;
    }

    Rat lower() const
    {
        return to_rat(lo_);
    }
    Rat upper() const
    {
        return to_rat(hi_);
    }

    // Distance of the interval from 0, a valid lower bound for |x|.
    Rat abs_lower() const
    {
        if (mpfr_sgn(lo_) > 0) {
            return lower();
        }
        if (mpfr_sgn(hi_) < 0) {
            return -upper();
        }
        return 0;
    }

    // Upper bound for |x|.
    Rat abs_upper() const
    {
        return std::max(abs(lower()), abs(upper()));
    }

    // Midpoint in scientific notation with `digits` significant digits.
    std::string to_decimal(int digits = 20) const
    {
        mpfr_t mid;
        mpfr_init2(mid, prec_ + 1);
        mpfr_add(mid, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        char *buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, mid);
        std::string out(buf);
        mpfr_free_str(buf);
        mpfr_clear(mid);
        return out;
    }

private:
    static Rat to_rat(mpfr_srcptr x)
    {
        if (!mpfr_number_p(x)) {
            fail(errc::invalid_argument, "non-finite interval endpoint");
        }
        if (mpfr_zero_p(x)) {
            return 0;
        }
        Int m;
        const auto e = mpfr_get_z_2exp(m.get_mpz_t(), x);
        Rat r(m);
        if (e >= 0) {
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
        } else {
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
        }
        return r;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

} // namespace ordgap

#endif // ORDGAP_INTERVAL_HPP
