#ifndef ORDGAP_NUMERICS_HPP
#define ORDGAP_NUMERICS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <ordgap/error.hpp>

namespace ordgap
{

// Exact integers and rationals. mpq_class keeps values in lowest terms with a
// positive denominator after every arithmetic operation.
using Int = mpz_class;
using Rat = mpq_class;

inline std::size_t bit_length(const Int &n)
{
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline Rat make_rat(const Int &num, const Int &den)
{
    if (den == 0) {
        fail(errc::invalid_argument, "zero denominator");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int &n)
{
    return n.get_str();
}

// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rat &q)
{
    return q.get_str();
}

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline bool is_decimal(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (ch < '0' || ch > '9') {
            return false;
        }
    }
    return true;
}

} // namespace detail

inline Int parse_int(std::string_view text)
{
    auto s = detail::trim(text);
    if (!detail::is_decimal(s, true)) {
        fail(errc::parse_error, "not a decimal integer: '" + std::string(text) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return Int(std::string(s), 10);
}

inline Rat parse_rat(std::string_view text)
{
    auto s = detail::trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rat(parse_int(s));
    }
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!detail::is_decimal(num, true) || !detail::is_decimal(den, false)) {
        fail(errc::parse_error, "not a rational 'p/q': '" + std::string(text) + "'");
    }
    return make_rat(parse_int(num), parse_int(den));
}

struct IsqrtResult {
    Int root;
    bool exact;
};

// Floor square root; exact is true iff n is a perfect square.
inline IsqrtResult int_isqrt(const Int &n)
{
    if (n < 0) {
        fail(errc::invalid_argument, "int_isqrt of a negative number");
    }
    IsqrtResult r;
    Int rem;
    mpz_sqrtrem(r.root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    r.exact = rem == 0;
    return r;
}

inline bool is_perfect_square(const Int &n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// base^exponent mod modulus, in [0, modulus).
inline Int mod_exp(const Int &base, const Int &exponent, const Int &modulus)
{
    if (modulus < 2) {
        fail(errc::invalid_argument, "mod_exp modulus must be >= 2");
    }
    if (exponent < 0) {
        fail(errc::invalid_argument, "mod_exp exponent must be >= 0");
    }
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

// Seeded counter-based generator (splitmix64 output function). The stream is
// a pure function of (seed, counter), so replaying a seed replays every draw.
// Single owner: callers needing parallel streams use derive().
class RngHandle
{
public:
    explicit RngHandle(std::uint64_t seed = 0) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept
    {
        return seed_;
    }
    std::uint64_t counter() const noexcept
    {
        return counter_;
    }

    std::uint64_t next() noexcept
    {
        ++counter_;
        return mix(seed_ + counter_ * golden);
    }

    // Independent handle for sub-task `stream`.
    RngHandle derive(std::uint64_t stream) const noexcept
    {
        return RngHandle(mix(seed_ ^ mix(stream * golden + 0x632be59bd9b4e019ULL)));
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        if (n == 0) {
            fail(errc::invalid_argument, "RngHandle::below(0)");
        }
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        while (true) {
            const auto v = next();
            if (v < limit) {
                return v % n;
            }
        }
    }

    // Uniform in [lo, hi].
    Int uniform(const Int &lo, const Int &hi)
    {
        if (hi < lo) {
            fail(errc::invalid_argument, "RngHandle::uniform with empty range");
        }
        const Int range = hi - lo + 1;
        const auto nbits = bit_length(range);
        const auto words = (nbits + 63) / 64;
        Int r;
        while (true) {
            r = 0;
            for (std::size_t w = 0; w < words; ++w) {
                r <<= 64;
                r += Int(static_cast<unsigned long>(next()));
            }
            mpz_tdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), nbits);
            if (r < range) {
                return lo + r;
            }
        }
    }

private:
    static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// Sieve of Eratosthenes, all primes <= x.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t x)
{
    std::vector<std::uint64_t> out;
    if (x < 2) {
        return out;
    }
    std::vector<bool> composite(x + 1, false);
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= x; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

namespace detail
{

inline const std::vector<std::uint64_t> &small_primes()
{
    static const auto table = primes_up_to(1000);
    return table;
}

// Strong probable-prime test of odd n > 3 to base a, with n - 1 = d * 2^s.
inline bool strong_probable_prime(const Int &n, const Int &d, unsigned long s, const Int &a)
{
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Int n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) {
        return true;
    }
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x;
        x %= n;
        if (x == n_minus_1) {
            return true;
        }
    }
    return false;
}

// Outcome of the trial-division stage: decided, or needs Miller-Rabin.
inline std::optional<bool> trial_division(const Int &n)
{
    if (n < 2) {
        return false;
    }
    for (auto p : small_primes()) {
        if (n == p) {
            return true;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            return false;
        }
    }
    if (n < 1000 * 1000) {
        return true;
    }
    return std::nullopt;
}

inline const Int &two_pow_64()
{
    static const Int v = Int(1) << 64;
    return v;
}

// The first twelve prime bases are a deterministic Miller-Rabin witness set
// for every n < 3.3e24, which covers n < 2^64.
inline constexpr std::array<unsigned long, 12> deterministic_bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool miller_rabin_fixed(const Int &n, const Int &d, unsigned long s)
{
    for (auto b : deterministic_bases) {
        if (!strong_probable_prime(n, d, s, Int(b))) {
            return false;
        }
    }
    return true;
}

inline void split_odd(const Int &n, Int &d, unsigned long &s)
{
    d = n - 1;
    s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
}

} // namespace detail

// Exact for n < 2^64; above that, Miller-Rabin with `rounds` random bases
// drawn from rng (error probability <= 4^-rounds).
inline bool is_prime(const Int &n, unsigned rounds, RngHandle &rng)
{
    if (n < 0) {
        fail(errc::invalid_argument, "is_prime of a negative number");
    }
    if (auto decided = detail::trial_division(n)) {
        return *decided;
    }
    Int d;
    unsigned long s = 0;
    detail::split_odd(n, d, s);
    if (n < detail::two_pow_64()) {
        return detail::miller_rabin_fixed(n, d, s);
    }
    for (unsigned i = 0; i < rounds; ++i) {
        const Int a = rng.uniform(Int(2), n - 2);
        if (!detail::strong_probable_prime(n, d, s, a)) {
            return false;
        }
    }
    return true;
}

// Randomness-free variant: exact below 2^64, a fixed-base strong
// probable-prime test above. Used to validate primes handed in by callers.
inline bool is_probable_prime(const Int &n)
{
    if (n < 0) {
        return false;
    }
    if (auto decided = detail::trial_division(n)) {
        return *decided;
    }
    Int d;
    unsigned long s = 0;
    detail::split_odd(n, d, s);
    return detail::miller_rabin_fixed(n, d, s);
}

inline std::size_t default_prime_attempt_budget(const Int &bound)
{
    const auto lg = bit_length(bound - 1);
    return 10 * lg * lg;
}

// Rejection sampling: uniform integers in [2, bound] until one is prime.
inline Int rand_prime_below(const Int &bound, RngHandle &rng, std::optional<std::size_t> attempt_budget = std::nullopt,
                            unsigned mr_rounds = 32)
{
    if (bound < 3) {
        fail(errc::invalid_argument, "rand_prime_below requires bound >= 3");
    }
    const auto budget = attempt_budget.value_or(default_prime_attempt_budget(bound));
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        Int candidate = rng.uniform(Int(2), bound);
        if (is_prime(candidate, mr_rounds, rng)) {
            return candidate;
        }
    }
    fail(errc::sampling_failed, "no prime found below " + to_string(bound) + " within " + std::to_string(budget)
                                    + " attempts");
}

inline Int pow_int(const Int &base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat &base, unsigned long e)
{
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return make_rat(num, den);
}

inline Int binomial(unsigned long n, unsigned long k)
{
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n)
{
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool is_integer(const Rat &q)
{
    return q.get_den() == 1;
}

} // namespace ordgap

#endif // ORDGAP_NUMERICS_HPP
