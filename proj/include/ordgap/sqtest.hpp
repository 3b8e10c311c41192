#ifndef ORDGAP_SQTEST_HPP
#define ORDGAP_SQTEST_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/slp.hpp>

namespace ordgap
{

struct SquareTestConfig {
    std::size_t rounds = 64;
    // Constant of the effective density estimate. Only its existence is
    // known, so it is a parameter and always reported.
    Rat grh_constant = 1;
    // Fixed prime-bound exponent in place of q(t), for desk-scale runs.
    std::optional<std::size_t> prime_bound_exponent_override;
    // Positivity of the SLP value is checked exactly when it fits in this
    // many bits, and trusted otherwise.
    std::size_t promise_check_bits = 4096;
    // Miller-Rabin rounds for sampled primes above 2^64.
    unsigned primality_rounds = 32;
};

/// Smallest q >= 1 with 2^t + 2 <= 2^(q/2) / (4 C q) - 2 q.
///
/// Both sides are positive once the condition holds, so it is decided
/// exactly as 2^q >= (4 C q (2^t + 2 + 2q))^2 in rationals. The left side
/// grows like 2^q and the right like q^4 4^t, so the search ends near
/// q = 2t + O(log t).
inline std::size_t q_exponent(std::size_t t, const Rat &grh_constant)
{
    if (grh_constant <= 0) {
        fail(errc::invalid_argument, "GRH constant must be positive");
    }
    const Int lhs_base = (Int(1) << t) + 2;
    for (std::size_t q = 1;; ++q) {
        const Rat rhs = 4 * grh_constant * static_cast<unsigned long>(q) * (lhs_base + 2 * static_cast<unsigned long>(q));
        const Rat rhs_sq = rhs * rhs;
        if (Rat(Int(1) << q) >= rhs_sq) {
            return q;
        }
    }
}

enum class Residuosity { qr, non_qr, divides_p };

inline const char *name(Residuosity r)
{
    switch (r) {
        case Residuosity::qr:
            return "QR";
        case Residuosity::non_qr:
            return "NonQR";
        case Residuosity::divides_p:
            return "DividesP";
    }
    return "?";
}

// Euler's criterion for an odd prime p.
inline Residuosity legendre_is_square(const Int &a, const Int &p)
{
    if (p < 3 || mpz_even_p(p.get_mpz_t()) != 0 || !is_probable_prime(p)) {
        fail(errc::invalid_argument, "legendre_is_square needs an odd prime, got " + to_string(p));
    }
    Int r = a % p;
    if (r < 0) {
        r += p;
    }
    if (r == 0) {
        return Residuosity::divides_p;
    }
    const Int e = mod_exp(r, (p - 1) / 2, p);
    if (e == 1) {
        return Residuosity::qr;
    }
    if (e == p - 1) {
        return Residuosity::non_qr;
    }
    fail(errc::invalid_argument, to_string(p) + " is not prime (Euler criterion returned neither +1 nor -1)");
}

struct SquareVerdict {
    enum class kind_t { not_square, probably_square };

    kind_t kind = kind_t::probably_square;
    // Certificate for NotSquare: p odd, p does not divide a, a is a
    // non-residue mod p.
    std::optional<Int> witness;
    // (3/4)^rounds for ProbablySquare.
    Rat error_bound = 0;
    std::size_t rounds_used = 0;
    std::size_t primes_sampled = 0;
    std::size_t slp_size = 0;
    std::size_t q = 0;
    bool q_overridden = false;
    Rat grh_constant = 1;
    std::uint64_t seed = 0;

    bool is_square() const noexcept
    {
        return kind == kind_t::probably_square;
    }
};

inline std::size_t prime_bound_exponent(std::size_t slp_size, const SquareTestConfig &cfg)
{
    return cfg.prime_bound_exponent_override ? *cfg.prime_bound_exponent_override
                                             : q_exponent(slp_size, cfg.grh_constant);
}

/// One-sided randomized perfect-square test for the value a of an SLP.
///
/// Each round samples a prime p <= 2^q(t) and checks whether a mod p is a
/// square. Primes with p | 4a are resampled rather than counted. A
/// non-residue proves a is not a square; if a is not a square, under GRH a
/// round finds a non-residue with probability at least 1/4.
inline SquareVerdict perfect_square_slp(const Slp &slp, const SquareTestConfig &cfg, RngHandle &rng)
{
    if (cfg.rounds < 1) {
        fail(errc::invalid_argument, "rounds must be >= 1");
    }
    try {
        if (eval_exact(slp, cfg.promise_check_bits) <= 0) {
            fail(errc::promise_violated, "SLP value is not positive");
        }
    } catch (const error &e) {
        if (e.code() != errc::bit_limit_exceeded) {
            throw;
        }
    }
    SquareVerdict v;
    v.slp_size = slp.size();
    v.q = prime_bound_exponent(slp.size(), cfg);
    v.q_overridden = cfg.prime_bound_exponent_override.has_value();
    v.grh_constant = cfg.grh_constant;
    v.seed = rng.seed();
    if (v.q < 2) {
        fail(errc::invalid_argument, "prime bound exponent must be >= 2");
    }
    const Int bound = Int(1) << v.q;
    const std::size_t sample_budget = 64 * (cfg.rounds + 1);
    while (v.rounds_used < cfg.rounds) {
        if (v.primes_sampled >= sample_budget) {
            fail(errc::sampling_failed, "every sampled prime divided 4a; " + std::to_string(v.primes_sampled)
                                            + " samples");
        }
        const Int p = rand_prime_below(bound, rng, std::nullopt, cfg.primality_rounds);
        ++v.primes_sampled;
        if (p == 2) {
            continue;
        }
        const auto res = legendre_is_square(eval_mod(slp, p), p);
        if (res == Residuosity::divides_p) {
            continue;
        }
        ++v.rounds_used;
        if (res == Residuosity::non_qr) {
            v.kind = SquareVerdict::kind_t::not_square;
            v.witness = p;
            return v;
        }
    }
    v.kind = SquareVerdict::kind_t::probably_square;
    v.error_bound = pow_rat(Rat(3, 4), cfg.rounds);
    return v;
}

// Re-checks a NotSquare certificate against the integer a.
inline bool certificate_valid(const SquareVerdict &v, const Int &a)
{
    if (v.kind != SquareVerdict::kind_t::not_square || !v.witness) {
        return false;
    }
    const Int &p = *v.witness;
    if (p < 3 || !is_probable_prime(p) || (4 * a) % p == 0) {
        return false;
    }
    return legendre_is_square(a, p) == Residuosity::non_qr;
}

// Fraction of primes p <= x with p not dividing 4a and a a non-residue mod p.
inline Rat density_experiment(const Int &a, std::uint64_t x)
{
    if (a <= 0 || is_perfect_square(a)) {
        fail(errc::invalid_argument, "density_experiment needs a positive non-square, got " + to_string(a));
    }
    if (x < 2) {
        fail(errc::invalid_argument, "density_experiment needs x >= 2");
    }
    if (x > (std::uint64_t{1} << 32)) {
        fail(errc::invalid_argument, "density_experiment sieve limit is 2^32");
    }
    const auto primes = primes_up_to(x);
    std::size_t hits = 0;
    const Int four_a = 4 * a;
    for (auto p : primes) {
        if (mpz_divisible_ui_p(four_a.get_mpz_t(), p) != 0) {
            continue;
        }
        const Int pp(static_cast<unsigned long>(p));
        if (legendre_is_square(a, pp) == Residuosity::non_qr) {
            ++hits;
        }
    }
    return make_rat(Int(static_cast<unsigned long>(hits)), Int(static_cast<unsigned long>(primes.size())));
}

} // namespace ordgap

#endif // ORDGAP_SQTEST_HPP
