#ifndef ORDGAP_SSR_HPP
#define ORDGAP_SSR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/interval.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/slp.hpp>
#include <ordgap/sqtest.hpp>

namespace ordgap
{

// sum_i sign_i sqrt(a_i) with each a_i > 0 given by an SLP.
struct SsrInstance {
    std::vector<Slp> programs;
    std::vector<int> signs;
};

struct PairTest {
    std::size_t index = 0;
    std::size_t representative = 0;
    SquareVerdict verdict;
};

// Indices are 0-based. classes[k] lists the members of class k in insertion
// order; representatives[k] == classes[k].front().
struct OneDimPartition {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> representatives;
    // Every dependence test performed, with its verdict and certificate.
    std::vector<PairTest> tests;
};

struct SsrDecision {
    bool is_zero = false;
    OneDimPartition partition;
    // Per class: sum of sign_i * sqrt(a_i a_rep), an integer.
    std::vector<Int> class_sums;
};

namespace detail
{

inline void validate_signs(const std::vector<int> &signs, std::size_t n)
{
    if (n == 0) {
        fail(errc::invalid_argument, "instance needs at least one term");
    }
    if (signs.size() != n) {
        fail(errc::invalid_argument, "signs and terms differ in length");
    }
    for (auto s : signs) {
        if (s != 1 && s != -1) {
            fail(errc::invalid_argument, "signs must be +1 or -1");
        }
    }
}

} // namespace detail

// sqrt(a)/sqrt(b) is rational iff ab is a perfect square; ab is tested
// through the product program of size size(a) + size(b) + 1.
inline SquareVerdict pair_dependence(const Slp &a, const Slp &b, const SquareTestConfig &cfg, RngHandle &rng)
{
    return perfect_square_slp(product_slp(a, b), cfg, rng);
}

inline bool pair_dependent(const Slp &a, const Slp &b, const SquareTestConfig &cfg, RngHandle &rng)
{
    return pair_dependence(a, b, cfg, rng).is_square();
}

// Greedy partition: each term is tested against the representative of every
// existing class in order, joins the first dependent one, or opens a new
// class.
inline OneDimPartition partition_one_dim(const SsrInstance &inst, const SquareTestConfig &cfg, RngHandle &rng)
{
    detail::validate_signs(inst.signs, inst.programs.size());
    OneDimPartition part;
    for (std::size_t i = 0; i < inst.programs.size(); ++i) {
        bool placed = false;
        for (std::size_t k = 0; k < part.classes.size() && !placed; ++k) {
            const auto rep = part.representatives[k];
            auto verdict = pair_dependence(inst.programs[i], inst.programs[rep], cfg, rng);
            placed = verdict.is_square();
            part.tests.push_back({i, rep, std::move(verdict)});
            if (placed) {
                part.classes[k].push_back(i);
            }
        }
        if (!placed) {
            part.classes.push_back({i});
            part.representatives.push_back(i);
        }
    }
    return part;
}

// S sqrt(a_1) = sum_i sign_i sqrt(a_i a_1), an integer when every a_i a_1 is
// a perfect square. Exact, so limited to values of at most bit_limit bits.
inline Int one_dim_scaled_sum(const std::vector<Int> &values, const std::vector<int> &signs, std::size_t bit_limit)
{
    detail::validate_signs(signs, values.size());
    for (const auto &v : values) {
        if (v <= 0) {
            fail(errc::promise_violated, "values must be positive");
        }
        if (bit_length(v) > bit_limit) {
            fail(errc::bit_limit_exceeded, "value of " + std::to_string(bit_length(v)) + " bits exceeds "
                                               + std::to_string(bit_limit));
        }
    }
    Int total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto r = int_isqrt(values[i] * values.front());
        if (!r.exact) {
            fail(errc::promise_violated, "term " + std::to_string(i) + " is not on the line of term 0");
        }
        total += signs[i] * r.root;
    }
    return total;
}

inline bool one_dim_zero(const std::vector<Int> &values, const std::vector<int> &signs, std::size_t bit_limit)
{
    return one_dim_scaled_sum(values, signs, bit_limit) == 0;
}

namespace detail
{

// The whole sum vanishes iff every class sum does.
inline SsrDecision decide_classes(const std::vector<Int> &values, const std::vector<int> &signs,
                                  OneDimPartition part, std::size_t bit_limit)
{
    SsrDecision out;
    out.is_zero = true;
    for (const auto &cls : part.classes) {
        std::vector<Int> vs;
        std::vector<int> ss;
        for (auto i : cls) {
            vs.push_back(values[i]);
            ss.push_back(signs[i]);
        }
        out.class_sums.push_back(one_dim_scaled_sum(vs, ss, bit_limit));
        out.is_zero = out.is_zero && out.class_sums.back() == 0;
    }
    out.partition = std::move(part);
    return out;
}

} // namespace detail

// Randomized partition, then the exact one-dimensional test per class. The
// exact test evaluates every program, so BitLimitExceeded marks instances
// whose one-dimensional subproblems are out of desk reach.
inline SsrDecision decide_ssr_slp(const SsrInstance &inst, const SquareTestConfig &cfg, RngHandle &rng,
                                  std::size_t bit_limit)
{
    auto part = partition_one_dim(inst, cfg, rng);
    std::vector<Int> values;
    values.reserve(inst.programs.size());
    for (const auto &p : inst.programs) {
        values.push_back(eval_exact(p, bit_limit));
    }
    return detail::decide_classes(values, inst.signs, std::move(part), bit_limit);
}

// Binary-input variant: dependence is decided exactly from the products, so
// the answer carries no error probability.
inline SsrDecision decide_ssr_eq(const std::vector<Int> &values, const std::vector<int> &signs)
{
    detail::validate_signs(signs, values.size());
    OneDimPartition part;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= 0) {
            fail(errc::invalid_argument, "values must be positive");
        }
        bool placed = false;
        for (std::size_t k = 0; k < part.classes.size() && !placed; ++k) {
            if (is_perfect_square(values[i] * values[part.representatives[k]])) {
                part.classes[k].push_back(i);
                placed = true;
            }
        }
        if (!placed) {
            part.classes.push_back({i});
            part.representatives.push_back(i);
        }
    }
    std::size_t widest = 0;
    for (const auto &v : values) {
        widest = std::max(widest, bit_length(v));
    }
    return detail::decide_classes(values, signs, std::move(part), widest);
}

// Enclosure of sum_i sign_i sqrt(a_i) at the given precision.
inline Interval signed_sqrt_sum(const std::vector<Int> &values, const std::vector<int> &signs, std::size_t prec_bits)
{
    detail::validate_signs(signs, values.size());
    Interval acc(prec_bits);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto root = sqrt(Interval(values[i], prec_bits));
        acc = signs[i] > 0 ? acc + root : acc - root;
    }
    return acc;
}

struct BinomialInstance {
    std::size_t m = 0;
    Int n0;
    // Expanded: binom(m, i) copies of n0 + i with sign (-1)^i.
    std::vector<Int> values;
    std::vector<int> signs;
    Interval sum{64};
};

// sum_i (-1)^i binom(m, i) sqrt(n0 + i), which is O(n0^(1/2 - m)). The
// enclosure is refined until its sign is certified (at most 2^16 bits).
inline BinomialInstance binomial_instance(std::size_t m, const Int &n0, std::size_t prec_bits = 512)
{
    if (m < 1 || n0 < 1) {
        fail(errc::invalid_argument, "binomial_instance needs m >= 1 and n0 >= 1");
    }
    BinomialInstance out;
    out.m = m;
    out.n0 = n0;
    for (std::size_t i = 0; i <= m; ++i) {
        const auto mult = binomial(m, i);
        for (Int c = 0; c < mult; ++c) {
            out.values.push_back(n0 + static_cast<unsigned long>(i));
            out.signs.push_back(i % 2 == 0 ? 1 : -1);
        }
    }
    auto prec = prec_bits;
    while (true) {
        Interval acc(prec);
        for (std::size_t i = 0; i <= m; ++i) {
            const auto term = Interval(binomial(m, i), prec) * sqrt(Interval(Int(n0 + static_cast<unsigned long>(i)), prec));
            acc = i % 2 == 0 ? acc + term : acc - term;
        }
        out.sum = acc;
        if (acc.certified_sign() != 0 || prec >= (1u << 16)) {
            return out;
        }
        prec *= 2;
    }
}

} // namespace ordgap

#endif // ORDGAP_SSR_HPP
