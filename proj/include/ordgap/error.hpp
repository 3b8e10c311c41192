#ifndef ORDGAP_ERROR_HPP
#define ORDGAP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordgap
{

// Machine-readable failure categories. The CLI maps these onto exit codes
// and embeds name() in its error reports.
enum class errc {
    invalid_argument,
    parse_error,
    forward_reference,
    unknown_opcode,
    division_indeterminate,
    not_divisible,
    not_square_constant_term,
    nonzero_constant_term,
    non_unit_constant_term,
    insufficient_precision,
    rank_deficient,
    indeterminate,
    bit_limit_exceeded,
    sampling_failed,
    wrong_branch,
    unresolved,
    promise_violated,
};

inline constexpr std::string_view name(errc c) noexcept
{
    switch (c) {
        case errc::invalid_argument:
            return "InvalidArgument";
        case errc::parse_error:
            return "ParseError";
        case errc::forward_reference:
            return "ForwardReference";
        case errc::unknown_opcode:
            return "UnknownOpcode";
        case errc::division_indeterminate:
            return "DivisionIndeterminate";
        case errc::not_divisible:
            return "NotDivisible";
        case errc::not_square_constant_term:
            return "NotSquareConstantTerm";
        case errc::nonzero_constant_term:
            return "NonzeroConstantTerm";
        case errc::non_unit_constant_term:
            return "NonUnitConstantTerm";
        case errc::insufficient_precision:
            return "InsufficientPrecision";
        case errc::rank_deficient:
            return "RankDeficientWithinPrecision";
        case errc::indeterminate:
            return "Indeterminate";
        case errc::bit_limit_exceeded:
            return "BitLimitExceeded";
        case errc::sampling_failed:
            return "SamplingFailed";
        case errc::wrong_branch:
            return "WrongBranch";
        case errc::unresolved:
            return "Unresolved";
        case errc::promise_violated:
            return "PromiseViolated";
    }
    return "Unknown";
}

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept
    {
        return code_;
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string &what)
{
    throw error(code, std::string(name(code)) + ": " + what);
}

} // namespace ordgap

#endif // ORDGAP_ERROR_HPP
