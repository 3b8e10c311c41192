#ifndef ORDGAP_SLP_HPP
#define ORDGAP_SLP_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <ordgap/error.hpp>
#include <ordgap/numerics.hpp>

namespace ordgap
{

enum class SlpOp { add, sub, mul };

inline const char *mnemonic(SlpOp op)
{
    switch (op) {
        case SlpOp::add:
            return "ADD";
        case SlpOp::sub:
            return "SUB";
        case SlpOp::mul:
            return "MUL";
    }
    return "?";
}

struct SlpInstruction {
    SlpOp op;
    std::size_t lhs;
    std::size_t rhs;

    friend bool operator==(const SlpInstruction &, const SlpInstruction &) = default;
};

// Straight-line program over {+, -, *}. Register 0 holds 1; instruction i
// (1-based) writes register i from registers j, k < i. The output is the
// last register, so the empty program computes 1.
class Slp
{
public:
    Slp() = default;

    explicit Slp(std::vector<SlpInstruction> code)
    {
        for (const auto &ins : code) {
            push(ins.op, ins.lhs, ins.rhs);
        }
    }

    // Appends an instruction and returns the register it defines.
    std::size_t push(SlpOp op, std::size_t lhs, std::size_t rhs)
    {
        const auto reg = code_.size() + 1;
        if (lhs >= reg || rhs >= reg) {
            fail(errc::forward_reference, "instruction " + std::to_string(reg) + " reads register "
                                              + std::to_string(std::max(lhs, rhs)));
        }
        code_.push_back({op, lhs, rhs});
        return reg;
    }

    std::size_t size() const noexcept
    {
        return code_.size();
    }
    std::size_t output_register() const noexcept
    {
        return code_.size();
    }
    const std::vector<SlpInstruction> &instructions() const noexcept
    {
        return code_;
    }

    friend bool operator==(const Slp &, const Slp &) = default;

private:
    std::vector<SlpInstruction> code_;
};

// SLP v1 text: header line "SLP v1", then one "OP j k" per nonempty line,
// '#' starts a comment. The i-th instruction line defines register i.
inline Slp parse_slp(std::string_view text)
{
    Slp slp;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string op, j, k, extra;
        fields >> op;
        if (op.empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(lineno) + ": ";
        if (!header) {
            std::string version;
            fields >> version >> extra;
            if (op != "SLP" || version != "v1" || !extra.empty()) {
                fail(errc::parse_error, where + "expected header 'SLP v1'");
            }
            header = true;
            continue;
        }
        fields >> j >> k >> extra;
        SlpOp code;
        if (op == "ADD") {
            code = SlpOp::add;
        } else if (op == "SUB") {
            code = SlpOp::sub;
        } else if (op == "MUL") {
            code = SlpOp::mul;
        } else {
            fail(errc::unknown_opcode, where + "unknown opcode '" + op + "'");
        }
        if (!detail::is_decimal(j, false) || !detail::is_decimal(k, false) || !extra.empty()) {
            fail(errc::parse_error, where + "expected 'OP j k' with decimal register indices");
        }
        if (j.size() > 18 || k.size() > 18) {
            fail(errc::forward_reference, where + "register index out of range");
        }
        const auto lhs = std::stoull(j);
        const auto rhs = std::stoull(k);
        const auto reg = slp.size() + 1;
        if (lhs >= reg || rhs >= reg) {
            fail(errc::forward_reference, where + "instruction defining register " + std::to_string(reg)
                                              + " reads register " + std::to_string(std::max(lhs, rhs)));
        }
        slp.push(code, lhs, rhs);
    }
    if (!header) {
        fail(errc::parse_error, "missing 'SLP v1' header");
    }
    return slp;
}

inline std::string to_text(const Slp &slp)
{
    std::string out = "SLP v1\n";
    for (const auto &ins : slp.instructions()) {
        out += mnemonic(ins.op);
        out += ' ' + std::to_string(ins.lhs) + ' ' + std::to_string(ins.rhs) + '\n';
    }
    return out;
}

// Exact value of the output register. Every intermediate must fit in
// bit_limit bits; products are rejected before they are formed.
inline Int eval_exact(const Slp &slp, std::size_t bit_limit)
{
    std::vector<Int> reg;
    reg.reserve(slp.size() + 1);
    reg.emplace_back(1);
    for (std::size_t i = 0; i < slp.size(); ++i) {
        const auto &ins = slp.instructions()[i];
        const auto &a = reg[ins.lhs];
        const auto &b = reg[ins.rhs];
        if (ins.op == SlpOp::mul && a != 0 && b != 0 && bit_length(a) + bit_length(b) - 1 > bit_limit) {
            fail(errc::bit_limit_exceeded, "instruction " + std::to_string(i + 1) + " (" + mnemonic(ins.op)
                                               + ") exceeds " + std::to_string(bit_limit) + " bits");
        }
        Int v;
        switch (ins.op) {
            case SlpOp::add:
                v = a + b;
                break;
            case SlpOp::sub:
                v = a - b;
                break;
            case SlpOp::mul:
                v = a * b;
                break;
        }
        if (bit_length(v) > bit_limit) {
            fail(errc::bit_limit_exceeded, "instruction " + std::to_string(i + 1) + " (" + mnemonic(ins.op)
                                               + ") exceeds " + std::to_string(bit_limit) + " bits");
        }
        reg.push_back(std::move(v));
    }
    return reg.back();
}

// Output value mod modulus in [0, modulus), O(size) modular operations.
inline Int eval_mod(const Slp &slp, const Int &modulus)
{
    if (modulus < 2) {
        fail(errc::invalid_argument, "eval_mod modulus must be >= 2");
    }
    std::vector<Int> reg;
    reg.reserve(slp.size() + 1);
    reg.emplace_back(1);
    for (const auto &ins : slp.instructions()) {
        Int v;
        switch (ins.op) {
            case SlpOp::add:
                v = reg[ins.lhs] + reg[ins.rhs];
                break;
            case SlpOp::sub:
                v = reg[ins.lhs] - reg[ins.rhs];
                break;
            case SlpOp::mul:
                v = reg[ins.lhs] * reg[ins.rhs];
                break;
        }
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
        reg.push_back(std::move(v));
    }
    return reg.back() % modulus;
}

// Program for value(a) * value(b): a's code, then b's code re-addressed above
// it (register 0 stays shared), then one MUL. Size is size(a) + size(b) + 1.
inline Slp product_slp(const Slp &a, const Slp &b)
{
    Slp out(a.instructions());
    const auto shift = a.size();
    auto relocate = [shift](std::size_t r) { return r == 0 ? r : r + shift; };
    for (const auto &ins : b.instructions()) {
        out.push(ins.op, relocate(ins.lhs), relocate(ins.rhs));
    }
    out.push(SlpOp::mul, a.output_register(), relocate(b.output_register()));
    return out;
}

// Double-and-add program for v: about 2 log2|v| instructions.
inline Slp slp_for_integer(const Int &v)
{
    Slp slp;
    if (v == 1) {
        return slp;
    }
    if (v == 0) {
        slp.push(SlpOp::sub, 0, 0);
        return slp;
    }
    const Int mag = abs(v);
    std::size_t acc = 0;
    for (auto bit = static_cast<long>(bit_length(mag)) - 2; bit >= 0; --bit) {
        acc = slp.push(SlpOp::add, acc, acc);
        if (mpz_tstbit(mag.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)) != 0) {
            acc = slp.push(SlpOp::add, acc, 0);
        }
    }
    if (v < 0) {
        const auto zero = slp.push(SlpOp::sub, 0, 0);
        slp.push(SlpOp::sub, zero, acc);
    }
    return slp;
}

// 2 followed by t - 1 squarings: value 2^(2^(t-1)) for t >= 1.
inline Slp repeated_squaring_slp(std::size_t t)
{
    Slp slp;
    if (t == 0) {
        return slp;
    }
    auto r = slp.push(SlpOp::add, 0, 0);
    for (std::size_t i = 1; i < t; ++i) {
        r = slp.push(SlpOp::mul, r, r);
    }
    return slp;
}

} // namespace ordgap

#endif // ORDGAP_SLP_HPP
