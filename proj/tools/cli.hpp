#ifndef ORDGAP_TOOLS_CLI_HPP
#define ORDGAP_TOOLS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ordgap/ordgap.hpp>

#include "acceptance.hpp"

namespace ordgap::cli
{

using json = nlohmann::json;

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_undecided = 3;

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t trunc = 64;
    std::size_t rounds = 64;
    std::string grh_c = "1";
    std::size_t bit_limit = std::size_t{1} << 20;
    std::size_t precision_bits = 512;
    std::string output;
    std::optional<std::size_t> q_override;
};

struct Outcome {
    json report;
    int code = exit_ok;
};

inline int exit_code_for(errc c)
{
    switch (c) {
        case errc::indeterminate:
        case errc::unresolved:
        case errc::bit_limit_exceeded:
        case errc::sampling_failed:
        case errc::insufficient_precision:
        case errc::rank_deficient:
        case errc::division_indeterminate:
            return exit_undecided;
        default:
            return exit_usage;
    }
}

namespace detail
{

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(errc::parse_error, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string &path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::exception &e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
}

inline Slp read_slp(const std::string &path)
{
    try {
        return parse_slp(read_file(path));
    } catch (const error &e) {
        throw error(e.code(), path + ": " + e.what());
    }
}

inline SquareTestConfig square_config(const RunConfig &rc)
{
    SquareTestConfig cfg;
    cfg.rounds = rc.rounds;
    cfg.grh_constant = parse_rat(rc.grh_c);
    cfg.prime_bound_exponent_override = rc.q_override;
    return cfg;
}

// Provenance block carried by every randomized report.
inline json provenance(const RunConfig &rc, const SquareTestConfig &cfg)
{
    json p = {{"seed", rc.seed}, {"rounds", cfg.rounds}, {"grh_c", io::rat_json(cfg.grh_constant)}};
    p["q_override"] = cfg.prime_bound_exponent_override ? json(*cfg.prime_bound_exponent_override) : json(nullptr);
    return p;
}

inline int bound_code(const BoundReport &r)
{
    switch (r.status) {
        case BoundStatus::holds:
        case BoundStatus::zero_sum:
            return exit_ok;
        case BoundStatus::violated:
            return exit_violation;
        case BoundStatus::indeterminate:
            return exit_undecided;
    }
    return exit_undecided;
}

// SSR instance: {"programs": [paths relative to the file]} or
// {"values": [...]}, plus optional "signs".
struct LoadedSsr {
    SsrInstance instance;
    std::optional<std::vector<Int>> values;
};

inline LoadedSsr load_ssr(const std::string &path)
{
    const auto j = read_json(path);
    LoadedSsr out;
    if (j.contains("programs")) {
        const auto base = std::filesystem::path(path).parent_path();
        for (const auto &p : j.at("programs")) {
            out.instance.programs.push_back(read_slp((base / p.get<std::string>()).string()));
        }
    } else if (j.contains("values")) {
        std::vector<Int> values;
        for (const auto &v : j.at("values")) {
            values.push_back(io::int_from(v));
            out.instance.programs.push_back(slp_for_integer(values.back()));
        }
        out.values = std::move(values);
    } else {
        fail(errc::parse_error, path + ": expected 'programs' or 'values'");
    }
    out.instance.signs = io::signs_from(j, out.instance.programs.size());
    return out;
}

inline TruncatedSeries load_series(const std::string &path, std::size_t trunc)
{
    return io::series_from(read_json(path), trunc);
}

} // namespace detail

/// Runs the command line and writes the JSON report to `out` (or to the
/// --json-out file). Diagnostics go to `err`.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    RunConfig rc;
    CLI::App app{"Order bounds for power-series sums, perfect-square testing of SLP integers, "
                 "sums of square roots and logarithm gaps."};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", rc.seed, "RNG seed")->capture_default_str();
    app.add_option("--trunc", rc.trunc, "series truncation for polynomial inputs")->capture_default_str();
    app.add_option("--rounds", rc.rounds, "perfect-square test rounds")->capture_default_str();
    app.add_option("--grh-c", rc.grh_c, "constant C of the prime density bound (rational)")->capture_default_str();
    app.add_option("--bit-limit", rc.bit_limit, "bit limit for exact SLP evaluation")->capture_default_str();
    app.add_option("--precision", rc.precision_bits, "initial interval precision in bits")->capture_default_str();
    app.add_option("--json-out", rc.output, "write the report here instead of stdout");
    app.add_option("--q-override", rc.q_override, "fixed prime-bound exponent in place of q(t)");

    std::function<Outcome()> action;
    std::string file, file2, text_arg, text_arg2;
    std::string alpha = "1/2";
    std::size_t j_max = 12;
    std::size_t count_a = 0, count_b = 0;

    // ps
    auto *ps = app.add_subcommand("ps", "truncated power series")->require_subcommand(1);
    auto series_op = [&](const char *name, const char *help, std::function<Outcome(const TruncatedSeries &)> f) {
        auto *sc = ps->add_subcommand(name, help);
        sc->add_option("series", file, "series JSON file")->required();
        sc->callback([&, f] { action = [&, f] { return f(detail::load_series(file, rc.trunc)); }; });
        return sc;
    };
    series_op("order", "order of a series", [](const TruncatedSeries &s) {
        return Outcome{{{"order", io::order_json(order(s))}, {"precision", s.precision()}}};
    });
    series_op("sqrt", "square root (positive constant term)", [](const TruncatedSeries &s) {
        return Outcome{{{"result", io::series_json(sqrt_series(s))}}};
    });
    series_op("log", "logarithm (constant term 1)", [](const TruncatedSeries &s) {
        return Outcome{{{"result", io::series_json(log_series(s))}}};
    });
    series_op("exp", "exponential (constant term 0)", [](const TruncatedSeries &s) {
        return Outcome{{{"result", io::series_json(exp_series(s))}}};
    });
    series_op("pow", "rational power (constant term 1)", [&](const TruncatedSeries &s) {
        return Outcome{{{"alpha", alpha}, {"result", io::series_json(pow_series(s, parse_rat(alpha)))}}};
    })->add_option("--alpha", alpha, "exponent")->capture_default_str();

    // wronskian
    auto *wr = app.add_subcommand("wronskian", "Wronskian analysis")->require_subcommand(1);
    auto *analyze = wr->add_subcommand("analyze", "order identity and bounds for a series family");
    analyze->add_option("family", file, "family JSON file")->required();
    analyze->callback([&] {
        action = [&] {
            const auto j = detail::read_json(file);
            const bool poly = io::family_is_polynomial(j);
            auto p = rc.trunc;
            while (true) {
                const auto family = io::family_from(j, p);
                try {
                    const auto r = check_order_identity(family);
                    json report = io::identity_report_json(r);
                    report["precision"] = family.precision();
                    report["wronskian"] = io::series_json(wronskian_det(family));
                    report["distinct_order_basis"] = io::basis_json(distinct_order_basis(family));
                    return Outcome{report, r.all_hold() ? exit_ok : exit_violation};
                } catch (const error &e) {
                    if (e.code() != errc::indeterminate || !poly || p >= 4096) {
                        throw;
                    }
                }
                p = std::min<std::size_t>(4096, 2 * p);
            }
        };
    });

    // ode / sqrtsum
    auto *ode = app.add_subcommand("ode", "sums of first-order ODE solutions")->require_subcommand(1);
    auto *ode_verify = ode->add_subcommand("verify", "check the order bound of an ODE-sum instance");
    ode_verify->add_option("instance", file, "instance JSON file")->required();
    ode_verify->callback([&] {
        action = [&] {
            const auto j = detail::read_json(file);
            if (io::special_kind_from(j)) {
                const auto inst = io::special_from(j);
                const auto bounds = special_family_bounds(inst);
                const auto r = with_precision_escalation(
                    [&](std::size_t p) { return special_family_check(inst, p); }, bounds.guaranteed + 8, 4096);
                json report = io::bound_report_json(r);
                report["kind"] = j.at("kind");
                report["stated_bound_applies"] = bounds.stated_applies;
                return Outcome{report, detail::bound_code(r)};
            }
            const auto inst = io::ode_from(j);
            const auto n = inst.terms.size();
            const auto start = n * n * inst.d + n + 7;
            const auto r = with_precision_escalation([&](std::size_t p) { return ode_sum_check(inst, p); }, start, 4096);
            const auto w = wronskian_route_check(inst, n * n * inst.d + n + 8);
            json report = io::bound_report_json(r);
            report["wronskian_route"] = io::bound_report_json(w);
            const int code = std::max(detail::bound_code(r), w.status == BoundStatus::violated ? exit_violation : 0);
            return Outcome{report, code};
        };
    });
    auto *sq = app.add_subcommand("sqrtsum", "sums of square roots of polynomials")->require_subcommand(1);
    auto *sq_verify = sq->add_subcommand("verify", "check the order bound of a square-root sum");
    sq_verify->add_option("instance", file, "instance JSON file")->required();
    sq_verify->callback([&] {
        action = [&] {
            const auto inst = io::sqrt_sum_from(detail::read_json(file));
            const auto r = with_precision_escalation([&](std::size_t p) { return sqrt_sum_check(inst, p); },
                                                     sqrt_sum_bound(inst) + 8, 4096);
            return Outcome{io::bound_report_json(r), detail::bound_code(r)};
        };
    });

    // slp
    auto *slp = app.add_subcommand("slp", "straight-line programs")->require_subcommand(1);
    auto *slp_eval = slp->add_subcommand("eval", "exact value under --bit-limit");
    slp_eval->add_option("program", file, "SLP v1 file")->required();
    slp_eval->callback([&] {
        action = [&] {
            const auto s = detail::read_slp(file);
            return Outcome{{{"size", s.size()}, {"value", io::int_json(eval_exact(s, rc.bit_limit))}}};
        };
    });
    auto *slp_mod = slp->add_subcommand("evalmod", "value modulo m");
    slp_mod->add_option("program", file, "SLP v1 file")->required();
    slp_mod->add_option("modulus", text_arg, "modulus >= 2")->required();
    slp_mod->callback([&] {
        action = [&] {
            const auto s = detail::read_slp(file);
            const auto m = parse_int(text_arg);
            return Outcome{{{"size", s.size()}, {"modulus", io::int_json(m)}, {"residue", io::int_json(eval_mod(s, m))}}};
        };
    });
    auto *slp_prod = slp->add_subcommand("product", "program for the product of two values");
    slp_prod->add_option("a", file, "SLP v1 file")->required();
    slp_prod->add_option("b", file2, "SLP v1 file")->required();
    slp_prod->callback([&] {
        action = [&] {
            const auto a = detail::read_slp(file);
            const auto b = detail::read_slp(file2);
            const auto p = product_slp(a, b);
            return Outcome{{{"size", p.size()}, {"size_a", a.size()}, {"size_b", b.size()}, {"program", to_text(p)}}};
        };
    });

    // sqtest
    auto *st = app.add_subcommand("sqtest", "randomized perfect-square test")->require_subcommand(1);
    auto *st_run = st->add_subcommand("run", "test the value of a program");
    st_run->add_option("program", file, "SLP v1 file")->required();
    st_run->callback([&] {
        action = [&] {
            const auto s = detail::read_slp(file);
            const auto cfg = detail::square_config(rc);
            RngHandle rng(rc.seed);
            json report = io::verdict_json(perfect_square_slp(s, cfg, rng));
            report["provenance"] = detail::provenance(rc, cfg);
            return Outcome{report};
        };
    });
    auto *st_density = st->add_subcommand("density", "fraction of primes <= x where a is a non-residue");
    st_density->add_option("a", text_arg, "positive non-square")->required();
    st_density->add_option("x", text_arg2, "prime limit")->required();
    st_density->callback([&] {
        action = [&] {
            const auto x = parse_int(text_arg2);
            if (x < 2 || x > Int(1) << 32) {
                fail(errc::invalid_argument, "x must lie in [2, 2^32]");
            }
            const auto d = density_experiment(parse_int(text_arg), x.get_ui());
            return Outcome{{{"a", text_arg}, {"x", io::int_json(x)}, {"density", io::rat_json(d)},
                            {"density_approx", d.get_d()}}};
        };
    });
    auto *st_q = st->add_subcommand("qexp", "prime-bound exponent q(t)");
    st_q->add_option("t", count_a, "program size")->required();
    st_q->callback([&] {
        action = [&] {
            const auto c = parse_rat(rc.grh_c);
            return Outcome{{{"t", count_a}, {"grh_c", io::rat_json(c)}, {"q", q_exponent(count_a, c)}}};
        };
    });

    // ssr
    auto *ssr = app.add_subcommand("ssr", "sums of square roots")->require_subcommand(1);
    auto ssr_file_op = [&](const char *name, const char *help, std::function<Outcome(const detail::LoadedSsr &)> f) {
        auto *sc = ssr->add_subcommand(name, help);
        sc->add_option("instance", file, "instance JSON file")->required();
        sc->callback([&, f] { action = [&, f] { return f(detail::load_ssr(file)); }; });
    };
    ssr_file_op("partition", "one-dimensional classes", [&](const detail::LoadedSsr &l) {
        const auto cfg = detail::square_config(rc);
        RngHandle rng(rc.seed);
        json report = io::partition_json(partition_one_dim(l.instance, cfg, rng));
        report["provenance"] = detail::provenance(rc, cfg);
        return Outcome{report};
    });
    ssr_file_op("decide", "is the signed sum zero", [&](const detail::LoadedSsr &l) {
        const auto cfg = detail::square_config(rc);
        RngHandle rng(rc.seed);
        json report = io::decision_json(decide_ssr_slp(l.instance, cfg, rng, rc.bit_limit));
        report["provenance"] = detail::provenance(rc, cfg);
        return Outcome{report};
    });
    ssr_file_op("eq", "exact decision for binary inputs", [&](const detail::LoadedSsr &l) {
        if (!l.values) {
            fail(errc::invalid_argument, "ssr eq needs an instance with 'values'");
        }
        return Outcome{io::decision_json(decide_ssr_eq(*l.values, l.instance.signs))};
    });
    auto *ssr_bin = ssr->add_subcommand("binomial", "sum_i (-1)^i binom(m,i) sqrt(n0+i)");
    ssr_bin->add_option("m", count_a, "m >= 1")->required();
    ssr_bin->add_option("n0", text_arg, "n0 >= 1")->required();
    ssr_bin->callback([&] {
        action = [&] {
            const auto b = binomial_instance(count_a, parse_int(text_arg), rc.precision_bits);
            return Outcome{{{"m", b.m},
                            {"n0", io::int_json(b.n0)},
                            {"terms", b.values.size()},
                            {"sign", b.sum.certified_sign()},
                            {"S_approx", b.sum.to_decimal(20)},
                            {"S_lower", io::rat_json(b.sum.lower())},
                            {"S_upper", io::rat_json(b.sum.upper())},
                            {"precision_bits", b.sum.precision()},
                            {"is_zero", decide_ssr_eq(b.values, b.signs).is_zero}},
                           b.sum.certified_sign() == 0 ? exit_undecided : exit_ok};
        };
    });

    // loggap
    auto *lg = app.add_subcommand("loggap", "logarithm sums and gaps")->require_subcommand(1);
    auto *lg_order = lg->add_subcommand("order", "order of sum c_i log f_i(x)");
    lg_order->add_option("instance", file, "JSON with 'c' and 'f'")->required();
    lg_order->callback([&] {
        action = [&] {
            const auto j = detail::read_json(file);
            std::vector<Rat> c;
            std::vector<Poly> f;
            for (const auto &v : j.at("c")) {
                c.push_back(io::rat_from(v));
            }
            for (const auto &p : j.at("f")) {
                f.push_back(io::poly_from(p));
            }
            const auto r = log_sum_order(c, f, rc.trunc);
            return Outcome{io::log_order_json(r), r.routes_agree ? detail::bound_code(r.report) : exit_violation};
        };
    });
    auto *lg_exp = lg->add_subcommand("exponents", "minimal p1(n,d), p2(n,d)");
    lg_exp->add_option("n", count_a, "n >= 1")->required();
    lg_exp->add_option("d", count_b, "d >= 2")->required();
    lg_exp->callback([&] {
        action = [&] {
            const auto e = gap_exponents(count_a, count_b);
            return Outcome{{{"n", count_a}, {"d", count_b}, {"p1", e.p1}, {"p2", e.p2}}};
        };
    });
    auto *lg_verify = lg->add_subcommand("verify", "certify |E| >= X^-p2");
    lg_verify->add_option("instance", file, "log-sum instance JSON")->required();
    lg_verify->callback([&] {
        action = [&] {
            const auto r = gap_verify(io::log_sum_from(detail::read_json(file)), rc.precision_bits);
            int code = exit_ok;
            if (!r.resolved) {
                code = exit_undecided;
            } else if (r.preconditions_met && (!r.gap_holds || !r.half_log_x_holds.value_or(true))) {
                code = exit_violation;
            }
            return Outcome{io::gap_report_json(r), code};
        };
    });
    auto *lg_sj = lg->add_subcommand("sjbounds", "S_j bounds in the A = 0 branch");
    lg_sj->add_option("instance", file, "log-sum instance JSON")->required();
    lg_sj->add_option("--jmax", j_max, "largest j")->capture_default_str();
    lg_sj->callback([&] {
        action = [&] {
            const auto r = sj_bounds_check(io::log_sum_from(detail::read_json(file)), j_max);
            return Outcome{io::sj_report_json(r), r.all_hold() ? exit_ok : exit_violation};
        };
    });

    // selftest
    auto *self = app.add_subcommand("selftest", "run the acceptance suite twice and compare");
    self->callback([&] {
        action = [&] {
            auto log_line = [&](const acceptance::Result &r) {
                err << "criterion " << r.id << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.seconds << " s)\n";
            };
            const auto first = acceptance::run_all(rc.seed, log_line);
            const auto second = acceptance::run_all(rc.seed);
            const bool same = acceptance::report(first) == acceptance::report(second);
            json criteria = json::array();
            bool all = same;
            for (const auto &r : first) {
                criteria.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.outcome.pass}, {"detail", r.outcome.detail}});
                all = all && r.pass();
            }
            criteria.push_back({{"id", 10}, {"title", "determinism"}, {"pass", same}, {"detail", "two runs compared"}});
            return Outcome{{{"seed", rc.seed}, {"criteria", criteria}, {"all_pass", all}},
                           all ? exit_ok : exit_violation};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Outcome result;
    try {
        result = action();
    } catch (const error &e) {
        result.report = {{"error", std::string(name(e.code()))}, {"message", e.what()}};
        result.code = exit_code_for(e.code());
        err << e.what() << "\n";
    } catch (const json::exception &e) {
        result.report = {{"error", std::string(name(errc::parse_error))}, {"message", e.what()}};
        result.code = exit_usage;
        err << e.what() << "\n";
    }
    result.report["exit_code"] = result.code;
    const auto text = result.report.dump(2) + "\n";
    if (rc.output.empty()) {
        out << text;
    } else {
        std::ofstream f(rc.output, std::ios::binary);
        if (!f) {
            err << "cannot write '" << rc.output << "'\n";
            return exit_usage;
        }
        f << text;
    }
    return result.code;
}

} // namespace ordgap::cli

#endif // ORDGAP_TOOLS_CLI_HPP
