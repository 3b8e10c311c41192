#ifndef ORDGAP_JSON_IO_HPP
#define ORDGAP_JSON_IO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <ordgap/error.hpp>
#include <ordgap/loggap.hpp>
#include <ordgap/numerics.hpp>
#include <ordgap/ode_sum.hpp>
#include <ordgap/polynomial.hpp>
#include <ordgap/series.hpp>
#include <ordgap/sqtest.hpp>
#include <ordgap/ssr.hpp>
#include <ordgap/wronskian.hpp>

// Rationals travel as strings "p/q" (or "p" for integers) so no value ever
// passes through a JSON float. Integer JSON numbers are accepted on input.
namespace ordgap::io
{

using json = nlohmann::json;

namespace detail
{

inline const json &field(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        fail(errc::parse_error, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline const json &array_field(const json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_array()) {
        fail(errc::parse_error, std::string("field '") + key + "' must be an array");
    }
    return v;
}

inline std::size_t count_field(const json &j, const char *key)
{
    const auto &v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(errc::parse_error, std::string("field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

} // namespace detail

inline json rat_json(const Rat &q)
{
    return to_string(q);
}

inline json int_json(const Int &n)
{
    return to_string(n);
}

inline Rat rat_from(const json &j)
{
    if (j.is_string()) {
        return parse_rat(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rat(Int(std::to_string(j.get<long long>())));
    }
    fail(errc::parse_error, "expected a rational string or an integer, got " + j.dump());
}

inline Int int_from(const json &j)
{
    if (j.is_string()) {
        return parse_int(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Int(std::to_string(j.get<long long>()));
    }
    fail(errc::parse_error, "expected an integer string or an integer, got " + j.dump());
}

inline Poly poly_from(const json &j)
{
    if (!j.is_array()) {
        fail(errc::parse_error, "polynomial must be an array of coefficients");
    }
    Poly p;
    for (const auto &c : j) {
        p.push_back(rat_from(c));
    }
    return p;
}

inline json poly_json(const Poly &p)
{
    json out = json::array();
    for (const auto &c : p) {
        out.push_back(rat_json(c));
    }
    return out;
}

// {"coeffs": [...], "precision": P}, {"poly": [...], "precision": P}, or a
// bare coefficient array, which is a polynomial at default_precision.
inline TruncatedSeries series_from(const json &j, std::size_t default_precision)
{
    if (j.is_array()) {
        return from_poly(poly_from(j), std::max(default_precision, j.size()));
    }
    if (j.is_object() && j.contains("coeffs")) {
        auto coeffs = poly_from(j.at("coeffs"));
        if (j.contains("precision") && detail::count_field(j, "precision") != coeffs.size()) {
            fail(errc::parse_error, "precision must equal the number of coefficients");
        }
        if (coeffs.empty()) {
            fail(errc::parse_error, "series needs precision >= 1");
        }
        return TruncatedSeries(std::move(coeffs));
    }
    if (j.is_object() && j.contains("poly")) {
        const auto p = j.contains("precision") ? detail::count_field(j, "precision") : default_precision;
        return from_poly(poly_from(j.at("poly")), p);
    }
    fail(errc::parse_error, "series must be an array or an object with 'coeffs' or 'poly'");
}

inline json series_json(const TruncatedSeries &s)
{
    return {{"coeffs", poly_json(s.coeffs())}, {"precision", s.precision()}};
}

inline json order_json(const OrderResult &o)
{
    return {{"kind", o.is_known() ? "Known" : "AtLeast"}, {"value", o.value}};
}

inline json matrix_json(const RatMatrix &m)
{
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(poly_json(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Wronskian
// ---------------------------------------------------------------------------

// {"members": [series, ...]}; "precision" applies to polynomial members.
inline SeriesFamily family_from(const json &j, std::size_t default_precision)
{
    const auto p = j.contains("precision") ? detail::count_field(j, "precision") : default_precision;
    std::vector<TruncatedSeries> members;
    for (const auto &m : detail::array_field(j, "members")) {
        members.push_back(series_from(m, p));
    }
    if (members.empty()) {
        fail(errc::parse_error, "family needs at least one member");
    }
    return SeriesFamily(std::move(members));
}

// True when every member is a polynomial whose precision may be raised.
inline bool family_is_polynomial(const json &j)
{
    for (const auto &m : detail::array_field(j, "members")) {
        if (!(m.is_array() || (m.is_object() && m.contains("poly")))) {
            return false;
        }
    }
    return true;
}

inline json identity_report_json(const OrderIdentityReport &r)
{
    return {{"n", r.n},
            {"w_ord", order_json(r.w_ord)},
            {"orders", r.orders},
            {"sum_orders", r.sum_orders},
            {"binom_term", r.binom_term},
            {"max_order", r.max_order},
            {"identity_holds", r.identity_holds},
            {"upper_bound_holds", r.upper_bound_holds},
            {"lower_bound_holds", r.lower_bound_holds}};
}

inline json basis_json(const DistinctOrderBasis &b)
{
    json basis = json::array();
    for (const auto &s : b.basis) {
        basis.push_back(series_json(s));
    }
    return {{"basis", basis}, {"orders", b.orders}, {"transform", matrix_json(b.transform)}};
}

// ---------------------------------------------------------------------------
// ODE sums
// ---------------------------------------------------------------------------

inline json bound_report_json(const BoundReport &r)
{
    json out = {{"status", name(r.status)},
                {"order", order_json(r.order)},
                {"bound", r.bound},
                {"precision", r.precision},
                {"holds", r.holds()}};
    if (r.stated_bound) {
        out["stated_bound"] = *r.stated_bound;
    }
    if (r.stated_holds) {
        out["stated_holds"] = *r.stated_holds;
    }
    return out;
}

inline OdeSumInstance ode_from(const json &j)
{
    OdeSumInstance inst;
    inst.d = detail::count_field(j, "d");
    for (const auto &t : detail::array_field(j, "terms")) {
        inst.terms.push_back({rat_from(detail::field(t, "c")), poly_from(detail::field(t, "g")),
                              poly_from(detail::field(t, "p")), poly_from(detail::field(t, "q")),
                              rat_from(detail::field(t, "y0"))});
    }
    return inst;
}

inline SqrtSumInstance sqrt_sum_from(const json &j)
{
    SqrtSumInstance inst;
    inst.d = detail::count_field(j, "d");
    for (const auto &t : detail::array_field(j, "terms")) {
        inst.terms.push_back(
            {rat_from(detail::field(t, "c")), poly_from(detail::field(t, "g")), poly_from(detail::field(t, "f"))});
    }
    return inst;
}

inline std::optional<SpecialKind> special_kind_from(const json &j)
{
    if (!j.contains("kind")) {
        return std::nullopt;
    }
    const auto k = detail::field(j, "kind").get<std::string>();
    if (k == "exp") {
        return SpecialKind::exp;
    }
    if (k == "trig") {
        return SpecialKind::trig;
    }
    if (k == "rational_power") {
        return SpecialKind::rational_power;
    }
    fail(errc::parse_error, "unknown kind '" + k + "' (expected exp, trig or rational_power)");
}

inline TrigFn trig_fn_from(const std::string &s)
{
    if (s == "cosh") {
        return TrigFn::cosh;
    }
    if (s == "sinh") {
        return TrigFn::sinh;
    }
    if (s == "cos") {
        return TrigFn::cos;
    }
    if (s == "sin") {
        return TrigFn::sin;
    }
    fail(errc::parse_error, "unknown function '" + s + "'");
}

// Corollary families: {"kind": ..., "d": ..., "terms": [...]}. Exp terms
// carry c, g, f; trig terms add "fn"; rational_power terms carry c, g, p, q,
// alpha.
inline SpecialInstance special_from(const json &j)
{
    SpecialInstance inst;
    inst.kind = *special_kind_from(j);
    inst.d = detail::count_field(j, "d");
    for (const auto &t : detail::array_field(j, "terms")) {
        SpecialTerm term;
        term.c = rat_from(detail::field(t, "c"));
        term.g = t.contains("g") ? poly_from(t.at("g")) : Poly{Rat(1)};
        if (inst.kind == SpecialKind::rational_power) {
            term.p = poly_from(detail::field(t, "p"));
            term.q = t.contains("q") ? poly_from(t.at("q")) : Poly{Rat(1)};
            term.alpha = rat_from(detail::field(t, "alpha"));
        } else {
            term.f = poly_from(detail::field(t, "f"));
            if (inst.kind == SpecialKind::trig) {
                term.fn = trig_fn_from(detail::field(t, "fn").get<std::string>());
            }
        }
        inst.terms.push_back(std::move(term));
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Perfect-square test and SSR
// ---------------------------------------------------------------------------

inline json verdict_json(const SquareVerdict &v)
{
    json out = {{"verdict", v.is_square() ? "ProbablySquare" : "NotSquare"},
                {"rounds_used", v.rounds_used},
                {"primes_sampled", v.primes_sampled},
                {"slp_size", v.slp_size},
                {"q", v.q},
                {"q_overridden", v.q_overridden},
                {"prime_bound", "2^" + std::to_string(v.q)},
                {"grh_c", rat_json(v.grh_constant)},
                {"seed", v.seed}};
    if (v.is_square()) {
        out["error_bound"] = rat_json(v.error_bound);
    } else {
        out["witness"] = int_json(*v.witness);
    }
    return out;
}

inline json partition_json(const OneDimPartition &p)
{
    json tests = json::array();
    for (const auto &t : p.tests) {
        json entry = verdict_json(t.verdict);
        entry["index"] = t.index;
        entry["representative"] = t.representative;
        tests.push_back(std::move(entry));
    }
    return {{"classes", p.classes}, {"representatives", p.representatives}, {"tests", tests}};
}

inline json decision_json(const SsrDecision &d)
{
    json sums = json::array();
    for (const auto &s : d.class_sums) {
        sums.push_back(int_json(s));
    }
    return {{"is_zero", d.is_zero}, {"partition", partition_json(d.partition)}, {"class_sums", sums}};
}

inline std::vector<int> signs_from(const json &j, std::size_t n)
{
    std::vector<int> signs;
    if (!j.contains("signs")) {
        signs.assign(n, 1);
        return signs;
    }
    for (const auto &s : detail::array_field(j, "signs")) {
        if (s.is_string()) {
            const auto t = s.get<std::string>();
            if (t != "+" && t != "-") {
                fail(errc::parse_error, "sign strings must be '+' or '-'");
            }
            signs.push_back(t == "+" ? 1 : -1);
        } else if (s.is_number_integer()) {
            signs.push_back(s.get<int>());
        } else {
            fail(errc::parse_error, "signs must be +1/-1 or '+'/'-'");
        }
    }
    return signs;
}

// ---------------------------------------------------------------------------
// Log sums
// ---------------------------------------------------------------------------

// {"X": "decimal", "terms": [{"c": ..., "b": [...]}, ...]}
inline LogSumInstance log_sum_from(const json &j)
{
    LogSumInstance inst;
    inst.x = int_from(detail::field(j, "X"));
    for (const auto &t : detail::array_field(j, "terms")) {
        LogTerm term;
        term.c = int_from(detail::field(t, "c"));
        for (const auto &b : detail::array_field(t, "b")) {
            term.b.push_back(int_from(b));
        }
        inst.terms.push_back(std::move(term));
    }
    return inst;
}

inline json log_order_json(const LogOrderReport &r)
{
    json out = bound_report_json(r.report);
    out["routes_agree"] = r.routes_agree;
    out["series_route"] = r.series_order ? order_json(*r.series_order) : json(nullptr);
    out["derivative_numerator_order"] =
        r.derivative_numerator_order ? json(*r.derivative_numerator_order) : json(nullptr);
    return out;
}

inline json params_json(const LogSumParams &p)
{
    json a = json::array();
    for (const auto &v : p.a) {
        a.push_back(int_json(v));
    }
    return {{"n", p.n},     {"B", int_json(p.big_b)}, {"C", int_json(p.big_c)},
            {"d", p.d},     {"degrees", p.degrees},   {"a", a},
            {"A", int_json(p.big_a)}};
}

inline json gap_report_json(const GapReport &r)
{
    json out = {{"branch", r.branch == GapBranch::a_zero ? "AZero" : "ANonzero"},
                {"params", params_json(r.params)},
                {"p1", r.exponents.p1},
                {"p2", r.exponents.p2},
                {"exponents_minimal", true},
                {"preconditions_met", r.preconditions_met},
                {"resolved", r.resolved},
                {"exact_zero", r.exact_zero},
                {"precision_bits", r.precision_bits},
                {"E_lower", rat_json(r.e.lower())},
                {"E_upper", rat_json(r.e.upper())},
                {"E_approx", r.e.to_decimal(20)},
                {"abs_E_lower_certified", rat_json(r.abs_e_lower)},
                {"threshold", rat_json(r.threshold)},
                {"gap_holds", r.gap_holds}};
    if (r.half_log_x_holds) {
        out["half_log_X_holds"] = *r.half_log_x_holds;
    }
    return out;
}

inline json sj_report_json(const SjReport &r)
{
    json s = json::array();
    for (std::size_t j = 1; j < r.s.size(); ++j) {
        s.push_back(rat_json(r.s[j]));
    }
    json out = {{"j_max", r.j_max},
                {"A", int_json(r.big_a)},
                {"S", s},
                {"ell", r.ell ? json(*r.ell) : json(nullptr)},
                {"upper_bound_holds", r.upper_bound_holds},
                {"ell_within_dn", r.ell_within_dn},
                {"integrality_holds", r.integrality_holds},
                {"lower_bound_holds", r.lower_bound_holds},
                {"preconditions_met", r.preconditions_met},
                {"p1", r.p1},
                {"goal_checked", r.goal_checked},
                {"goal_holds", r.goal_holds},
                {"all_hold", r.all_hold()}};
    if (r.upper_bound_first_failure) {
        out["upper_bound_first_failure"] = *r.upper_bound_first_failure;
    }
    if (r.goal_first_failure) {
        out["goal_first_failure"] = *r.goal_first_failure;
    }
    return out;
}

} // namespace ordgap::io

#endif // ORDGAP_JSON_IO_HPP
