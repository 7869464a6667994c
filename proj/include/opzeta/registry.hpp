#pragma once

// Identity registry: one record per displayed identity, loaded from a
// versioned key = value text file shared by the CLI and the test suites.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"
#include "opzeta/operator.hpp"
#include "opzeta/power_series.hpp"
#include "opzeta/series.hpp"
#include "opzeta/specfun.hpp"

namespace opzeta {

// ---------------------------------------------------------------------------
// Small parsers

namespace detail {

inline std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

inline double parse_plain_number(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(Errc::invalid_argument, "malformed number '" + whole + "'");
    return v;
}

// term := [number]['*']'pi'['/'number] | number
inline double parse_term(std::string t, const std::string& whole) {
    const auto pos = t.find("pi");
    if (pos == std::string::npos) return parse_plain_number(t, whole);
    std::string head = t.substr(0, pos);
    std::string tail = t.substr(pos + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double v = std::numbers::pi * (head.empty() ? 1.0 : parse_plain_number(head, whole));
    if (!tail.empty()) {
        if (tail[0] != '/') throw Error(Errc::invalid_argument, "malformed number '" + whole + "'");
        v /= parse_plain_number(tail.substr(1), whole);
    }
    return v;
}

}  // namespace detail

/// Reals written as sums of terms like 0.1, pi, 2pi, pi/2, -pi/2, 2pi-0.1.
inline double parse_real(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(Errc::invalid_argument, "empty number");
    double total = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        double sign = 1.0;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1.0 : 1.0;
            ++i;
        }
        std::size_t j = i;
        // A sign directly after an exponent marker belongs to the number.
        while (j < s.size() && !((s[j] == '+' || s[j] == '-') && j > i && s[j - 1] != 'e' && s[j - 1] != 'E')) ++j;
        total += sign * detail::parse_term(s.substr(i, j - i), text);
        i = j;
    }
    return total;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
    std::string text;

    bool contains(double x, double slack = 1e-12) const {
        const bool above = lo_closed ? x >= lo - slack : x > lo - slack && x > lo;
        const bool below = hi_closed ? x <= hi + slack : x < hi + slack && x < hi;
        return above && below;
    }

    static Interval parse(const std::string& text) {
        const std::string s = detail::trim(text);
        const auto comma = s.find(',');
        if (s.size() < 5 || comma == std::string::npos || (s.front() != '[' && s.front() != '(') ||
            (s.back() != ']' && s.back() != ')'))
            throw Error(Errc::registry_format, "bad interval '" + text + "'");
        Interval iv;
        iv.lo_closed = s.front() == '[';
        iv.hi_closed = s.back() == ']';
        iv.lo = parse_real(s.substr(1, comma - 1));
        iv.hi = parse_real(s.substr(comma + 1, s.size() - comma - 2));
        iv.text = s;
        return iv;
    }
};

/// "a:b:steps", endpoints inclusive.
struct Grid {
    double a = 0.0;
    double b = 0.0;
    int steps = 1;
    std::string text;

    std::vector<double> points() const {
        std::vector<double> p;
        if (steps == 1) return {a};
        for (int i = 0; i < steps; ++i) p.push_back(i == steps - 1 ? b : a + (b - a) * i / (steps - 1));
        return p;
    }

    static Grid parse(const std::string& text) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw Error(Errc::invalid_argument, "grid must look like a:b:steps, got '" + text + "'");
        Grid g;
        g.a = parse_real(text.substr(0, c1));
        g.b = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
        const double steps = detail::parse_plain_number(detail::trim(text.substr(c2 + 1)), text);
        if (steps < 1 || steps != std::floor(steps) || steps > 1e6)
            throw Error(Errc::invalid_argument, "grid steps must be a positive integer");
        g.steps = static_cast<int>(steps);
        if (g.steps > 1 && !(g.b > g.a)) throw Error(Errc::invalid_argument, "grid needs a < b");
        g.text = text;
        return g;
    }
};

// ---------------------------------------------------------------------------
// Closed forms referenced by name

struct NamedClosedForm {
    std::string name;
    std::string formula;
    std::function<double(double)> value;
    /// Principal part at 0, if the form is singular there.
    std::optional<SingularTerm> singular;
    /// Exact Taylor series of (form - singular part): coefficients of x^0 .. x^(order-1).
    std::function<ps::Series(std::size_t)> regular_taylor;
};

inline const std::map<std::string, NamedClosedForm>& named_closed_forms() {
    static const std::map<std::string, NamedClosedForm> table = [] {
        using namespace ps;
        // 2(1 - cos x)/x^2 = 1 - x^2/12 + ...
        auto versine_ratio = [](std::size_t order) {
            return drop_leading(scaled(plus_constant(scaled(cos_series(order + 2), -1), 1), 2), 2);
        };
        std::map<std::string, NamedClosedForm> t;
        t["cot_half"] = {"cot_half", "sin x/(2(1 - cos x))",
                         [](double x) { return std::sin(x) / (2.0 * (1.0 - std::cos(x))); },
                         SingularTerm{1, -1}, [versine_ratio](std::size_t order) {
                             auto g = divide(drop_leading(sin_series(order + 3), 1), versine_ratio(order + 1));
                             return drop_leading(plus_constant(g, -1), 1);
                         }};
        t["neg_half_csc2_half"] = {"neg_half_csc2_half", "-1/(2(1 - cos x))",
                                   [](double x) { return -1.0 / (2.0 * (1.0 - std::cos(x))); },
                                   SingularTerm{-1, -2}, [versine_ratio](std::size_t order) {
                                       Series one{std::vector<Rational>(order + 2)};
                                       one.coeffs[0] = 1;
                                       auto h = divide(one, versine_ratio(order + 2));
                                       return drop_leading(scaled(plus_constant(h, -1), -1), 2);
                                   }};
        t["half_sec"] = {"half_sec", "1/(2 cos x)", [](double x) { return 0.5 / std::cos(x); }, std::nullopt,
                         [](std::size_t order) {
                             Series one{std::vector<Rational>(order)};
                             one.coeffs[0] = 1;
                             return scaled(divide(one, cos_series(order)), Rational(1, 2));
                         }};
        t["half_log_sec_tan"] = {"half_log_sec_tan", "(1/2) log(sec x + tan x)",
                                 [](double x) { return 0.5 * std::log(1.0 / std::cos(x) + std::tan(x)); },
                                 std::nullopt, [](std::size_t order) {
                                     Series one{std::vector<Rational>(order - 1)};
                                     one.coeffs[0] = 1;
                                     return integrate(scaled(divide(one, cos_series(order - 1)), Rational(1, 2)));
                                 }};
        t["zero"] = {"zero", "0", [](double) { return 0.0; }, std::nullopt,
                     [](std::size_t order) { return Series{std::vector<Rational>(order)}; }};
        t["geometric"] = {"geometric", "1/(e^{-ix} - 1)", nullptr, SingularTerm{1, -1}, nullptr};
        return t;
    }();
    return table;
}

// ---------------------------------------------------------------------------
// Records

enum class LhsMode { partial_sum, abel, geometric, taylor_flow, composite };
enum class RhsKind { clausen, recip_gamma_clausen, closed };

inline const char* lhs_mode_name(LhsMode m) {
    switch (m) {
    case LhsMode::partial_sum: return "partial_sum";
    case LhsMode::abel: return "abel";
    case LhsMode::geometric: return "geometric";
    case LhsMode::taylor_flow: return "taylor_flow";
    case LhsMode::composite: return "composite";
    }
    return "?";
}

struct Profile {
    Grid grid;
    double tol = 1e-6;
};

struct IdentityRecord {
    std::string id;
    std::string title;
    OperatorSpec op;
    Trig trig = Trig::sin;
    LhsMode lhs = LhsMode::partial_sum;
    RhsKind rhs_kind = RhsKind::closed;
    std::string rhs_text;
    Trig clausen_parity = Trig::sin;
    unsigned clausen_m = 0;
    std::string closed_name;
    Interval domain;
    /// Parity of the anomaly term in the closed form, if any.
    std::optional<Parity> anomaly_parity;
    std::vector<long> expected_poles;
    Profile profile;
    /// 0 when the identity has no exact right side to match against.
    unsigned extract_terms = 0;
    std::string note;

    Character character() const { return op.op.kind == OpKind::beta ? Character::beta : Character::trivial; }

    TrigSeries series() const {
        return {trig, numerator_of(op.op.shift).convert_to<int>(), character()};
    }

    const NamedClosedForm* closed() const {
        if (rhs_kind != RhsKind::closed) return nullptr;
        return &named_closed_forms().at(closed_name);
    }

    /// Exact polynomial right side, when there is one.
    std::optional<PiXPolynomial> exact_rhs() const {
        switch (rhs_kind) {
        case RhsKind::clausen: return clausen_closed_form(clausen_parity, clausen_m);
        case RhsKind::recip_gamma_clausen:
            return apply_recip_gamma_op(*op.gamma_shift, Expression::polynomial(clausen_closed_form(clausen_parity, clausen_m)))
                .poly;
        case RhsKind::closed:
            if (closed_name == "zero") return PiXPolynomial{};
            return std::nullopt;
        }
        return std::nullopt;
    }

    /// Right side as an operator-engine expression: the exact polynomial, or
    /// the principal part of a singular closed form.
    Expression rhs_expression() const {
        if (auto p = exact_rhs()) return Expression::polynomial(*p);
        Expression e;
        if (const auto* c = closed(); c && c->singular) e.singular_terms.push_back(*c->singular);
        return e;
    }

    double rhs_value(double x) const {
        if (auto p = exact_rhs()) return pipoly_eval(*p, x);
        const auto* c = closed();
        if (!c || !c->value) throw Error(Errc::unsupported, id + " has no real-valued right side");
        return c->value(x);
    }
};

class Registry {
public:
    static constexpr int kFormatVersion = 1;

    const std::vector<IdentityRecord>& records() const { return records_; }

    const IdentityRecord* find(const std::string& id) const {
        for (const auto& r : records_)
            if (r.id == id) return &r;
        return nullptr;
    }

    const IdentityRecord& at(const std::string& id) const {
        if (const auto* r = find(id)) return *r;
        throw Error(Errc::invalid_argument, "unknown identity '" + id + "'");
    }

    static Registry parse(std::istream& in);
    static Registry load(const std::string& path);

private:
    std::vector<IdentityRecord> records_;
};

namespace detail {

inline Trig parse_trig(const std::string& s) {
    if (s == "sin") return Trig::sin;
    if (s == "cos") return Trig::cos;
    throw Error(Errc::registry_format, "trig must be sin or cos, got '" + s + "'");
}

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw Error(Errc::registry_format, "bad rational '" + s + "'");
    }
}

inline IdentityRecord build_record(const std::map<std::string, std::string>& kv, int line) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw Error(Errc::registry_format, "block ending at line " + std::to_string(line) + " lacks '" + key + "'");
        return it->second;
    };
    auto opt = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    IdentityRecord r;
    r.id = get("id");
    r.title = opt("title").value_or("");
    r.note = opt("note").value_or("");

    const std::string& kind = get("operator");
    if (kind == "zeta") r.op.op.kind = OpKind::zeta;
    else if (kind == "beta") r.op.op.kind = OpKind::beta;
    else throw Error(Errc::registry_format, r.id + ": operator must be zeta or beta");
    r.op.op.shift = parse_rational(get("shift"));
    if (!is_integer(r.op.op.shift)) throw Error(Errc::registry_format, r.id + ": shift must be an integer");
    if (auto g = opt("gamma_shift")) r.op.gamma_shift = parse_rational(*g);

    const std::string& trig = get("trig");
    const std::string& lhs = get("lhs");
    if (lhs == "partial_sum") r.lhs = LhsMode::partial_sum;
    else if (lhs == "abel") r.lhs = LhsMode::abel;
    else if (lhs == "geometric") r.lhs = LhsMode::geometric;
    else if (lhs == "taylor_flow") r.lhs = LhsMode::taylor_flow;
    else if (lhs == "composite") r.lhs = LhsMode::composite;
    else throw Error(Errc::registry_format, r.id + ": unknown lhs mode '" + lhs + "'");
    if (r.lhs == LhsMode::geometric) {
        if (trig != "exp") throw Error(Errc::registry_format, r.id + ": geometric identities use trig = exp");
    } else {
        r.trig = parse_trig(trig);
    }
    if (r.lhs == LhsMode::composite && !r.op.gamma_shift)
        throw Error(Errc::registry_format, r.id + ": composite needs gamma_shift");

    r.rhs_text = get("rhs");
    const auto w = split_ws(r.rhs_text);
    if (w.size() == 3 && w[0] == "clausen") {
        r.rhs_kind = RhsKind::clausen;
        r.clausen_parity = parse_trig(w[1]);
        r.clausen_m = static_cast<unsigned>(std::stoul(w[2]));
    } else if (w.size() == 5 && w[0] == "recip_gamma" && w[2] == "clausen") {
        r.rhs_kind = RhsKind::recip_gamma_clausen;
        if (!r.op.gamma_shift || *r.op.gamma_shift != parse_rational(w[1]))
            throw Error(Errc::registry_format, r.id + ": recip_gamma rhs must match gamma_shift");
        r.clausen_parity = parse_trig(w[3]);
        r.clausen_m = static_cast<unsigned>(std::stoul(w[4]));
    } else if (w.size() == 2 && w[0] == "closed") {
        r.rhs_kind = RhsKind::closed;
        r.closed_name = w[1];
        if (!named_closed_forms().contains(r.closed_name))
            throw Error(Errc::registry_format, r.id + ": unknown closed form '" + r.closed_name + "'");
    } else {
        throw Error(Errc::registry_format, r.id + ": cannot parse rhs '" + r.rhs_text + "'");
    }
    if ((r.rhs_kind != RhsKind::closed) && r.clausen_m < 1)
        throw Error(Errc::registry_format, r.id + ": clausen order must be >= 1");

    r.domain = Interval::parse(get("domain"));
    const std::string& ap = get("anomaly_parity");
    if (ap == "odd") r.anomaly_parity = Parity::odd;
    else if (ap == "even") r.anomaly_parity = Parity::even;
    else if (ap != "none") throw Error(Errc::registry_format, r.id + ": anomaly_parity must be odd, even or none");

    const std::string poles = opt("poles").value_or("none");
    if (poles != "none")
        for (const auto& p : split_ws(poles)) r.expected_poles.push_back(std::stol(p));

    const auto prof = split_ws(get("profile"));
    if (prof.size() != 2 || prof[1].rfind("tol=", 0) != 0)
        throw Error(Errc::registry_format, r.id + ": profile must read 'a:b:steps tol=value'");
    r.profile.grid = Grid::parse(prof[0]);
    r.profile.tol = parse_plain_number(prof[1].substr(4), prof[1]);

    if (auto t = opt("extract_terms")) r.extract_terms = static_cast<unsigned>(std::stoul(*t));
    return r;
}

}  // namespace detail

inline Registry Registry::parse(std::istream& in) {
    Registry reg;
    std::map<std::string, std::string> header;
    std::optional<std::map<std::string, std::string>> block;
    int line_no = 0;
    auto flush = [&] {
        if (block) {
            auto rec = detail::build_record(*block, line_no);
            if (reg.find(rec.id)) throw Error(Errc::registry_format, "duplicate id '" + rec.id + "'");
            reg.records_.push_back(std::move(rec));
        }
        block.reset();
    };
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line == "[identity]") {
            flush();
            block.emplace();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::registry_format, "line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        auto& target = block ? *block : header;
        if (target.contains(key))
            throw Error(Errc::registry_format, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        target[key] = value;
    }
    flush();
    if (header["format"] != "opzeta-registry")
        throw Error(Errc::registry_format, "missing 'format = opzeta-registry' header");
    if (header["version"] != std::to_string(kFormatVersion))
        throw Error(Errc::registry_format, "unsupported registry version '" + header["version"] + "'");
    return reg;
}

inline Registry Registry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::registry_format, "cannot open registry file '" + path + "'");
    return parse(in);
}

/// Coefficient-matching problem for an identity with an exact right side.
inline ExtractionProblem extraction_problem(const IdentityRecord& rec) {
    if (rec.extract_terms == 0 || rec.lhs == LhsMode::geometric)
        throw Error(Errc::unsupported, rec.id + " has no exact polynomial right side to match");
    ExtractionProblem p;
    p.op = rec.op;
    p.trig = rec.trig;
    p.terms = rec.extract_terms;
    if (auto exact = rec.exact_rhs()) {
        p.rhs = *exact;
    } else {
        const auto* c = rec.closed();
        if (!c || !c->regular_taylor) throw Error(Errc::unsupported, rec.id + " has no exact Taylor expansion");
        // The term-by-term side never sees the singular part, so match the regular part only.
        p.rhs = c->regular_taylor(2 * p.terms + 4).to_poly();
    }
    return p;
}

}  // namespace opzeta
