#pragma once

// Symbolic dilation-operator engine.
//
// D = x p with p = -i d/dx, so iD x^n = n x^n: every function of iD is
// diagonal on monomials. zeta(a - iD) therefore maps x^n to zeta(a - n) x^n,
// 1/Gamma(b + iD) maps x^n to x^n / Gamma(b + n), and n^{iD} sin x = sin(n x)
// turns zeta(a - iD) sin x into the series sum sin(n x) / n^a. Operators are
// defined only through this eigen-action; nothing here expands zeta in powers
// of D.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"
#include "opzeta/series.hpp"
#include "opzeta/specfun.hpp"

namespace opzeta {

enum class OpKind { zeta, beta, recip_gamma };

inline const char* op_kind_name(OpKind k) {
    switch (k) {
    case OpKind::zeta: return "zeta";
    case OpKind::beta: return "beta";
    case OpKind::recip_gamma: return "recip_gamma";
    }
    return "?";
}

/// kind(shift - iD) for zeta and beta, 1/Gamma(shift + iD) for recip_gamma.
struct DilationShift {
    OpKind kind = OpKind::zeta;
    Rational shift = 0;

    /// With h_BK = xp + px = 2D - i:  a - iD = ((2a + 1) - i h_BK) / 2 and
    /// b + iD = ((2b - 1) + i h_BK) / 2. Returns 2a + 1 (resp. 2b - 1).
    Rational berry_keating_offset() const {
        return kind == OpKind::recip_gamma ? Rational(2 * shift - 1) : Rational(2 * shift + 1);
    }

    /// Argument at which the kind's function is evaluated on x^degree.
    Rational argument(long degree) const {
        return kind == OpKind::recip_gamma ? Rational(shift + degree) : Rational(shift - degree);
    }

    std::string str() const {
        const std::string a = to_string(shift);
        if (kind == OpKind::recip_gamma) return "1/Gamma(" + a + " + iD)";
        return std::string(op_kind_name(kind)) + "(" + a + " - iD)";
    }

    std::string berry_keating_str() const {
        const std::string c = to_string(berry_keating_offset());
        if (kind == OpKind::recip_gamma) return "1/Gamma((" + c + " + i h_BK)/2)";
        return std::string(op_kind_name(kind)) + "((" + c + " - i h_BK)/2)";
    }
};

/// op(a - iD), optionally followed by 1/Gamma(b + iD). Both are diagonal on
/// monomials, so the order does not matter.
struct OperatorSpec {
    DilationShift op;
    std::optional<Rational> gamma_shift;

    std::string str() const {
        std::string s = op.str();
        if (gamma_shift) s += " / Gamma(" + to_string(*gamma_shift) + " + iD)";
        return s;
    }
};

struct TrigAtom {
    Rational coefficient = 1;
    Trig parity = Trig::sin;
    long frequency = 1;
};

/// coefficient * x^power with power <= -1.
struct SingularTerm {
    PiPolynomial coefficient;
    int power = -1;

    friend bool operator==(const SingularTerm&, const SingularTerm&) = default;
};

struct Expression {
    PiXPolynomial poly;
    std::vector<TrigAtom> trig_atoms;
    std::vector<SingularTerm> singular_terms;

    static Expression polynomial(PiXPolynomial p) { return {std::move(p), {}, {}}; }
    static Expression trig(Trig parity, long frequency = 1, Rational coefficient = 1) {
        return {{}, {TrigAtom{std::move(coefficient), parity, frequency}}, {}};
    }
    static Expression singular(PiPolynomial coefficient, int power) {
        return {{}, {}, {SingularTerm{std::move(coefficient), power}}};
    }

    bool is_zero() const { return poly.is_zero() && trig_atoms.empty() && singular_terms.empty(); }

    friend Expression operator+(Expression a, const Expression& b) {
        a.poly += b.poly;
        a.trig_atoms.insert(a.trig_atoms.end(), b.trig_atoms.begin(), b.trig_atoms.end());
        for (const auto& t : b.singular_terms) a.add_singular(t);
        return a;
    }

    void add_singular(const SingularTerm& t) {
        for (auto& s : singular_terms) {
            if (s.power == t.power) {
                s.coefficient += t.coefficient;
                std::erase_if(singular_terms, [](const SingularTerm& u) { return u.coefficient.is_zero(); });
                return;
            }
        }
        if (!t.coefficient.is_zero()) singular_terms.push_back(t);
    }

    double operator()(double x) const {
        double v = poly(x);
        for (const auto& t : trig_atoms) {
            const double arg = static_cast<double>(t.frequency) * x;
            v += to_double(t.coefficient) * (t.parity == Trig::sin ? std::sin(arg) : std::cos(arg));
        }
        for (const auto& s : singular_terms) v += s.coefficient.to_double() * std::pow(x, s.power);
        return v;
    }
};

// ---------------------------------------------------------------------------
// Dilation

namespace detail {

// Best rational approximation by continued fractions, denominators <= max_den.
inline std::optional<Rational> recover_rational(double v, double rel_tol, long max_den) {
    if (!(v > 0.0) || !std::isfinite(v)) return std::nullopt;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = v;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        if (a > 1e12) break;
        const long ai = static_cast<long>(a);
        const long p2 = ai * p1 + p0;
        const long q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - v) <= rel_tol * v) return Rational(p1, q1);
        const double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace detail

/// f(x) -> f(c x): the action of e^{i lambda D} with c = e^lambda.
inline Expression dilate(const Expression& expr, const Rational& scale) {
    if (scale <= 0) throw Error(Errc::invalid_argument, "dilation scale must be positive");
    Expression out;
    out.poly = expr.poly.rescaled(scale);
    for (const auto& t : expr.trig_atoms) {
        const Rational f = scale * t.frequency;
        if (!is_integer(f) || f <= 0)
            throw Error(Errc::non_integer_frequency, "dilated frequency " + to_string(f) + " is not a positive integer");
        out.trig_atoms.push_back({t.coefficient, t.parity, numerator_of(f).convert_to<long>()});
    }
    for (const auto& s : expr.singular_terms) {
        Rational f = 1;
        for (int k = 0; k < -s.power; ++k) f /= scale;
        out.singular_terms.push_back({s.coefficient * f, s.power});
    }
    return out;
}

/// Real-lambda form. e^lambda must be a rational with denominator <= 10^4
/// (ln 2, ln 3, 0, ...). Convergents of irrationals that small miss by
/// ~1e-8, far outside the 1e-12 match window.
inline Expression dilate(const Expression& expr, double lambda) {
    const auto scale = detail::recover_rational(std::exp(lambda), 1e-12, 10'000);
    if (!scale) throw Error(Errc::non_rational_scale, "e^lambda is not a recognizable rational");
    return dilate(expr, *scale);
}

// ---------------------------------------------------------------------------
// Eigenvalues

class PoleHitError : public Error {
public:
    explicit PoleHitError(long degree)
        : Error(Errc::pole_hit, "zeta pole at s = 1 reached on x^" + std::to_string(degree) +
                                    "; the operator is not invertible on this term"),
          degree_(degree) {}
    long degree() const noexcept { return degree_; }

private:
    long degree_;
};

struct Eigenvalue {
    enum class Kind { exact, numeric, pole };
    Kind kind = Kind::exact;
    PiPolynomial exact;
    Complex numeric;
    double abs_error = 0.0;

    static Eigenvalue exact_value(PiPolynomial v) { return {Kind::exact, std::move(v), {}, 0.0}; }
    static Eigenvalue pole() { return {Kind::pole, {}, {}, 0.0}; }
};

inline Eigenvalue eigenvalue(const DilationShift& op, long degree) {
    const Rational arg = op.argument(degree);
    if (is_integer(arg)) {
        const long v = numerator_of(arg).convert_to<long>();
        switch (op.kind) {
        case OpKind::recip_gamma:
            if (v <= 0) return Eigenvalue::exact_value({});
            return Eigenvalue::exact_value(Rational(1) / Rational(factorial(static_cast<unsigned>(v - 1))));
        case OpKind::zeta:
            if (v == 1) return Eigenvalue::pole();
            if (auto e = zeta_exact(v)) return Eigenvalue::exact_value(*e);
            break;
        case OpKind::beta:
            if (auto e = beta_exact(v)) return Eigenvalue::exact_value(*e);
            break;
        }
    }
    const double s = to_double(arg);
    if (op.kind == OpKind::recip_gamma) {
        const Complex g = recip_gamma(s);
        return {Eigenvalue::Kind::numeric, {}, g, 1e-12 * std::max(1.0, std::abs(g))};
    }
    const EvalResult r = op.kind == OpKind::zeta ? zeta_em(s) : dirichlet_beta(s);
    return {Eigenvalue::Kind::numeric, {}, r.value, r.abs_error_estimate};
}

inline Eigenvalue eigenvalue(const OperatorSpec& spec, long degree) {
    Eigenvalue main = eigenvalue(spec.op, degree);
    if (!spec.gamma_shift) return main;
    const Eigenvalue g = eigenvalue(DilationShift{OpKind::recip_gamma, *spec.gamma_shift}, degree);
    if (main.kind == Eigenvalue::Kind::pole) {
        const bool annihilated = g.kind == Eigenvalue::Kind::exact && g.exact.is_zero();
        if (!annihilated) return main;
        // zeta(s)/Gamma(1 - s) is entire; at s = 1 it equals the residue of
        // 1/(e^{-t} - 1) at t = 0, which is -1.
        if (spec.op.shift + *spec.gamma_shift == 1) return Eigenvalue::exact_value(-1);
        throw Error(Errc::unsupported, "pole times zero with uncoupled shifts has no defined value");
    }
    if (main.kind == Eigenvalue::Kind::exact && g.kind == Eigenvalue::Kind::exact)
        return Eigenvalue::exact_value(main.exact * g.exact);
    const Complex a = main.kind == Eigenvalue::Kind::exact ? Complex(main.exact.to_double()) : main.numeric;
    const Complex b = g.kind == Eigenvalue::Kind::exact ? Complex(g.exact.to_double()) : g.numeric;
    return {Eigenvalue::Kind::numeric, {}, a * b, main.abs_error * std::abs(b) + g.abs_error * std::abs(a)};
}

// ---------------------------------------------------------------------------
// Application

/// c * x^power where c could not be kept exact.
struct NumericTerm {
    int power = 0;
    Complex coefficient;
    double abs_error = 0.0;
};

/// coefficient * sum_n chi(n) trig(n * frequency * x) / n^exponent.
struct SeriesTerm {
    Rational coefficient = 1;
    TrigSeries series;
    long frequency = 1;
};

struct OpResult {
    Expression expr;
    std::vector<NumericTerm> numeric_terms;
    /// Degrees n whose eigenvalue sits on the zeta pole (a - n = 1).
    std::vector<long> pole_terms;
    std::vector<SeriesTerm> series_result;
};

inline OpResult apply_operator(const OperatorSpec& spec, const Expression& expr, bool allow_pole = false) {
    OpResult out;
    auto apply_term = [&](long degree, const PiPolynomial& coefficient) {
        const Eigenvalue ev = eigenvalue(spec, degree);
        switch (ev.kind) {
        case Eigenvalue::Kind::pole:
            if (!allow_pole) throw PoleHitError(degree);
            out.pole_terms.push_back(degree);
            return;
        case Eigenvalue::Kind::exact:
            if (degree >= 0) {
                out.expr.poly += PiXPolynomial::monomial(static_cast<unsigned>(degree), coefficient * ev.exact);
            } else {
                out.expr.add_singular({coefficient * ev.exact, static_cast<int>(degree)});
            }
            return;
        case Eigenvalue::Kind::numeric: {
            const double c = coefficient.to_double();
            out.numeric_terms.push_back({static_cast<int>(degree), c * ev.numeric, std::abs(c) * ev.abs_error});
            return;
        }
        }
    };
    for (int n = 0; n <= expr.poly.degree(); ++n)
        if (!expr.poly.coeff(n).is_zero()) apply_term(n, expr.poly.coeff(n));
    for (const auto& s : expr.singular_terms) apply_term(s.power, s.coefficient);

    for (const auto& t : expr.trig_atoms) {
        if (spec.op.kind == OpKind::recip_gamma || spec.gamma_shift)
            throw Error(Errc::unsupported, "1/Gamma(b + iD) has no series action on trigonometric atoms");
        if (!is_integer(spec.op.shift))
            throw Error(Errc::unsupported, "series action needs an integer shift");
        const TrigSeries series{t.parity, numerator_of(spec.op.shift).convert_to<int>(),
                                spec.op.kind == OpKind::zeta ? Character::trivial : Character::beta};
        out.series_result.push_back({t.coefficient, series, t.frequency});
    }
    return out;
}

inline OpResult apply_operator(const DilationShift& op, const Expression& expr, bool allow_pole = false) {
    return apply_operator(OperatorSpec{op, std::nullopt}, expr, allow_pole);
}

/// x^n -> x^n / Gamma(b + n); terms with b + n a nonpositive integer vanish exactly.
inline Expression apply_recip_gamma_op(const Rational& b, const Expression& expr) {
    if (!is_integer(b)) throw Error(Errc::unsupported, "exact 1/Gamma action needs an integer shift");
    if (!expr.trig_atoms.empty())
        throw Error(Errc::unsupported, "1/Gamma(b + iD) acts on monomials only");
    auto r = apply_operator(DilationShift{OpKind::recip_gamma, b}, expr);
    return std::move(r.expr);
}

// ---------------------------------------------------------------------------
// Parity anomaly

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }
inline Parity parity_of(Trig t) { return t == Trig::sin ? Parity::odd : Parity::even; }

struct AnomalyTerm {
    int degree = 0;
    PiPolynomial coefficient;

    PiXPolynomial as_poly() const { return PiXPolynomial::monomial(static_cast<unsigned>(degree), coefficient); }
};

/// The single monomial of poly whose x-parity contradicts expected.
inline std::optional<AnomalyTerm> parity_anomaly(const PiXPolynomial& poly, Parity expected) {
    std::optional<AnomalyTerm> found;
    for (int j = 0; j <= poly.degree(); ++j) {
        if (poly.coeff(j).is_zero()) continue;
        const bool odd = j % 2 == 1;
        if (odd == (expected == Parity::odd)) continue;
        if (found)
            throw Error(Errc::multiple_anomalies, "degrees " + std::to_string(found->degree) + " and " +
                                                      std::to_string(j) + " both violate " + parity_name(expected) +
                                                      " parity");
        found = AnomalyTerm{j, poly.coeff(j)};
    }
    return found;
}

/// Polynomial Fourier closed form of op(a - iD) trig(x), when one exists:
/// the Clausen forms for zeta with a >= 1 and matching parity.
inline std::optional<PiXPolynomial> polynomial_closed_form(const OperatorSpec& spec, Trig trig) {
    if (spec.op.kind != OpKind::zeta || spec.gamma_shift || !is_integer(spec.op.shift)) return std::nullopt;
    const long a = numerator_of(spec.op.shift).convert_to<long>();
    if (a < 1) return std::nullopt;
    if (trig == Trig::sin && a % 2 == 1) return clausen_closed_form(Trig::sin, static_cast<unsigned>((a + 1) / 2));
    if (trig == Trig::cos && a % 2 == 0) return clausen_closed_form(Trig::cos, static_cast<unsigned>(a / 2));
    return std::nullopt;
}

/// Principal part at x = 0 of the Abel sum of zeta(-p - iD) trig(x), p >= 0.
/// From sum n^p e^{inx} = (-i d/dx)^p 1/(e^{-ix} - 1) with principal part
/// i/x, the singular term is i^{p+1} p! / x^{p+1}; the parity-matched part
/// (sin: p even, cos: p odd) survives.
inline std::optional<SingularTerm> abel_singular_part(const OperatorSpec& spec, Trig trig) {
    if (spec.op.kind != OpKind::zeta || spec.gamma_shift || !is_integer(spec.op.shift)) return std::nullopt;
    const long a = numerator_of(spec.op.shift).convert_to<long>();
    if (a > 0) return std::nullopt;
    const long p = -a;
    const bool matches = trig == Trig::sin ? p % 2 == 0 : p % 2 == 1;
    if (!matches) return std::nullopt;
    Rational c(factorial(static_cast<unsigned>(p)));
    const long quarter = trig == Trig::sin ? p / 2 : (p + 1) / 2;
    if (quarter % 2 == 1) c = -c;
    return SingularTerm{PiPolynomial(c), static_cast<int>(-(p + 1))};
}

// ---------------------------------------------------------------------------
// Term-by-term flow

struct TaylorFlow {
    PiXPolynomial poly;
    /// Highest degree covered by the K Taylor terms.
    int max_degree = 0;
    /// Set when the closed form carries a parity-violating term that the
    /// term-by-term result cannot reproduce.
    bool anomaly_missing = false;
    std::optional<AnomalyTerm> anomaly;
    /// Set when the closed form is singular at 0; term-by-term application
    /// drops exactly this term.
    std::optional<SingularTerm> singular_removed;
};

/// Taylor coefficient (-1)^j / n! of sin (n = 2j+1) or cos (n = 2j).
inline Rational trig_taylor_coefficient(Trig trig, unsigned j) {
    const unsigned n = trig == Trig::sin ? 2 * j + 1 : 2 * j;
    Rational c = Rational(1) / Rational(factorial(n));
    return j % 2 == 0 ? c : Rational(-c);
}

inline unsigned trig_taylor_degree(Trig trig, unsigned j) { return trig == Trig::sin ? 2 * j + 1 : 2 * j; }

/// Expands trig(x) to K Taylor terms and applies the operator to each one
/// with exact eigenvalues.
inline TaylorFlow taylor_flow(const OperatorSpec& spec, Trig trig, unsigned K) {
    if (K < 4) throw Error(Errc::invalid_argument, "taylor_flow needs K >= 4");
    TaylorFlow out;
    for (unsigned j = 0; j < K; ++j) {
        const unsigned n = trig_taylor_degree(trig, j);
        const Eigenvalue ev = eigenvalue(spec, n);
        if (ev.kind == Eigenvalue::Kind::pole) throw PoleHitError(n);
        if (ev.kind != Eigenvalue::Kind::exact)
            throw Error(Errc::unsupported, spec.str() + " has no exact eigenvalue on x^" + std::to_string(n));
        out.poly += PiXPolynomial::monomial(n, ev.exact * trig_taylor_coefficient(trig, j));
        out.max_degree = static_cast<int>(n);
    }
    if (const auto closed = polynomial_closed_form(spec, trig)) {
        out.anomaly = parity_anomaly(*closed, parity_of(trig));
        out.anomaly_missing = out.anomaly.has_value();
    }
    out.singular_removed = abel_singular_part(spec, trig);
    return out;
}

inline TaylorFlow taylor_flow(const DilationShift& op, Trig trig, unsigned K) {
    return taylor_flow(OperatorSpec{op, std::nullopt}, trig, K);
}

// ---------------------------------------------------------------------------
// Coefficient matching

struct ExtractionProblem {
    OperatorSpec op;
    Trig trig = Trig::sin;
    /// Exact right side (or its exact Taylor polynomial), singular part removed.
    PiXPolynomial rhs;
    unsigned terms = 6;
};

struct ExtractedValue {
    OpKind function = OpKind::zeta;
    long argument = 0;
    PiPolynomial value;
    std::optional<PiPolynomial> reference;
    bool matched = false;
};

/// Treats op(a - n) on each Taylor degree n as an unknown, equates the
/// term-by-term coefficients with the right side (after removing its parity
/// anomaly), and solves. Each value is compared with the independent exact
/// value (Bernoulli / Euler route) when one exists.
inline std::vector<ExtractedValue> extract_special_values(const ExtractionProblem& problem) {
    const auto& spec = problem.op;
    if (spec.op.kind == OpKind::recip_gamma) throw Error(Errc::unsupported, "nothing to extract from 1/Gamma alone");
    if (!is_integer(spec.op.shift)) throw Error(Errc::unsupported, "extraction needs an integer shift");

    PiXPolynomial rhs = problem.rhs;
    std::optional<AnomalyTerm> anomaly;
    try {
        anomaly = parity_anomaly(rhs, parity_of(problem.trig));
    } catch (const Error& e) {
        throw Error(Errc::inconsistent_system, e.what());
    }
    if (anomaly) {
        // The only admissible anomaly is the pole term, a - n = 1.
        const bool at_pole = spec.op.kind == OpKind::zeta && spec.op.argument(anomaly->degree) == 1;
        if (!at_pole)
            throw Error(Errc::inconsistent_system,
                        "parity-violating term at x^" + std::to_string(anomaly->degree) + " is not the pole term");
        rhs -= anomaly->as_poly();
    }

    std::vector<ExtractedValue> out;
    for (unsigned j = 0; j < problem.terms; ++j) {
        const unsigned n = trig_taylor_degree(problem.trig, j);
        Rational factor = trig_taylor_coefficient(problem.trig, j);
        if (spec.gamma_shift) {
            const auto g = eigenvalue(DilationShift{OpKind::recip_gamma, *spec.gamma_shift}, n);
            factor *= g.exact.coeff(0);
        }
        const PiPolynomial target = rhs.coeff(n);
        if (factor == 0) {
            if (!target.is_zero())
                throw Error(Errc::inconsistent_system, "nonzero right side on an annihilated degree " + std::to_string(n));
            continue;
        }
        ExtractedValue v;
        v.function = spec.op.kind;
        v.argument = numerator_of(spec.op.argument(n)).convert_to<long>();
        v.value = target * (Rational(1) / factor);
        if (spec.op.kind == OpKind::zeta && v.argument == 1)
            throw Error(Errc::inconsistent_system, "unknown sits on the zeta pole");
        v.reference = spec.op.kind == OpKind::zeta ? zeta_exact(v.argument) : beta_exact(v.argument);
        v.matched = v.reference && *v.reference == v.value;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace opzeta
