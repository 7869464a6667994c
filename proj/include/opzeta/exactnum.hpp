#pragma once

// Exact arithmetic substrate: big rationals, Bernoulli and Euler numbers,
// and polynomials over Q and Q[pi].
//
// pi is kept symbolic everywhere; it only becomes a number inside the
// evaluation helpers at the bottom of this header.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "opzeta/error.hpp"

namespace opzeta {

using BigInt = boost::multiprecision::cpp_int;
/// Always normalized: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator_of(r);
    if (denominator_of(r) != 1) os << '/' << denominator_of(r);
    return os.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt b = 1;
    for (unsigned j = 1; j <= k; ++j) {
        b *= n - k + j;
        b /= j;
    }
    return b;
}

namespace detail {

// Grow-only memo tables. Entries are appended under the lock and copied out,
// so readers never observe a vector that is being resized.
class BernoulliTable {
public:
    Rational get(unsigned n) {
        std::lock_guard lock(mu_);
        while (values_.size() <= n) extend();
        return values_[n];
    }

private:
    // sum_{k=0}^{m} C(m+1, k) B_k = 0, which fixes B_1 = -1/2.
    void extend() {
        const auto m = static_cast<unsigned>(values_.size());
        if (m == 0) {
            values_.emplace_back(1);
            return;
        }
        if (m > 1 && m % 2 == 1) {
            values_.emplace_back(0);
            return;
        }
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * values_[k];
        values_.push_back(-acc / Rational(m + 1));
    }

    std::mutex mu_;
    std::vector<Rational> values_;
};

class EulerTable {
public:
    BigInt get(unsigned n) {
        std::lock_guard lock(mu_);
        while (values_.size() <= n) extend();
        return values_[n];
    }

private:
    // sech generating function: sum_{k even} C(n, k) E_k = 0 for even n > 0.
    void extend() {
        const auto n = static_cast<unsigned>(values_.size());
        if (n == 0) {
            values_.emplace_back(1);
            return;
        }
        if (n % 2 == 1) {
            values_.emplace_back(0);
            return;
        }
        BigInt acc = 0;
        for (unsigned k = 0; k < n; k += 2) acc += binomial(n, k) * values_[k];
        values_.push_back(-acc);
    }

    std::mutex mu_;
    std::vector<BigInt> values_;
};

inline BernoulliTable& bernoulli_table() {
    static BernoulliTable table;
    return table;
}

inline EulerTable& euler_table() {
    static EulerTable table;
    return table;
}

}  // namespace detail

/// Exact B_n with B_1 = -1/2, i.e. the coefficients of t/(e^t - 1).
/// The +1/2 convention is deliberately not offered.
inline Rational bernoulli_number(unsigned n) { return detail::bernoulli_table().get(n); }

/// Exact E_n from sech t = sum E_n t^n / n!; every odd index is zero.
inline BigInt euler_number(unsigned n) { return detail::euler_table().get(n); }

/// Polynomial in pi with rational coefficients; coeffs[k] multiplies pi^k.
class PiPolynomial {
public:
    PiPolynomial() = default;
    PiPolynomial(Rational c) : coeffs_{std::move(c)} { trim(); }  // NOLINT: implicit by intent
    PiPolynomial(int c) : PiPolynomial(Rational(c)) {}            // NOLINT
    explicit PiPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static PiPolynomial pi_power(unsigned k, Rational c = 1) {
        std::vector<Rational> v(k + 1);
        v[k] = std::move(c);
        return PiPolynomial(std::move(v));
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_rational() const { return coeffs_.size() <= 1; }

    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

    PiPolynomial& operator+=(const PiPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    PiPolynomial& operator-=(const PiPolynomial& o) { return *this += -o; }
    PiPolynomial& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend PiPolynomial operator-(PiPolynomial p) {
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }
    friend PiPolynomial operator+(PiPolynomial a, const PiPolynomial& b) { return a += b; }
    friend PiPolynomial operator-(PiPolynomial a, const PiPolynomial& b) { return a -= b; }
    friend PiPolynomial operator*(PiPolynomial a, const Rational& s) { return a *= s; }
    friend PiPolynomial operator*(const Rational& s, PiPolynomial a) { return a *= s; }
    friend PiPolynomial operator*(const PiPolynomial& a, const PiPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PiPolynomial(std::move(v));
    }
    friend bool operator==(const PiPolynomial& a, const PiPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    template <class Real>
    Real evaluate(const Real& pi) const {
        Real acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * pi + Real(numerator_of(*it)) / Real(denominator_of(*it));
        return acc;
    }

    double to_double() const { return evaluate<long double>(boost::math::constants::pi<long double>()); }

    std::string str() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

namespace detail {

// Renders c*sym^k terms, highest power first: "pi^2/6 - 1/2*pi".
inline std::string render_terms(const std::vector<std::pair<Rational, int>>& terms, const std::string& sym) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, k] : terms) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::string power = k == 0 ? "" : (k == 1 ? sym : sym + "^" + std::to_string(k));
        if (k == 0) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << power;
        } else if (numerator_of(mag) == 1) {
            os << power << '/' << denominator_of(mag);
        } else {
            os << to_string(mag) << '*' << power;
        }
    }
    return os.str();
}

}  // namespace detail

inline std::string PiPolynomial::str() const {
    std::vector<std::pair<Rational, int>> terms;
    for (int k = degree(); k >= 0; --k)
        if (coeffs_[k] != 0) terms.emplace_back(coeffs_[k], k);
    return detail::render_terms(terms, "pi");
}

/// Polynomial in x whose coefficients live in Q[pi]; coeffs[j] multiplies x^j.
class PiXPolynomial {
public:
    PiXPolynomial() = default;
    PiXPolynomial(PiPolynomial c) : coeffs_{std::move(c)} { trim(); }  // NOLINT
    explicit PiXPolynomial(std::vector<PiPolynomial> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static PiXPolynomial monomial(unsigned degree, PiPolynomial c) {
        std::vector<PiPolynomial> v(degree + 1);
        v[degree] = std::move(c);
        return PiXPolynomial(std::move(v));
    }
    static PiXPolynomial x() { return monomial(1, 1); }

    const std::vector<PiPolynomial>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    PiPolynomial coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : PiPolynomial{}; }

    void set_coeff(std::size_t j, PiPolynomial c) {
        if (j >= coeffs_.size()) coeffs_.resize(j + 1);
        coeffs_[j] = std::move(c);
        trim();
    }

    /// Drops every term of degree > max_degree.
    PiXPolynomial truncated(int max_degree) const {
        if (max_degree < 0) return {};
        auto n = std::min<std::size_t>(coeffs_.size(), static_cast<std::size_t>(max_degree) + 1);
        return PiXPolynomial(std::vector<PiPolynomial>(coeffs_.begin(), coeffs_.begin() + n));
    }

    /// p(c*x) for rational c.
    PiXPolynomial rescaled(const Rational& c) const {
        auto out = *this;
        Rational f = 1;
        for (auto& coef : out.coeffs_) {
            coef *= f;
            f *= c;
        }
        out.trim();
        return out;
    }

    PiXPolynomial& operator+=(const PiXPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    PiXPolynomial& operator-=(const PiXPolynomial& o) { return *this += -o; }
    PiXPolynomial& operator*=(const PiPolynomial& s) {
        for (auto& c : coeffs_) c = c * s;
        trim();
        return *this;
    }

    friend PiXPolynomial operator-(PiXPolynomial p) {
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }
    friend PiXPolynomial operator+(PiXPolynomial a, const PiXPolynomial& b) { return a += b; }
    friend PiXPolynomial operator-(PiXPolynomial a, const PiXPolynomial& b) { return a -= b; }
    friend PiXPolynomial operator*(PiXPolynomial a, const PiPolynomial& s) { return a *= s; }
    friend PiXPolynomial operator*(const PiXPolynomial& a, const PiXPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<PiPolynomial> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return PiXPolynomial(std::move(v));
    }
    friend bool operator==(const PiXPolynomial& a, const PiXPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    template <class Real>
    Real evaluate(const Real& x, const Real& pi) const {
        Real acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->evaluate(pi);
        return acc;
    }

    /// Fast double-precision evaluation (long double internally).
    double operator()(double x) const {
        return static_cast<double>(
            evaluate<long double>(static_cast<long double>(x), boost::math::constants::pi<long double>()));
    }

    std::string str() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<PiPolynomial> coeffs_;
};

inline std::string PiXPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = degree(); j >= 0; --j) {
        PiPolynomial c = coeffs_[j];
        if (c.is_zero()) continue;
        const auto nonzero = std::count_if(c.coeffs().begin(), c.coeffs().end(), [](const Rational& r) { return r != 0; });
        const bool single = nonzero == 1;
        const bool negative = single && c.coeffs().back() < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const std::string cs = single ? c.str() : "(" + c.str() + ")";
        if (j == 0) {
            os << cs;
        } else {
            const std::string xs = j == 1 ? "x" : "x^" + std::to_string(j);
            os << (cs == "1" ? xs : cs + "*" + xs);
        }
    }
    return os.str();
}

/// Exact B_m(x) = sum_k C(m, k) B_k x^(m-k); pure rational coefficients.
inline PiXPolynomial bernoulli_polynomial(unsigned m) {
    std::vector<PiPolynomial> v(m + 1);
    for (unsigned k = 0; k <= m; ++k) v[m - k] = Rational(binomial(m, k)) * bernoulli_number(k);
    return PiXPolynomial(std::move(v));
}

inline constexpr unsigned kDefaultPiDigits = 30;
inline constexpr unsigned kMaxPiDigits = 100;

using HighPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<kMaxPiDigits + 10>>;

/// pi rounded to the requested number of significant decimal digits.
inline HighPrecision pi_to_digits(unsigned pi_digits) {
    if (pi_digits < 15 || pi_digits > kMaxPiDigits)
        throw Error(Errc::invalid_argument, "pi_digits must lie in [15, " + std::to_string(kMaxPiDigits) + "]");
    auto pi = boost::math::constants::pi<HighPrecision>();
    return HighPrecision(pi.str(static_cast<std::streamsize>(pi_digits)));
}

/// Evaluates p at x with pi carried to pi_digits digits; the rational
/// coefficients are converted at the same working precision.
inline double pipoly_eval(const PiXPolynomial& p, double x, unsigned pi_digits = kDefaultPiDigits) {
    return p.evaluate<HighPrecision>(HighPrecision(x), pi_to_digits(pi_digits)).convert_to<double>();
}

}  // namespace opzeta
