#pragma once

// Truncated power series over Q. Used to expand the closed forms of the
// registry exactly (cot, sec and friends) without going through Bernoulli
// or Euler numbers.

#include <cstddef>
#include <vector>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"

namespace opzeta::ps {

/// coeffs[k] multiplies x^k; always exactly `order` entries.
struct Series {
    std::vector<Rational> coeffs;

    std::size_t order() const { return coeffs.size(); }
    Rational operator[](std::size_t k) const { return k < coeffs.size() ? coeffs[k] : Rational(0); }

    PiXPolynomial to_poly() const {
        std::vector<PiPolynomial> v;
        for (const auto& c : coeffs) v.emplace_back(c);
        return PiXPolynomial(std::move(v));
    }
};

inline Series sin_series(std::size_t order) {
    Series s{std::vector<Rational>(order)};
    for (std::size_t k = 1; k < order; k += 2) {
        Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
        s.coeffs[k] = (k / 2) % 2 == 0 ? c : Rational(-c);
    }
    return s;
}

inline Series cos_series(std::size_t order) {
    Series s{std::vector<Rational>(order)};
    for (std::size_t k = 0; k < order; k += 2) {
        Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
        s.coeffs[k] = (k / 2) % 2 == 0 ? c : Rational(-c);
    }
    return s;
}

/// a / b truncated to the shorter order; needs b[0] != 0.
inline Series divide(const Series& a, const Series& b) {
    if (b[0] == 0) throw Error(Errc::invalid_argument, "power series division by a series with zero constant term");
    const std::size_t n = std::min(a.order(), b.order());
    Series q{std::vector<Rational>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        Rational acc = a[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * q.coeffs[k - j];
        q.coeffs[k] = acc / b[0];
    }
    return q;
}

/// f(x) / x^k; the first k coefficients must vanish.
inline Series drop_leading(const Series& a, std::size_t k) {
    for (std::size_t j = 0; j < k && j < a.order(); ++j)
        if (a.coeffs[j] != 0) throw Error(Errc::invalid_argument, "series is not divisible by x^k");
    if (k >= a.order()) return {};
    return Series{std::vector<Rational>(a.coeffs.begin() + static_cast<std::ptrdiff_t>(k), a.coeffs.end())};
}

/// Antiderivative vanishing at 0.
inline Series integrate(const Series& a) {
    Series r{std::vector<Rational>(a.order() + 1)};
    for (std::size_t k = 0; k < a.order(); ++k) r.coeffs[k + 1] = a.coeffs[k] / Rational(k + 1);
    return r;
}

inline Series scaled(Series a, const Rational& c) {
    for (auto& v : a.coeffs) v *= c;
    return a;
}

inline Series plus_constant(Series a, const Rational& c) {
    if (a.coeffs.empty()) a.coeffs.emplace_back(0);
    a.coeffs[0] += c;
    return a;
}

}  // namespace opzeta::ps
