#pragma once

// Trigonometric Dirichlet series sum chi(n) trig(n x) / n^s: partial sums with
// rigorous tail bounds for the convergent cases, and Abel summation
// (closed forms plus r -> 1 extrapolation) for the divergent ones.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"
#include "opzeta/specfun.hpp"

namespace opzeta {

/// trivial: n = 1, 2, 3, ...; beta: n = 2k+1 with sign (-1)^k (character mod 4).
enum class Character { trivial, beta };

inline const char* character_name(Character c) { return c == Character::trivial ? "trivial" : "beta"; }

struct TrigSeries {
    Trig parity = Trig::sin;
    /// Terms carry weight n^-exponent.
    int exponent = 1;
    Character character = Character::trivial;

    friend bool operator==(const TrigSeries&, const TrigSeries&) = default;

    std::string str() const {
        std::string idx = character == Character::trivial ? "n" : "(2k+1)";
        std::string sign = character == Character::trivial ? "" : "(-1)^k ";
        std::string w = exponent == 0 ? "" : (exponent == 1 ? "/" + idx : "/" + idx + "^" + std::to_string(exponent));
        if (exponent < 0) w = " * " + idx + (exponent == -1 ? "" : "^" + std::to_string(-exponent));
        return "sum " + sign + trig_name(parity) + "(" + idx + "x)" + w;
    }
};

enum class SumMethod { partial_sum, abel_closed_form, abel_extrapolated };

inline const char* method_name(SumMethod m) {
    switch (m) {
    case SumMethod::partial_sum: return "partial_sum";
    case SumMethod::abel_closed_form: return "abel_closed_form";
    case SumMethod::abel_extrapolated: return "abel_extrapolated";
    }
    return "?";
}

struct SummedValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    SumMethod method = SumMethod::partial_sum;
};

namespace detail {

inline double sin_half_abs(double x) { return std::abs(std::sin(0.5 * x)); }

inline bool near_multiple_of_two_pi(double x) { return sin_half_abs(x) < 1e-14; }

inline double index_of(Character c, long k) { return c == Character::trivial ? double(k) : double(2 * k + 1); }

inline double unit_power(double n, int s) {
    double w = 1.0;
    const double inv = 1.0 / n;
    for (int i = 0; i < s; ++i) w *= inv;
    return w;
}

}  // namespace detail

/// Upper bound on |sum of terms past the first N|, for exponent >= 1.
inline double tail_bound(const TrigSeries& series, double x, long N) {
    const int s = series.exponent;
    if (s >= 2) {
        if (series.character == Character::trivial) return std::pow(double(N), 1 - s) / (s - 1);
        return std::pow(2.0 * N - 1.0, 1 - s) / (2.0 * (s - 1));
    }
    // Summation by parts: partial sums of the unimodular factors are bounded
    // by 1/|sin(x/2)| (trivial) or 1/|cos x| (beta), and 1/n decreases.
    if (series.character == Character::trivial) return 1.0 / ((N + 1.0) * detail::sin_half_abs(x));
    return 1.0 / ((2.0 * N + 1.0) * std::abs(std::cos(x)));
}

/// Sum of the first N terms with a rigorous tail bound as the error estimate.
inline SummedValue partial_sum(const TrigSeries& series, double x, long N) {
    if (series.exponent <= 0)
        throw Error(Errc::diverges, series.str() + " diverges; use abel_value");
    if (N < 1) throw Error(Errc::invalid_argument, "partial_sum needs N >= 1");
    if (series.exponent == 1) {
        const bool endpoint = series.character == Character::trivial ? detail::near_multiple_of_two_pi(x)
                                                                      : std::abs(std::cos(x)) < 1e-14;
        if (endpoint) throw Error(Errc::endpoint_conditional, "conditionally convergent series at a jump point");
    }
    const bool odd = series.character == Character::beta;
    const double step = odd ? 2.0 * x : x;
    const Complex rot = std::polar(1.0, step);
    long double acc = 0.0L;
    long double comp = 0.0L;
    Complex z;
    for (long k = odd ? 0 : 1; k < (odd ? N : N + 1); ++k) {
        const double n = detail::index_of(series.character, k);
        // Re-seed the rotation periodically so drift stays at rounding level.
        if (k % 1024 == 0 || k == (odd ? 0 : 1)) z = std::polar(1.0, n * x);
        const double trig = series.parity == Trig::sin ? z.imag() : z.real();
        double term = trig * detail::unit_power(n, series.exponent);
        if (odd && (k % 2 == 1)) term = -term;
        // Kahan summation.
        const long double y = term - comp;
        const long double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        z *= rot;
    }
    return {static_cast<double>(acc), tail_bound(series, x, N), SumMethod::partial_sum};
}

/// Smallest N whose tail bound is at most tol.
inline long terms_for_tolerance(const TrigSeries& series, double x, double tol) {
    if (series.exponent <= 0) throw Error(Errc::diverges, series.str() + " diverges");
    if (!std::isfinite(tail_bound(series, x, 1))) partial_sum(series, x, 1);  // raises the endpoint error
    long lo = 1;
    long hi = 1;
    while (tail_bound(series, x, hi) > tol) {
        hi *= 2;
        if (hi > (1L << 40)) throw Error(Errc::invalid_argument, "tolerance unreachable by partial sums");
    }
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (tail_bound(series, x, mid) <= tol) hi = mid;
        else lo = mid + 1;
    }
    return hi;
}

/// sum_{n>=1} e^{inx} in the Abel sense: 1/(e^{-ix} - 1).
inline Complex geometric_abel(double x) {
    if (detail::near_multiple_of_two_pi(x))
        throw Error(Errc::singular_at_endpoint, "geometric series has a pole at x = 0 mod 2 pi");
    const double sh = std::sin(0.5 * x);
    // e^{-ix} - 1 = -2 sin^2(x/2) - i sin x
    return 1.0 / Complex(-2.0 * sh * sh, -std::sin(x));
}

// ---------------------------------------------------------------------------
// Abel closed-form registry

struct AbelClosedForm {
    TrigSeries series;
    std::string formula;
    std::function<double(double)> value;
    std::function<bool(double)> in_domain;
    std::string domain;
};

inline const std::vector<AbelClosedForm>& abel_closed_forms() {
    static const std::vector<AbelClosedForm> table = [] {
        auto trivial_domain = [](double x) { return !detail::near_multiple_of_two_pi(x); };
        auto cos_nonzero = [](double x) { return std::abs(std::cos(x)) > 1e-14; };
        std::vector<AbelClosedForm> t;
        t.push_back({{Trig::sin, 0, Character::trivial},
                     "sin x/(2(1 - cos x))",
                     [](double x) { return 0.5 / std::tan(0.5 * x); },
                     trivial_domain,
                     "x != 0 mod 2pi"});
        t.push_back({{Trig::cos, -1, Character::trivial},
                     "-1/(2(1 - cos x))",
                     [](double x) {
                         const double sh = std::sin(0.5 * x);
                         return -0.25 / (sh * sh);
                     },
                     trivial_domain,
                     "x != 0 mod 2pi"});
        t.push_back({{Trig::sin, 0, Character::beta}, "0", [](double) { return 0.0; }, cos_nonzero, "cos x != 0"});
        t.push_back({{Trig::cos, 0, Character::beta},
                     "1/(2 cos x)",
                     [](double x) { return 0.5 / std::cos(x); },
                     cos_nonzero,
                     "cos x != 0"});
        // Imaginary part of arctan(e^{ix}); equals the arctan-difference form
        // (i/2)[atan(e^{-ix}) - atan(e^{ix})] on |x| < pi/2.
        t.push_back({{Trig::sin, 1, Character::beta},
                     "(1/2) log(sec x + tan x)",
                     [](double x) { return 0.5 * std::log(1.0 / std::cos(x) + std::tan(x)); },
                     [](double x) { return std::abs(x) < 0.5 * std::numbers::pi; },
                     "|x| < pi/2"});
        return t;
    }();
    return table;
}

inline const AbelClosedForm* find_abel_closed_form(const TrigSeries& series) {
    for (const auto& e : abel_closed_forms())
        if (e.series == series) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Abel extrapolation

/// {1 - 2^-k : k = 4..14}.
inline std::vector<double> default_r_grid() {
    std::vector<double> g;
    for (int k = 4; k <= 14; ++k) g.push_back(1.0 - std::ldexp(1.0, -k));
    return g;
}

inline constexpr int kRichardsonOrder = 4;
inline constexpr double kExtrapolationTolerance = 1e-6;

namespace detail {

// Integer polynomial in z, low degree first.
using IntPoly = std::vector<BigInt>;

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline IntPoly poly_derivative(const IntPoly& a) {
    if (a.size() <= 1) return {0};
    IntPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    return r;
}

inline IntPoly poly_add(IntPoly a, const IntPoly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

/// (z d/dz)^p applied to the generating function z/Q(z), returned as
/// numerator P with sum chi(n) n^p z^n = P(z) / Q(z)^{p+1}.
struct RationalGenerating {
    IntPoly numerator;
    IntPoly base;
    int power;
};

inline RationalGenerating weighted_generating(Character c, int p) {
    RationalGenerating g;
    g.numerator = {0, 1};
    g.base = c == Character::trivial ? IntPoly{1, -1} : IntPoly{1, 0, 1};
    g.power = 1;
    const IntPoly dbase = poly_derivative(g.base);
    for (int i = 0; i < p; ++i) {
        // z (P' Q - k P Q') / Q^{k+1}
        IntPoly lhs = poly_mul(poly_derivative(g.numerator), g.base);
        IntPoly rhs = poly_mul(g.numerator, dbase);
        for (auto& v : rhs) v *= -g.power;
        IntPoly num = poly_add(lhs, rhs);
        num.insert(num.begin(), BigInt(0));
        g.numerator = std::move(num);
        ++g.power;
    }
    return g;
}

inline Complex eval_int_poly(const IntPoly& p, Complex z) {
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + Complex(static_cast<double>(*it), 0.0);
    return acc;
}

// F(r) = sum chi(n) r^n n^-s e^{inx}
inline Complex abel_weighted_sum(const TrigSeries& series, double x, double r) {
    const Complex z = std::polar(r, x);
    if (series.exponent <= 0) {
        const auto g = weighted_generating(series.character, -series.exponent);
        return eval_int_poly(g.numerator, z) / std::pow(eval_int_poly(g.base, z), g.power);
    }
    // Convergent weight: direct geometric-rate summation.
    Complex acc = 0.0;
    const bool odd = series.character == Character::beta;
    for (long k = odd ? 0 : 1;; ++k) {
        const double n = index_of(series.character, k);
        const double mag = std::pow(r, n) * unit_power(n, series.exponent);
        if (mag < 1e-18) break;
        Complex term = std::polar(mag, n * x);
        if (odd && k % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

struct Extrapolated {
    double value;
    double correction;
};

// Neville tableau in h = 1 - r, extrapolated to h = 0.
inline Extrapolated neville_to_zero(std::span<const double> h, std::span<const double> f) {
    std::vector<double> t(f.begin(), f.end());
    double prev = t.back();
    double last_corr = 0.0;
    const std::size_t n = t.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            t[i] = (h[i - level] * t[i] - h[i] * t[i - 1]) / (h[i - level] - h[i]);
            if (i == level) break;
        }
        last_corr = std::abs(t[n - 1] - prev);
        prev = t[n - 1];
    }
    return {t[n - 1], last_corr};
}

}  // namespace detail

/// Evaluates sum chi(n) r^n n^-s trig(nx) on the r grid and Richardson
/// extrapolates to r = 1 with polynomial order kRichardsonOrder in (1 - r).
inline SummedValue abel_extrapolate(const TrigSeries& series, double x, std::span<const double> r_grid) {
    if (r_grid.size() < 4) throw Error(Errc::invalid_argument, "r_grid needs at least 4 points");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0 && r_grid[i] < 1.0)) throw Error(Errc::invalid_argument, "r_grid points must lie in (0, 1)");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw Error(Errc::invalid_argument, "r_grid must be strictly increasing");
    }
    std::vector<double> h;
    std::vector<double> f;
    for (double r : r_grid) {
        const Complex v = detail::abel_weighted_sum(series, x, r);
        h.push_back(1.0 - r);
        f.push_back(series.parity == Trig::sin ? v.imag() : v.real());
    }
    const std::size_t window = std::min<std::size_t>(kRichardsonOrder + 1, h.size());
    const std::size_t start = h.size() - window;
    const auto last = detail::neville_to_zero(std::span(h).subspan(start, window), std::span(f).subspan(start, window));
    double estimate = last.correction;
    if (start > 0) {
        const auto before =
            detail::neville_to_zero(std::span(h).subspan(start - 1, window), std::span(f).subspan(start - 1, window));
        estimate = std::max(estimate, std::abs(last.value - before.value));
    }
    if (!(estimate <= kExtrapolationTolerance))
        throw Error(Errc::not_converged, "Abel extrapolation of " + series.str() + " did not settle");
    return {last.value, estimate, SumMethod::abel_extrapolated};
}

inline SummedValue abel_extrapolate(const TrigSeries& series, double x) {
    const auto grid = default_r_grid();
    return abel_extrapolate(series, x, grid);
}

/// Abel sum: closed form when the series is registered, extrapolation otherwise.
inline SummedValue abel_value(const TrigSeries& series, double x) {
    if (const auto* entry = find_abel_closed_form(series)) {
        if (!entry->in_domain(x))
            throw Error(Errc::outside_domain, series.str() + " closed form needs " + entry->domain);
        const double v = entry->value(x);
        return {v, 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v)), SumMethod::abel_closed_form};
    }
    if (series.character == Character::trivial && detail::near_multiple_of_two_pi(x))
        throw Error(Errc::outside_domain, "Abel sums of the trivial character are singular at x = 0 mod 2pi");
    try {
        return abel_extrapolate(series, x);
    } catch (const Error& e) {
        if (e.code() == Errc::not_converged) throw Error(Errc::no_closed_form, e.what());
        throw;
    }
}

}  // namespace opzeta
