#pragma once

// Numeric special functions: zeta and Hurwitz zeta by Euler-Maclaurin,
// Dirichlet beta from Hurwitz differences, the entire function 1/Gamma,
// Hankel-contour quadratures for zeta and the Lerch sum, plus the exact
// values at integers and the Clausen closed forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"
#include "opzeta/quadrature.hpp"

namespace opzeta {

using Complex = std::complex<double>;

struct EvalResult {
    Complex value;
    double abs_error_estimate = 0.0;
    /// When set, value is meaningless.
    bool is_pole = false;
};

/// Raised outside the validated domain; still carries the best-effort value.
class PrecisionLossError : public Error {
public:
    PrecisionLossError(const std::string& what, EvalResult best)
        : Error(Errc::precision_loss, what), best_(best) {}
    const EvalResult& best_effort() const noexcept { return best_; }

private:
    EvalResult best_;
};

enum class Trig { sin, cos };

inline const char* trig_name(Trig t) { return t == Trig::sin ? "sin" : "cos"; }

// ---------------------------------------------------------------------------
// Exact values

/// zeta(-n) = (-1)^n B_{n+1}/(n+1). Also valid at n = 0 (gives -1/2) because
/// B_1 = -1/2; the trivial zeros come out as exact zeros for even n.
inline Rational zeta_neg_int(unsigned n) {
    Rational v = bernoulli_number(n + 1) / Rational(n + 1);
    return n % 2 == 0 ? v : Rational(-v);
}

/// zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!), kept in Q[pi].
inline PiPolynomial zeta_even_exact(unsigned m) {
    if (m == 0) return Rational(-1, 2);
    Rational c = bernoulli_number(2 * m) * Rational(BigInt(1) << (2 * m)) / Rational(2 * factorial(2 * m));
    if (m % 2 == 0) c = -c;
    return PiPolynomial::pi_power(2 * m, c);
}

/// Exact zeta(v) when one exists in Q[pi]: v <= 0 or v even and positive.
inline std::optional<PiPolynomial> zeta_exact(long v) {
    if (v <= 0) return PiPolynomial(zeta_neg_int(static_cast<unsigned>(-v)));
    if (v % 2 == 0) return zeta_even_exact(static_cast<unsigned>(v / 2));
    return std::nullopt;
}

/// beta(-n) = E_n / 2 (zero for odd n); beta(2m+1) = (-1)^m E_{2m} pi^{2m+1} / (4^{m+1} (2m)!).
inline std::optional<PiPolynomial> beta_exact(long v) {
    if (v <= 0) return PiPolynomial(Rational(euler_number(static_cast<unsigned>(-v)), 2));
    if (v % 2 == 1) {
        const auto m = static_cast<unsigned>((v - 1) / 2);
        Rational c = Rational(euler_number(2 * m)) / Rational((BigInt(1) << (2 * m + 2)) * factorial(2 * m));
        if (m % 2 == 1) c = -c;
        return PiPolynomial::pi_power(2 * m + 1, c);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Clausen closed forms

/// Right side of
///   sum cos(nx)/n^{2m}   = (-1)^{m-1} (2pi)^{2m}   / (2 (2m)!)   B_{2m}(x/2pi)
///   sum sin(nx)/n^{2m-1} = (-1)^m     (2pi)^{2m-1} / (2 (2m-1)!) B_{2m-1}(x/2pi)
/// valid for x in [0, 2pi].
inline PiXPolynomial clausen_closed_form(Trig parity, unsigned m) {
    if (m < 1) throw Error(Errc::invalid_argument, "clausen_closed_form needs m >= 1");
    const unsigned order = parity == Trig::cos ? 2 * m : 2 * m - 1;
    Rational prefactor = Rational(1) / Rational(2 * factorial(order));
    const bool negative = parity == Trig::cos ? (m - 1) % 2 == 1 : m % 2 == 1;
    if (negative) prefactor = -prefactor;
    const auto bern = bernoulli_polynomial(order);
    std::vector<PiPolynomial> out(order + 1);
    for (unsigned j = 0; j <= order; ++j) {
        // B(x / 2pi) contributes (2pi)^{-j}; the prefactor supplies (2pi)^{order}.
        const Rational c = bern.coeff(j).coeff(0) * prefactor * Rational(BigInt(1) << (order - j));
        out[j] = PiPolynomial::pi_power(order - j, c);
    }
    return PiXPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin machinery (extended working precision)

namespace detail {

inline constexpr unsigned kWorkDigits = 60;
using MpReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<kWorkDigits>>;
using MpComplex = boost::multiprecision::cpp_complex<kWorkDigits>;

inline MpReal mp_abs(const MpComplex& z) { return boost::multiprecision::abs(z); }

inline Complex to_complex(const MpComplex& z) {
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

inline MpReal to_mp(const Rational& r) { return MpReal(numerator_of(r)) / MpReal(denominator_of(r)); }

struct EmPieces {
    /// sum_{n<N} (n+a)^-s + q^-s/2 + Bernoulli tail, where q = N + a.
    MpComplex body;
    /// Truncation bound for the Bernoulli tail.
    MpReal truncation;
    /// Largest magnitude handled; scales the roundoff estimate.
    MpReal magnitude;
    MpReal q;
};

inline unsigned em_cutoff(const Complex& s) { return static_cast<unsigned>(std::max(40.0, std::ceil(std::abs(s)))); }

// Everything except the q^{1-s}/(s-1) term, which callers combine themselves
// so that differences of Hurwitz values stay finite at s = 1.
inline EmPieces em_pieces(const MpComplex& s, const MpReal& a, unsigned N) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    EmPieces out{MpComplex(0), MpReal(0), MpReal(0), MpReal(N) + a};
    for (unsigned n = 0; n < N; ++n) {
        const MpComplex term = exp(-s * MpComplex(log(MpReal(n) + a)));
        out.body += term;
        out.magnitude = std::max(out.magnitude, mp_abs(out.body));
    }
    const MpReal logq = log(out.q);
    const MpComplex qs = exp(-s * MpComplex(logq));  // q^-s
    out.body += qs / 2;

    // T_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * q^{-s-2k+1}
    const MpReal sigma = s.real();
    MpComplex poch = s;
    MpComplex qpow = qs / out.q;
    const MpReal q2 = out.q * out.q;
    constexpr unsigned kMaxTerms = 120;
    // Absolute: body can be ~N^(1-sigma) larger than the final value.
    const MpReal target = MpReal("1e-32");
    MpReal prev_abs = std::numeric_limits<double>::max();
    const double abs_s = mp_abs(s).convert_to<double>();
    for (unsigned k = 1; k <= kMaxTerms; ++k) {
        const MpReal coef = to_mp(bernoulli_number(2 * k) / Rational(factorial(2 * k)));
        const MpComplex term = coef * poch * qpow;
        const MpReal t_abs = mp_abs(term);
        // Rademacher bound on the remainder once sigma + 2k + 1 > 0.
        const MpReal denom = sigma + 2 * k + 1;
        const MpReal bound = denom > 0 ? t_abs * mp_abs(s + MpComplex(2 * k + 1)) / denom : t_abs * 1e6;
        const bool settled = denom > 0 && bound < target;
        // Past the transient from the Pochhammer factors the series is
        // asymptotic; stop at its smallest term.
        const bool diverging = 2 * k > abs_s + 2 && t_abs > prev_abs;
        if (settled || diverging) {
            out.truncation = bound;
            return out;
        }
        out.body += term;
        out.magnitude = std::max(out.magnitude, mp_abs(out.body));
        prev_abs = t_abs;
        poch *= (s + MpComplex(2 * k - 1)) * (s + MpComplex(2 * k));
        qpow /= q2;
        out.truncation = bound;
    }
    return out;
}

inline bool in_validated_domain(const Complex& s) { return s.real() >= -25.0 && std::abs(s.imag()) <= 50.0; }

inline EvalResult finish(const MpComplex& value, const MpReal& truncation, const MpReal& magnitude,
                         const Complex& s, const char* who) {
    EvalResult r;
    r.value = to_complex(value);
    const double roundoff = magnitude.convert_to<double>() * std::pow(10.0, -(double)kWorkDigits + 3);
    r.abs_error_estimate = truncation.convert_to<double>() + roundoff +
                           std::abs(r.value) * std::numeric_limits<double>::epsilon();
    if (!in_validated_domain(s) || !std::isfinite(r.abs_error_estimate))
        throw PrecisionLossError(std::string(who) + " outside validated domain Re s >= -25, |Im s| <= 50", r);
    return r;
}

inline void check_pole(const Complex& s, const char* who) {
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-13) throw Error(Errc::pole_at_one, std::string(who) + " at s = 1");
}

}  // namespace detail

/// Hurwitz zeta(s, a) for 0 < a <= 1 by Euler-Maclaurin.
inline EvalResult hurwitz_zeta(Complex s, double a) {
    detail::check_pole(s, "hurwitz_zeta");
    if (!(a > 0.0 && a <= 1.0)) throw Error(Errc::invalid_argument, "hurwitz_zeta needs 0 < a <= 1");
    using detail::MpComplex;
    using detail::MpReal;
    const MpComplex ms(s.real(), s.imag());
    const auto p = detail::em_pieces(ms, MpReal(a), detail::em_cutoff(s));
    const MpComplex pole = boost::multiprecision::exp((MpComplex(1) - ms) * MpComplex(log(p.q))) / (ms - MpComplex(1));
    const MpComplex value = p.body + pole;
    return detail::finish(value, p.truncation, std::max(p.magnitude, detail::mp_abs(pole)), s, "hurwitz_zeta");
}

/// Riemann zeta by Euler-Maclaurin; |error| <= abs_error_estimate.
inline EvalResult zeta_em(Complex s) {
    detail::check_pole(s, "zeta_em");
    return hurwitz_zeta(s, 1.0);
}

/// beta(s) = 4^-s [zeta(s, 1/4) - zeta(s, 3/4)]. The two pole terms are
/// combined analytically, so s = 1 is an ordinary point.
inline EvalResult dirichlet_beta(Complex s) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using detail::MpComplex;
    using detail::MpReal;
    const MpComplex ms(s.real(), s.imag());
    const unsigned N = detail::em_cutoff(s);
    const auto p1 = detail::em_pieces(ms, MpReal(0.25), N);
    const auto p3 = detail::em_pieces(ms, MpReal(0.75), N);

    // [q1^u - q3^u] / (-u) with u = 1 - s; tends to log(q3) - log(q1) at u = 0.
    const MpComplex u = MpComplex(1) - ms;
    const MpReal l1 = log(p1.q);
    const MpReal l3 = log(p3.q);
    MpComplex pole_diff;
    if (detail::mp_abs(u) < MpReal("1e-25")) {
        pole_diff = MpComplex(l3 - l1) * (MpComplex(1) + u * MpComplex((l1 + l3) / 2));
    } else {
        pole_diff = (exp(u * MpComplex(l1)) - exp(u * MpComplex(l3))) / (-u);
    }
    const MpComplex scale = exp(-ms * MpComplex(log(MpReal(4))));
    const MpComplex value = scale * (p1.body - p3.body + pole_diff);
    const MpReal sabs = detail::mp_abs(scale);
    return detail::finish(value, sabs * (p1.truncation + p3.truncation),
                          sabs * std::max({p1.magnitude, p3.magnitude, detail::mp_abs(pole_diff)}), s,
                          "dirichlet_beta");
}

// ---------------------------------------------------------------------------
// Gamma

namespace detail {

/// sin(pi x) and cos(pi x) with exact zeros at integers and half-integers.
inline double sin_pi(double x) {
    if (x == std::floor(x)) return 0.0;
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    return std::sin(std::numbers::pi * r);
}

inline double cos_pi(double x) {
    double r = std::fmod(std::abs(x), 2.0);
    if (r == 0.5 || r == 1.5) return 0.0;
    if (r == 0.0) return 1.0;
    if (r == 1.0) return -1.0;
    return std::cos(std::numbers::pi * r);
}

inline Complex sin_pi(Complex z) {
    const double y = std::numbers::pi * z.imag();
    return {sin_pi(z.real()) * std::cosh(y), cos_pi(z.real()) * std::sinh(y)};
}

// Lanczos, g = 7, nine terms; relative accuracy ~1e-15 for Re z >= 1/2.
inline Complex log_gamma_right(Complex z) {
    static constexpr double kG = 7.0;
    static constexpr double kCoef[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                        771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex acc = kCoef[0];
    for (int i = 1; i < 9; ++i) acc += kCoef[i] / (z + static_cast<double>(i));
    const Complex t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

inline bool is_real_integer(Complex s) { return s.imag() == 0.0 && s.real() == std::floor(s.real()); }

}  // namespace detail

/// 1/Gamma(s) as an entire function: exactly zero at 0, -1, -2, ...
inline Complex recip_gamma(Complex s) {
    if (detail::is_real_integer(s)) {
        if (s.real() <= 0.0) return 0.0;
        if (s.real() <= 171.0) {
            double f = 1.0;
            for (int k = 2; k < static_cast<int>(s.real()); ++k) f *= k;
            return 1.0 / f;
        }
    }
    if (s.real() >= 0.5) return std::exp(-detail::log_gamma_right(s));
    // 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi
    return detail::sin_pi(s) * std::exp(detail::log_gamma_right(1.0 - s)) / std::numbers::pi;
}

/// Gamma(s) away from its poles.
inline Complex gamma_complex(Complex s) {
    if (detail::is_real_integer(s) && s.real() <= 0.0)
        throw Error(Errc::invalid_argument, "Gamma has a pole at a nonpositive integer");
    if (s.real() >= 0.5) return std::exp(detail::log_gamma_right(s));
    return std::numbers::pi / (detail::sin_pi(s) * std::exp(detail::log_gamma_right(1.0 - s)));
}

// ---------------------------------------------------------------------------
// Hankel contours

/// Path: ray in from -infinity at angle -(pi - delta), circle of radius rho
/// about 0 traversed counterclockwise, ray back out at angle +(pi - delta).
/// The branch of t^(s-1) is principal with the cut on the negative axis.
struct HankelContour {
    double rho = std::numbers::pi;
    double delta = 0.0;
    double tolerance = 1e-14;
};

namespace detail {

inline Complex expm1(Complex z) {
    const double e = std::expm1(z.real());
    const double sh = std::sin(0.5 * z.imag());
    return {e * std::cos(z.imag()) - 2.0 * sh * sh, (e + 1.0) * std::sin(z.imag())};
}

// t^(s-1) with an explicitly supplied argument, so both lips of the cut are
// distinguished even when delta = 0.
inline Complex branch_power(double r, double phi, Complex s) {
    return std::exp((s - 1.0) * Complex(std::log(r), phi));
}

template <class Kernel>
quad::Estimate hankel_integral(Kernel kernel, Complex s, const HankelContour& c) {
    const double phi = std::numbers::pi - c.delta;
    const Complex dir_lo = std::polar(1.0, -phi);
    const Complex dir_hi = std::polar(1.0, phi);
    auto lower = [&](double r) { return -kernel(r * dir_lo) * branch_power(r, -phi, s) * dir_lo; };
    auto upper = [&](double r) { return kernel(r * dir_hi) * branch_power(r, phi, s) * dir_hi; };
    auto circle = [&](double theta) {
        const Complex t = std::polar(c.rho, theta);
        return kernel(t) * branch_power(c.rho, theta, s) * Complex(0.0, 1.0) * t;
    };

    // Truncate the rays once both integrands are negligible and decaying.
    double cut = std::max(c.rho * 2.0, 2.0);
    for (int guard = 0; guard < 4000; ++guard) {
        const double m = std::max(std::abs(lower(cut)), std::abs(upper(cut)));
        const double m_next = std::max(std::abs(lower(cut + 1.0)), std::abs(upper(cut + 1.0)));
        if (m < 1e-18 && m_next <= m) break;
        cut += 1.0;
    }
    auto rays = [&](double r) { return lower(r) + upper(r); };
    const auto a = quad::integrate(rays, c.rho, cut, c.tolerance);
    const auto b = quad::integrate(circle, -phi, phi, c.tolerance);
    return {a.value + b.value, a.abs_error + b.abs_error + 1e-18 * (cut - c.rho), a.l1 + b.l1};
}

inline EvalResult finish_hankel(const quad::Estimate& q, Complex s, const char* who) {
    const Complex g = gamma_complex(1.0 - s);
    EvalResult r;
    r.value = g * q.value / Complex(0.0, 2.0 * std::numbers::pi);
    const double scale = std::abs(g) / (2.0 * std::numbers::pi);
    r.abs_error_estimate =
        scale * (q.abs_error + 4.0 * std::numeric_limits<double>::epsilon() * q.l1) +
        std::abs(r.value) * std::numeric_limits<double>::epsilon();
    if (!(r.abs_error_estimate <= 1e-8 * std::max(1.0, std::abs(r.value))))
        throw PrecisionLossError(std::string(who) + " quadrature did not reach 1e-8", r);
    return r;
}

}  // namespace detail

/// zeta(s) = Gamma(1-s)/(2 pi i) * integral over C of t^(s-1)/(e^(-t) - 1) dt, Re s < 1.
inline EvalResult hankel_zeta(Complex s, const HankelContour& contour = {}) {
    if (!(s.real() < 1.0)) throw Error(Errc::invalid_argument, "hankel_zeta needs Re s < 1");
    if (!(contour.rho > 0.0)) throw Error(Errc::invalid_argument, "contour radius must be positive");
    if (contour.rho >= 2.0 * std::numbers::pi)
        throw Error(Errc::contour_clipped, "radius >= 2 pi encloses the kernel poles at +-2 pi i");
    auto kernel = [](Complex t) { return 1.0 / detail::expm1(-t); };
    return detail::finish_hankel(detail::hankel_integral(kernel, s, contour), s, "hankel_zeta");
}

/// Default radius for the Lerch contour: half the distance to the nearest
/// kernel pole at t = -ix + 2 pi i k.
inline double lerch_default_radius(double x) {
    return 0.5 * std::min({std::numbers::pi, x, 2.0 * std::numbers::pi - x});
}

/// L(s, x) = sum_{n>=1} e^{inx} / n^s continued through
/// Gamma(1-s)/(2 pi i) * integral over C of e^{t+ix} t^(s-1) / (1 - e^{t+ix}) dt.
inline EvalResult lerch_hankel(Complex s, double x, std::optional<HankelContour> contour = std::nullopt) {
    if (!(x > 0.0 && x < 2.0 * std::numbers::pi))
        throw Error(Errc::invalid_argument, "lerch_hankel needs 0 < x < 2 pi");
    if (!(s.real() < 1.0)) throw Error(Errc::invalid_argument, "lerch_hankel needs Re s < 1");
    HankelContour c = contour.value_or(HankelContour{lerch_default_radius(x), 0.0, 1e-14});
    if (!(c.rho > 0.0)) throw Error(Errc::invalid_argument, "contour radius must be positive");
    if (c.rho >= std::min(x, 2.0 * std::numbers::pi - x))
        throw Error(Errc::contour_clipped, "radius reaches the kernel pole at t = -ix (mod 2 pi i)");
    auto kernel = [x](Complex t) {
        const Complex w = t + Complex(0.0, x);
        return -std::exp(w) / detail::expm1(w);
    };
    return detail::finish_hankel(detail::hankel_integral(kernel, s, c), s, "lerch_hankel");
}

}  // namespace opzeta
