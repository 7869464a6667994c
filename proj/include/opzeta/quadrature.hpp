#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace opzeta::quad {

struct Estimate {
    std::complex<double> value;
    double abs_error;
    /// Integral of |f|; bounds the roundoff of the summation.
    double l1;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Estimate gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kron = fc * kWgk[7];
    std::complex<double> gauss = fc * kWg[3];
    double l1 = std::abs(fc) * kWgk[7];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const auto f1 = f(c - dx);
        const auto f2 = f(c + dx);
        kron += (f1 + f2) * kWgk[j];
        l1 += (std::abs(f1) + std::abs(f2)) * kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
    }
    return {kron * h, std::abs((kron - gauss) * h), l1 * std::abs(h)};
}

template <class F>
Estimate adapt(F& f, double a, double b, double tol, int depth, const Estimate& whole) {
    if (depth <= 0 || whole.abs_error <= tol) return whole;
    const double m = 0.5 * (a + b);
    const auto left = gk15(f, a, m);
    const auto right = gk15(f, m, b);
    const auto l = adapt(f, a, m, 0.5 * tol, depth - 1, left);
    const auto r = adapt(f, m, b, 0.5 * tol, depth - 1, right);
    return {l.value + r.value, l.abs_error + r.abs_error, l.l1 + r.l1};
}

}  // namespace detail

/// Adaptive bisection with a G7/K15 pair for complex-valued integrands on a
/// finite interval. The error is the Kronrod/Gauss difference summed over leaves.
template <class F>
Estimate integrate(F f, double a, double b, double abs_tol = 1e-15, int max_depth = 30) {
    const auto whole = detail::gk15(f, a, b);
    return detail::adapt(f, a, b, abs_tol, max_depth, whole);
}

}  // namespace opzeta::quad
