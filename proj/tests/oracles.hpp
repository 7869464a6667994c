#pragma once

// Reference computations used by the tests. Each one takes a route that does
// not go through the library code it is checked against.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "opzeta/exactnum.hpp"

namespace oracle {

using opzeta::BigInt;
using opzeta::Rational;

/// Akiyama-Tanigawa; yields B_1 = +1/2, so the sign of B_1 is flipped to
/// the -1/2 convention.
inline std::vector<Rational> bernoulli_akiyama_tanigawa(unsigned n_max) {
    std::vector<Rational> out;
    std::vector<Rational> a(n_max + 1);
    for (unsigned m = 0; m <= n_max; ++m) {
        a[m] = Rational(1, m + 1);
        for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
        out.push_back(a[0]);
    }
    if (n_max >= 1) out[1] = -out[1];
    return out;
}

/// Secant numbers |E_{2n}| from the Seidel boustrophedon triangle.
inline std::vector<BigInt> secant_numbers(unsigned n_max) {
    const unsigned rows = 2 * n_max + 1;
    std::vector<BigInt> zigzag{1};  // zigzag[k] = A_k
    std::vector<BigInt> row{1};
    for (unsigned r = 1; r < rows; ++r) {
        std::vector<BigInt> next(r + 1);
        next[0] = 0;
        for (unsigned k = 1; k <= r; ++k) next[k] = next[k - 1] + row[r - k];
        row = next;
        zigzag.push_back(row.back());
    }
    std::vector<BigInt> out;
    for (unsigned n = 0; n <= n_max; ++n) out.push_back(zigzag[2 * n]);
    return out;
}

inline BigInt fact(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

/// Taylor coefficients c_n of (1/2) cot(x/2) - 1/x, from
/// (1/2) cot(x/2) = 1/x + sum_{k>=1} (-1)^k B_{2k} x^{2k-1} / (2k)!.
inline std::vector<Rational> half_cot_regular(unsigned degree_max) {
    const auto B = bernoulli_akiyama_tanigawa(degree_max + 2);
    std::vector<Rational> c(degree_max + 1);
    for (unsigned k = 1; 2 * k - 1 <= degree_max; ++k) {
        Rational t = B[2 * k] / Rational(fact(2 * k));
        c[2 * k - 1] = k % 2 == 0 ? t : Rational(-t);
    }
    return c;
}

/// Termwise derivative of half_cot_regular: -1/(2(1 - cos x)) + 1/x^2.
inline std::vector<Rational> neg_half_csc2_regular(unsigned degree_max) {
    const auto h = half_cot_regular(degree_max + 1);
    std::vector<Rational> c(degree_max + 1);
    for (unsigned n = 0; n <= degree_max; ++n) c[n] = Rational(n + 1) * h[n + 1];
    return c;
}

/// sec x = sum A_{2n} x^{2n} / (2n)!.
inline std::vector<Rational> sec_series(unsigned degree_max) {
    const auto A = secant_numbers(degree_max / 2 + 1);
    std::vector<Rational> c(degree_max + 1);
    for (unsigned n = 0; 2 * n <= degree_max; ++n) c[2 * n] = Rational(A[n]) / Rational(fact(2 * n));
    return c;
}

/// Clausen closed forms built by repeated integration of the sawtooth
/// (pi - x)/2, fixing each constant by the zero-mean condition on [0, 2pi].
/// Polynomials are stored as coefficients of pi^i x^j in a dense table.
struct PiX {
    // c[j][i] multiplies x^j pi^i
    std::vector<std::vector<Rational>> c;

    Rational at(unsigned j, unsigned i) const {
        if (j >= c.size() || i >= c[j].size()) return 0;
        return c[j][i];
    }
    void add(unsigned j, unsigned i, const Rational& v) {
        if (c.size() <= j) c.resize(j + 1);
        if (c[j].size() <= i) c[j].resize(i + 1);
        c[j][i] += v;
    }
};

/// Result index: [0] = sum sin(nx)/n, [1] = sum cos(nx)/n^2, [2] = sin/n^3, ...
inline std::vector<PiX> clausen_by_integration(unsigned order_max) {
    std::vector<PiX> out;
    PiX f;
    f.add(0, 1, Rational(1, 2));
    f.add(1, 0, Rational(-1, 2));
    out.push_back(f);
    for (unsigned s = 2; s <= order_max; ++s) {
        // sin/n^{s-1} -> cos/n^s: F = C - int_0^x f.   cos -> sin: F = int_0^x f.
        const bool to_cos = s % 2 == 0;
        PiX g;
        for (unsigned j = 0; j < f.c.size(); ++j)
            for (unsigned i = 0; i < f.c[j].size(); ++i) {
                const Rational v = f.c[j][i] / Rational(j + 1);
                g.add(j + 1, i, to_cos ? Rational(-v) : v);
            }
        if (to_cos) {
            // Mean over [0, 2pi] of x^j is (2pi)^j / (j + 1); the constant cancels it.
            for (unsigned j = 0; j < g.c.size(); ++j)
                for (unsigned i = 0; i < g.c[j].size(); ++i) {
                    if (g.c[j][i] == 0) continue;
                    const Rational mean = g.c[j][i] * Rational(BigInt(1) << j) / Rational(j + 1);
                    g.add(0, i + j, -mean);
                }
        }
        out.push_back(g);
        f = g;
    }
    return out;
}

/// zeta(1/2) through eta(1/2) = (1 - sqrt 2) zeta(1/2), with the alternating
/// series accelerated by repeated averaging of partial sums.
inline double zeta_half_via_eta() {
    constexpr int n = 60;
    std::vector<long double> s(n);
    long double acc = 0;
    for (int k = 1; k <= n; ++k) {
        acc += (k % 2 == 1 ? 1.0L : -1.0L) / std::sqrt(static_cast<long double>(k));
        s[static_cast<std::size_t>(k - 1)] = acc;
    }
    for (int level = 0; level < n - 1; ++level)
        for (int k = 0; k + 1 < n - level; ++k) s[static_cast<std::size_t>(k)] = 0.5L * (s[k] + s[k + 1]);
    return static_cast<double>(s[0] / (1.0L - std::sqrt(2.0L)));
}

/// Number of (m, n) pairs with n | m and m, n <= M.
inline long divisor_pair_count(long M) {
    long count = 0;
    for (long m = 1; m <= M; ++m)
        for (long n = 1; n <= M; ++n)
            if (m % n == 0) ++count;
    return count;
}

}  // namespace oracle
