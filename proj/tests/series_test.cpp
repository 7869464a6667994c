#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "opzeta/series.hpp"
#include "oracles.hpp"

using namespace opzeta;
constexpr double pi = std::numbers::pi;

namespace {

double eval_pix(const oracle::PiX& p, double x) {
    long double acc = 0;
    for (unsigned j = 0; j < p.c.size(); ++j)
        for (unsigned i = 0; i < p.c[j].size(); ++i)
            acc += p.c[j][i].convert_to<long double>() * std::pow(static_cast<long double>(x), j) *
                   std::pow(std::numbers::pi_v<long double>, i);
    return static_cast<double>(acc);
}

/// sum r^n w(n) trig(n x) by plain summation until r^n is negligible.
double brute_abel(const TrigSeries& s, double x, double r) {
    long double acc = 0;
    for (long k = 0;; ++k) {
        const long n = s.character == Character::trivial ? k + 1 : 2 * k + 1;
        const long double rn = std::pow(static_cast<long double>(r), n);
        if (rn * std::pow(static_cast<long double>(n), std::max(0, -s.exponent)) < 1e-22L && n > 10) break;
        long double t = rn * std::pow(static_cast<long double>(n), -s.exponent) *
                        (s.parity == Trig::sin ? std::sin(static_cast<long double>(n) * x)
                                               : std::cos(static_cast<long double>(n) * x));
        if (s.character == Character::beta && k % 2 == 1) t = -t;
        acc += t;
    }
    return static_cast<double>(acc);
}

}  // namespace

TEST(PartialSum, ClausenSeriesWithinTailBound) {
    const auto ref = oracle::clausen_by_integration(6);
    for (unsigned s = 1; s <= 6; ++s) {
        const TrigSeries series{s % 2 == 1 ? Trig::sin : Trig::cos, static_cast<int>(s), Character::trivial};
        for (double x : {0.3, 1.0, 2.5, 4.0, 6.0}) {
            const long N = terms_for_tolerance(series, x, 1e-7);
            const auto v = partial_sum(series, x, N);
            EXPECT_LE(tail_bound(series, x, N), 1e-7);
            EXPECT_NEAR(v.value, eval_pix(ref[s - 1], x), 1e-7) << "s=" << s << " x=" << x;
            EXPECT_EQ(v.method, SumMethod::partial_sum);
        }
    }
}

TEST(PartialSum, TailBoundIsHonest) {
    const TrigSeries series{Trig::sin, 1, Character::trivial};
    for (double x : {0.2, 1.0, 3.0}) {
        const double exact = (pi - x) / 2;
        for (long N : {10L, 100L, 1000L}) {
            const auto v = partial_sum(series, x, N);
            EXPECT_LE(std::abs(v.value - exact), tail_bound(series, x, N)) << x << " " << N;
        }
    }
}

TEST(PartialSum, BetaSeries) {
    const TrigSeries series{Trig::sin, 1, Character::beta};
    for (double x : {-1.2, 0.4, 1.3}) {
        const long N = terms_for_tolerance(series, x, 1e-6);
        EXPECT_NEAR(partial_sum(series, x, N).value, 0.5 * std::log(1 / std::cos(x) + std::tan(x)), 1e-6);
    }
    // At x = pi/2 the signs cancel: sum 1/(2k+1)^2 = pi^2/8.
    const TrigSeries b2{Trig::sin, 2, Character::beta};
    const auto v = partial_sum(b2, pi / 2, 20000);
    EXPECT_LE(std::abs(v.value - pi * pi / 8), v.abs_error_estimate);
}

TEST(PartialSum, Errors) {
    try {
        partial_sum({Trig::sin, 0, Character::trivial}, 1.0, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::diverges);
    }
    try {
        partial_sum({Trig::sin, 1, Character::trivial}, 0.0, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::endpoint_conditional);
    }
    try {
        partial_sum({Trig::sin, 1, Character::beta}, pi / 2, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::endpoint_conditional);
    }
}

TEST(Geometric, AbelSum) {
    for (double x : {0.1, 1.0, pi, 5.0}) {
        const Complex g = geometric_abel(x);
        EXPECT_NEAR(g.real(), -0.5, 1e-14);
        EXPECT_NEAR(g.imag(), 0.5 / std::tan(x / 2), 1e-12);
    }
    try {
        geometric_abel(0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::singular_at_endpoint);
    }
}

TEST(AbelExtrapolate, GeneratingFunctionsMatchBruteForce) {
    for (const TrigSeries& s : {TrigSeries{Trig::sin, 0, Character::trivial}, TrigSeries{Trig::cos, -3, Character::trivial},
                                TrigSeries{Trig::cos, 0, Character::beta}, TrigSeries{Trig::sin, -2, Character::beta}}) {
        for (double r : {0.5, 0.9}) {
            const Complex v = detail::abel_weighted_sum(s, 0.7, r);
            const double got = s.parity == Trig::sin ? v.imag() : v.real();
            EXPECT_NEAR(got, brute_abel(s, 0.7, r), 1e-9 * std::max(1.0, std::abs(got))) << s.str() << " r=" << r;
        }
    }
}

TEST(AbelExtrapolate, RegistryClosedForms) {
    for (const auto& e : abel_closed_forms()) {
        for (double x : {0.3, 0.8, 1.4}) {
            if (!e.in_domain(x)) continue;
            const auto v = abel_extrapolate(e.series, x);
            EXPECT_NEAR(v.value, e.value(x), 1e-8) << e.series.str() << " x=" << x;
            EXPECT_EQ(v.method, SumMethod::abel_extrapolated);
            EXPECT_LE(v.abs_error_estimate, kExtrapolationTolerance);
        }
    }
}

TEST(AbelExtrapolate, HigherPowersAgainstDerivatives) {
    // sum n^2 sin(nx) = -(d/dx)^2 [cot(x/2)/2] = -cos(x/2)/(4 sin^3(x/2)).
    for (double x : {0.5, 1.5, 3.0}) {
        const double expected = -std::cos(x / 2) / (4 * std::pow(std::sin(x / 2), 3));
        EXPECT_NEAR(abel_extrapolate({Trig::sin, -2, Character::trivial}, x).value, expected, 1e-8) << x;
    }
}

TEST(AbelExtrapolate, NotConverged) {
    const std::vector<double> coarse{0.1, 0.2, 0.3, 0.4, 0.5};
    try {
        abel_extrapolate({Trig::cos, -6, Character::trivial}, 0.2, coarse);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_converged);
    }
    const std::vector<double> unsorted{0.9, 0.5, 0.95, 0.99};
    EXPECT_THROW(abel_extrapolate({Trig::sin, 0, Character::trivial}, 1.0, unsorted), Error);
}

TEST(AbelValue, DomainAndFallback) {
    EXPECT_EQ(abel_value({Trig::sin, 0, Character::trivial}, 1.0).method, SumMethod::abel_closed_form);
    EXPECT_EQ(abel_value({Trig::cos, -2, Character::trivial}, 1.0).method, SumMethod::abel_extrapolated);
    try {
        abel_value({Trig::sin, 1, Character::beta}, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::outside_domain);
    }
}

TEST(TrigSeries, Printing) {
    EXPECT_EQ((TrigSeries{Trig::sin, 1, Character::trivial}.str()), "sum sin(nx)/n");
    EXPECT_EQ((TrigSeries{Trig::cos, 0, Character::beta}.str()), "sum (-1)^k cos((2k+1)x)");
}
