#pragma once

// Numerical and exact checks of registry identities.

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "opzeta/error.hpp"
#include "opzeta/operator.hpp"
#include "opzeta/registry.hpp"
#include "opzeta/series.hpp"

namespace opzeta {

struct PointResult {
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double deviation = 0.0;
    std::string method;
};

struct VerificationReport {
    std::string id;
    std::vector<PointResult> points;
    double max_abs_deviation = 0.0;
    double tolerance = 0.0;
    std::vector<long> expected_poles;
    std::vector<long> observed_poles;
    bool exact_mode = false;
    bool pass = false;
};

inline constexpr unsigned kFlowTerms = 40;
inline constexpr unsigned kExactFlowTerms = 12;

namespace detail {

inline PointResult failed_point(double x, const std::string& method) {
    return {x, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::infinity(), method};
}

inline std::vector<PointResult> evaluate_point(const IdentityRecord& rec, double x, double tol) {
    std::vector<PointResult> out;
    try {
        switch (rec.lhs) {
        case LhsMode::partial_sum: {
            const auto series = rec.series();
            const long N = terms_for_tolerance(series, x, tol / 2);
            const auto s = partial_sum(series, x, N);
            const double r = rec.rhs_value(x);
            out.push_back({x, s.value, r, std::abs(s.value - r), method_name(s.method)});
            break;
        }
        case LhsMode::abel: {
            const auto s = abel_extrapolate(rec.series(), x);
            const double r = rec.rhs_value(x);
            out.push_back({x, s.value, r, std::abs(s.value - r), method_name(s.method)});
            break;
        }
        case LhsMode::geometric: {
            // Extrapolate real and imaginary parts separately.
            const auto re = abel_extrapolate(TrigSeries{Trig::cos, 0, Character::trivial}, x);
            const auto im = abel_extrapolate(TrigSeries{Trig::sin, 0, Character::trivial}, x);
            const Complex lhs(re.value, im.value);
            const Complex rhs = geometric_abel(x);
            // Rows carry the real part; the deviation is the complex modulus.
            out.push_back({x, lhs.real(), rhs.real(), std::abs(lhs - rhs), "abel_extrapolated"});
            break;
        }
        case LhsMode::taylor_flow: {
            const auto flow = taylor_flow(rec.op, rec.trig, kFlowTerms);
            double lhs = pipoly_eval(flow.poly, x);
            if (flow.singular_removed)
                lhs += flow.singular_removed->coefficient.to_double() * std::pow(x, flow.singular_removed->power);
            const double r = rec.rhs_value(x);
            out.push_back({x, lhs, r, std::abs(lhs - r), "taylor_flow"});
            const auto s = abel_extrapolate(rec.series(), x);
            out.push_back({x, s.value, r, std::abs(s.value - r), method_name(s.method)});
            break;
        }
        case LhsMode::composite: {
            const auto flow = taylor_flow(rec.op, rec.trig, kExactFlowTerms);
            const double lhs = pipoly_eval(flow.poly, x);
            const double r = rec.rhs_value(x);
            out.push_back({x, lhs, r, std::abs(lhs - r), "taylor_flow"});
            break;
        }
        }
    } catch (const Error& e) {
        out.push_back(failed_point(x, std::string(errc_name(e.code()))));
    }
    return out;
}

inline std::vector<long> observed_poles(const IdentityRecord& rec) {
    auto r = apply_operator(rec.op, rec.rhs_expression(), true);
    std::sort(r.pole_terms.begin(), r.pole_terms.end());
    return r.pole_terms;
}

inline VerificationReport verify_exact(const IdentityRecord& rec) {
    VerificationReport rep;
    rep.id = rec.id;
    rep.exact_mode = true;
    rep.expected_poles = rec.expected_poles;
    std::sort(rep.expected_poles.begin(), rep.expected_poles.end());
    rep.observed_poles = observed_poles(rec);

    const auto rhs = rec.exact_rhs();
    bool equal = false;
    std::string method;
    if (rec.lhs == LhsMode::composite && rhs) {
        const auto flow = taylor_flow(rec.op, rec.trig, kExactFlowTerms);
        equal = flow.poly == rhs->truncated(flow.max_degree);
        method = "exact_taylor_flow";
    } else if (rec.lhs == LhsMode::partial_sum && rec.rhs_kind == RhsKind::clausen && rhs) {
        // Term by term plus the parity anomaly reproduces the closed form.
        const auto flow = taylor_flow(rec.op, rec.trig, kExactFlowTerms);
        PiXPolynomial lhs = flow.poly;
        if (flow.anomaly) lhs += flow.anomaly->as_poly();
        equal = lhs == rhs->truncated(flow.max_degree);
        method = "exact_taylor_flow_plus_anomaly";
    } else {
        throw Error(Errc::unsupported, rec.id + " is not a polynomial identity over Q[pi]");
    }
    rep.points.push_back({0.0, 0.0, 0.0, equal ? 0.0 : std::numeric_limits<double>::infinity(), method});
    rep.max_abs_deviation = rep.points.back().deviation;
    rep.pass = equal && rep.expected_poles == rep.observed_poles;
    return rep;
}

}  // namespace detail

/// Evaluates both sides on the grid. Points are computed concurrently and
/// reported in grid order.
inline VerificationReport verify(const IdentityRecord& rec, const Grid& grid, double tol, bool exact = false) {
    if (!(tol > 0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    const auto xs = grid.points();
    for (double x : xs)
        if (!rec.domain.contains(x))
            throw Error(Errc::outside_domain,
                        "grid point " + std::to_string(x) + " lies outside " + rec.id + "'s domain " + rec.domain.text);
    if (exact) return detail::verify_exact(rec);

    VerificationReport rep;
    rep.id = rec.id;
    rep.tolerance = tol;
    rep.expected_poles = rec.expected_poles;
    std::sort(rep.expected_poles.begin(), rep.expected_poles.end());
    rep.observed_poles = detail::observed_poles(rec);

    const std::size_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::vector<PointResult>> per_point(xs.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < xs.size(); i += workers) per_point[i] = detail::evaluate_point(rec, xs[i], tol);
        }));
    for (auto& j : jobs) j.get();

    for (auto& pts : per_point)
        for (auto& p : pts) {
            rep.max_abs_deviation = std::max(rep.max_abs_deviation, p.deviation);
            rep.points.push_back(std::move(p));
        }
    rep.pass = rep.max_abs_deviation <= tol && rep.expected_poles == rep.observed_poles;
    return rep;
}

inline VerificationReport verify(const IdentityRecord& rec) { return verify(rec, rec.profile.grid, rec.profile.tol); }

}  // namespace opzeta
