#pragma once

// Matrix of zeta(1 - iD) on L^2[0, pi] in the sine basis sqrt(2/pi) sin(n x):
// zeta(1 - iD) sin(n x) = sum_k sin(k n x) / k, so entry (m, n) is n/m when
// n divides m and zero otherwise.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "opzeta/error.hpp"
#include "opzeta/exactnum.hpp"
#include "opzeta/operator.hpp"
#include "opzeta/specfun.hpp"

namespace opzeta {

struct MatrixEntry {
    long row = 0;
    long col = 0;
    Rational value;
};

class DivisibilityMatrix {
public:
    /// Enumerates multiples m = k n, so construction is O(M log M).
    explicit DivisibilityMatrix(long size) : size_(size) {
        if (size < 1) throw Error(Errc::invalid_argument, "matrix size must be >= 1");
        for (long n = 1; n <= size; ++n)
            for (long k = 1; k * n <= size; ++k) entries_.push_back({k * n, n, Rational(1, k)});
        std::sort(entries_.begin(), entries_.end(),
                  [](const MatrixEntry& a, const MatrixEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
        row_start_.assign(static_cast<std::size_t>(size) + 2, 0);
        for (const auto& e : entries_) ++row_start_[static_cast<std::size_t>(e.row) + 1];
        for (std::size_t i = 1; i < row_start_.size(); ++i) row_start_[i] += row_start_[i - 1];
    }

    long size() const { return size_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<MatrixEntry>& entries() const { return entries_; }

    /// Entries of row m, sorted by column.
    std::span<const MatrixEntry> row(long m) const {
        const auto b = row_start_[static_cast<std::size_t>(m)];
        const auto e = row_start_[static_cast<std::size_t>(m) + 1];
        return std::span(entries_).subspan(b, e - b);
    }

    /// Zero when absent.
    Rational at(long m, long n) const {
        if (m < 1 || n < 1 || m > size_ || n > size_) throw Error(Errc::invalid_argument, "index out of range");
        for (const auto& e : row(m))
            if (e.col == n) return e.value;
        return 0;
    }

    /// One "m n num den" line per entry, sorted by (m, n).
    void write_triplets(std::ostream& os) const {
        for (const auto& e : entries_)
            os << e.row << ' ' << e.col << ' ' << numerator_of(e.value) << ' ' << denominator_of(e.value) << '\n';
    }

private:
    long size_;
    std::vector<MatrixEntry> entries_;
    std::vector<std::size_t> row_start_;
};

inline DivisibilityMatrix build_matrix(long M) { return DivisibilityMatrix(M); }

inline std::vector<Rational> matrix_apply(const DivisibilityMatrix& A, std::span<const Rational> v) {
    if (static_cast<long>(v.size()) != A.size())
        throw Error(Errc::dimension_mismatch,
                    "vector length " + std::to_string(v.size()) + " != matrix size " + std::to_string(A.size()));
    std::vector<Rational> out(v.size());
    for (long m = 1; m <= A.size(); ++m) {
        Rational acc = 0;
        for (const auto& e : A.row(m)) acc += e.value * v[static_cast<std::size_t>(e.col - 1)];
        out[static_cast<std::size_t>(m - 1)] = acc;
    }
    return out;
}

struct ConsistencyReport {
    long basis_index = 1;
    long size = 1;
    /// (2/pi) int_0^pi f(x) sin(m x) dx for m = 1..size.
    std::vector<double> quadrature;
    std::vector<Rational> column;
    double max_abs_deviation = 0.0;
};

namespace detail {

/// Abel sum of zeta(1 - iD) sin(n x): the sawtooth (pi - x')/2 with
/// x' = n x reduced to [0, 2pi). Built from the dilated closed form.
inline double dilated_sawtooth(const PiXPolynomial& sawtooth, long n, double x) {
    double y = std::fmod(static_cast<double>(n) * x, 2.0 * std::numbers::pi);
    if (y < 0) y += 2.0 * std::numbers::pi;
    if (y == 0.0) return 0.0;  // midpoint of the jump
    return sawtooth(y);
}

}  // namespace detail

/// Compares column n of build_matrix(M) with sine coefficients of the summed
/// series, integrated by composite Gauss-Legendre on panels split at the
/// jumps x = 2 pi j / n.
inline ConsistencyReport consistency_check(long n, long M) {
    if (n < 1 || n > M) throw Error(Errc::invalid_argument, "need 1 <= n <= M");
    const auto A = build_matrix(M);
    ConsistencyReport rep;
    rep.basis_index = n;
    rep.size = M;

    // Each series term sin(k n x) / k is the dilation of sin x by k n, and the
    // sum is clausen_closed_form(sin, 1) evaluated at the reduced argument.
    const auto sawtooth = clausen_closed_form(Trig::sin, 1);
    std::vector<double> breaks{0.0};
    for (long j = 1; 2 * j <= n; ++j) breaks.push_back(2.0 * std::numbers::pi * static_cast<double>(j) / n);
    if (breaks.back() < std::numbers::pi) breaks.push_back(std::numbers::pi);

    for (long m = 1; m <= M; ++m) {
        // Enough subpanels that each holds a few oscillations of sin(m x) at most.
        const long sub = std::max<long>(4, (m + n) / 2);
        double acc = 0.0;
        for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            const double lo = breaks[p];
            const double hi = breaks[p + 1];
            const double h = (hi - lo) / static_cast<double>(sub);
            for (long s = 0; s < sub; ++s) {
                const double a = lo + h * static_cast<double>(s);
                const double b = a + h;
                // Gauss nodes are interior, so the jumps at the panel ends are never sampled.
                auto f = [&](double x) {
                    return detail::dilated_sawtooth(sawtooth, n, x) * std::sin(static_cast<double>(m) * x);
                };
                acc += boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
            }
        }
        const double coef = 2.0 / std::numbers::pi * acc;
        rep.quadrature.push_back(coef);
        const Rational exact = A.at(m, n);
        rep.column.push_back(exact);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(coef - to_double(exact)));
    }
    return rep;
}

}  // namespace opzeta
