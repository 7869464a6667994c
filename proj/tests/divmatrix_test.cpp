#include <gtest/gtest.h>

#include <sstream>

#include "opzeta/divmatrix.hpp"
#include "oracles.hpp"

using namespace opzeta;

TEST(DivisibilityMatrix, PatternMatchesBruteForce) {
    const auto A = build_matrix(64);
    for (long m = 1; m <= 64; ++m)
        for (long n = 1; n <= 64; ++n) EXPECT_EQ(A.at(m, n), m % n == 0 ? Rational(n, m) : Rational(0)) << m << "," << n;
    EXPECT_EQ(static_cast<long>(A.nnz()), oracle::divisor_pair_count(64));
}

TEST(DivisibilityMatrix, UnitLowerTriangular) {
    const auto A = build_matrix(40);
    for (const auto& e : A.entries()) {
        EXPECT_GE(e.row, e.col);
        if (e.row == e.col) EXPECT_EQ(e.value, 1);
    }
}

TEST(DivisibilityMatrix, TripletExport) {
    std::ostringstream os;
    build_matrix(6).write_triplets(os);
    std::istringstream is(os.str());
    long lines = 0;
    long pm = 0, pn = 0;
    for (std::string line; std::getline(is, line); ++lines) {
        std::istringstream ls(line);
        long m, n, num, den;
        ls >> m >> n >> num >> den;
        EXPECT_TRUE(m > pm || (m == pm && n > pn));
        EXPECT_EQ(Rational(num, den), Rational(n, m));
        pm = m;
        pn = n;
    }
    EXPECT_EQ(lines, 14);
}

TEST(DivisibilityMatrix, ApplyAndDimensionMismatch) {
    const auto A = build_matrix(4);
    const std::vector<Rational> e1{1, 0, 0, 0};
    const auto col = matrix_apply(A, e1);
    EXPECT_EQ(col, (std::vector<Rational>{1, Rational(1, 2), Rational(1, 3), Rational(1, 4)}));
    const std::vector<Rational> bad{1, 2};
    try {
        matrix_apply(A, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::dimension_mismatch);
    }
}

TEST(Consistency, ColumnsMatchQuadrature) {
    for (long n : {1L, 2L, 3L, 7L}) {
        const auto rep = consistency_check(n, 32);
        EXPECT_LT(rep.max_abs_deviation, 1e-8) << n;
    }
    // Column 1 against the analytic coefficients 1/m of (pi - x)/2.
    const auto rep = consistency_check(1, 32);
    for (long m = 1; m <= 32; ++m) EXPECT_NEAR(rep.quadrature[static_cast<std::size_t>(m - 1)], 1.0 / m, 1e-12);
}

TEST(Consistency, BadArguments) {
    EXPECT_THROW(consistency_check(5, 4), Error);
    EXPECT_THROW(build_matrix(0), Error);
}
