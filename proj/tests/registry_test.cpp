#include <gtest/gtest.h>

#include <numbers>
#include <set>
#include <sstream>

#include "opzeta/registry.hpp"
#include "opzeta/verify.hpp"
#include "oracles.hpp"

using namespace opzeta;
constexpr double pi = std::numbers::pi;

namespace {

const Registry& registry() {
    static const Registry reg = Registry::load(OPZETA_REGISTRY_PATH);
    return reg;
}

Registry parse_text(const std::string& body) {
    std::istringstream is("format = opzeta-registry\nversion = 1\n" + body);
    return Registry::parse(is);
}

const char* kBlock = R"(
[identity]
id = t
operator = zeta
shift = 1
trig = sin
lhs = partial_sum
rhs = clausen sin 1
domain = [0, pi]
anomaly_parity = even
poles = 0
profile = 0.1:pi:5 tol=1e-6
)";

}  // namespace

TEST(Parsing, RealsWithPi) {
    EXPECT_DOUBLE_EQ(parse_real("pi"), pi);
    EXPECT_DOUBLE_EQ(parse_real("2pi-0.1"), 2 * pi - 0.1);
    EXPECT_DOUBLE_EQ(parse_real("-pi/2"), -pi / 2);
    EXPECT_DOUBLE_EQ(parse_real("3*pi/4"), 0.75 * pi);
    EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
    EXPECT_DOUBLE_EQ(parse_real("-1.5e+2"), -150.0);
    EXPECT_THROW(parse_real("x"), Error);
    EXPECT_THROW(parse_real(""), Error);
}

TEST(Parsing, IntervalsAndGrids) {
    const auto iv = Interval::parse("(0, 2pi]");
    EXPECT_FALSE(iv.contains(0.0));
    EXPECT_TRUE(iv.contains(2 * pi));
    EXPECT_TRUE(iv.contains(1e-9));
    EXPECT_FALSE(Interval::parse("(-pi/2, pi/2)").contains(pi / 2));
    const auto g = Grid::parse("0.1:3.1:4");
    const auto pts = g.points();
    ASSERT_EQ(pts.size(), 4u);
    EXPECT_DOUBLE_EQ(pts.front(), 0.1);
    EXPECT_DOUBLE_EQ(pts.back(), 3.1);
    EXPECT_THROW(Grid::parse("1:2"), Error);
    EXPECT_THROW(Grid::parse("2:1:5"), Error);
    EXPECT_THROW(Grid::parse("0:1:0"), Error);
}

TEST(Registry, ContainsEveryIdentity) {
    const std::set<std::string> expected{"eq1",   "eq2",   "eq3_1", "eq3_2",    "eq3_3",    "eq3_4",       "eq3_5",
                                         "eq4_1", "eq4_2", "eq4_3", "eq4_4",    "eq4_5",    "eq5",         "eq6",
                                         "eq10",  "eq17",  "eq18",  "eq19",     "eq21_sin", "sec4_cos",    "beta_sin_s0",
                                         "beta_cos_s0",    "beta_sin_s1"};
    std::set<std::string> got;
    for (const auto& r : registry().records()) got.insert(r.id);
    EXPECT_EQ(got, expected);
}

TEST(Registry, DomainsAsStated) {
    EXPECT_EQ(registry().at("eq2").domain.text, "[0, pi]");
    EXPECT_EQ(registry().at("eq1").domain.text, "(0, pi]");
    EXPECT_EQ(registry().at("beta_sin_s1").domain.text, "(-pi/2, pi/2)");
}

TEST(Registry, FormatErrors) {
    EXPECT_NO_THROW(parse_text(kBlock));
    EXPECT_THROW(parse_text(std::string(kBlock) + kBlock), Error);  // duplicate id
    std::istringstream no_header(kBlock);
    EXPECT_THROW(Registry::parse(no_header), Error);
    std::string bad = kBlock;
    bad.replace(bad.find("clausen sin 1"), 13, "clausen tan 1");
    EXPECT_THROW(parse_text(bad), Error);
    std::string missing = kBlock;
    missing.erase(missing.find("domain"), std::string("domain = [0, pi]\n").size());
    EXPECT_THROW(parse_text(missing), Error);
    std::istringstream wrong_version("format = opzeta-registry\nversion = 9\n");
    EXPECT_THROW(Registry::parse(wrong_version), Error);
}

TEST(Registry, DefaultProfilesPass) {
    for (const auto& r : registry().records()) {
        const auto rep = verify(r);
        EXPECT_TRUE(rep.pass) << r.id << " max dev " << rep.max_abs_deviation;
        EXPECT_EQ(rep.observed_poles, rep.expected_poles) << r.id;
    }
}

TEST(Registry, ExactModeForPolynomialIdentities) {
    for (const auto& r : registry().records()) {
        if (r.rhs_kind == RhsKind::closed) {
            EXPECT_THROW(verify(r, r.profile.grid, 1e-6, true), Error) << r.id;
            continue;
        }
        EXPECT_TRUE(verify(r, r.profile.grid, 1e-6, true).pass) << r.id;
    }
}

TEST(Registry, GridOutsideDomain) {
    try {
        verify(registry().at("eq2"), Grid::parse("-1:0:5"), 1e-6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::outside_domain);
    }
}

TEST(Registry, FailingToleranceReportsFail) {
    const auto rep = verify(registry().at("eq2"), Grid::parse("0.5:3:5"), 1e-12);
    EXPECT_FALSE(rep.pass);
}

TEST(Registry, EndpointOfStatedDomain) {
    // The series is 0 at x = 0 while (pi - x)/2 is pi/2; the point is reported, not hidden.
    const auto rep = verify(registry().at("eq2"), Grid::parse("0:1:3"), 1e-6);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.points.front().method, "EndpointConditional");
}

TEST(ClosedForms, RegularTaylorAgainstBernoulliAndSecantOracles) {
    const auto& forms = named_closed_forms();
    const auto cot = forms.at("cot_half").regular_taylor(16);
    const auto ref_cot = oracle::half_cot_regular(15);
    for (unsigned n = 0; n <= 15; ++n) EXPECT_EQ(cot[n], ref_cot[n]) << n;
    const auto csc = forms.at("neg_half_csc2_half").regular_taylor(16);
    const auto ref_csc = oracle::neg_half_csc2_regular(15);
    for (unsigned n = 0; n <= 15; ++n) EXPECT_EQ(csc[n], ref_csc[n]) << n;
    const auto sec = forms.at("half_sec").regular_taylor(16);
    const auto ref_sec = oracle::sec_series(15);
    for (unsigned n = 0; n <= 15; ++n) EXPECT_EQ(sec[n], ref_sec[n] / 2) << n;
    const auto lst = forms.at("half_log_sec_tan").regular_taylor(16);
    for (unsigned n = 0; n < 15; ++n) EXPECT_EQ(lst[n + 1], ref_sec[n] / 2 / Rational(n + 1)) << n;
}

TEST(Extraction, RegistryIdentities) {
    for (const auto& r : registry().records()) {
        if (r.extract_terms == 0) {
            EXPECT_THROW(extraction_problem(r), Error) << r.id;
            continue;
        }
        for (const auto& v : extract_special_values(extraction_problem(r))) EXPECT_TRUE(v.matched) << r.id << " " << v.argument;
    }
}
