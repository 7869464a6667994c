#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(OPZETA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, VerifyPassAndUsage) {
    EXPECT_EQ(run("verify eq2 --grid 0.1:3.1:50 --tol 1e-6").code, 0);
    EXPECT_EQ(run("verify eq6 --grid 0.1:6.1:50 --tol 1e-6").code, 0);
    EXPECT_EQ(run("verify eq2 --grid -1:0:5").code, 2);
    EXPECT_EQ(run("verify nosuch").code, 2);
    EXPECT_EQ(run("verify eq2 --grid 0.5:3:5 --tol 1e-13").code, 1);
    EXPECT_EQ(run("verify eq2 --grid 1:2").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, VerifyJsonSchema) {
    const auto r = run("verify eq1 --grid 0.5:3:4 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["points"].size(), 4u);
    for (const auto& p : j["points"])
        for (const char* key : {"id", "x", "lhs", "rhs", "deviation", "method"}) EXPECT_TRUE(p.contains(key)) << key;
}

TEST(Cli, VerifyCsvIsDeterministic) {
    const auto a = run("verify eq18 --format csv");
    const auto b = run("verify eq18 --format csv");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("id,x,lhs,rhs,deviation,method\n", 0), 0u);
    EXPECT_EQ(count_lines(a.out), 41);
}

TEST(Cli, VerifyExact) {
    EXPECT_EQ(run("verify eq17 --exact").code, 0);
    EXPECT_EQ(run("verify eq19 --exact").code, 0);
    EXPECT_EQ(run("verify eq1 --exact").code, 2);
}

TEST(Cli, Values) {
    const auto z = run("values zeta 0 --format json");
    ASSERT_EQ(z.code, 0);
    const auto j = nlohmann::json::parse(z.out);
    EXPECT_DOUBLE_EQ(j[0]["value"].get<double>(), -0.5);
    EXPECT_EQ(j[0]["method"], "exact");
    const auto b = nlohmann::json::parse(run("values beta -2 --format json").out);
    EXPECT_DOUBLE_EQ(b[0]["value"].get<double>(), -0.5);
    EXPECT_EQ(b[0]["exact"], "-1/2");
    const auto bn = nlohmann::json::parse(run("values bernoulli 12 --format json").out);
    EXPECT_EQ(bn[0]["exact"], "-691/2730");
    EXPECT_EQ(run("values zeta abc").code, 2);
    EXPECT_EQ(run("values bernoulli 1.5").code, 2);
    EXPECT_EQ(run("values zeta 1").code, 2);
    EXPECT_EQ(run("values gamma 1").code, 2);
}

TEST(Cli, Extract) {
    const auto r = run("extract eq17 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 6u);
    EXPECT_EQ(j[0]["argument"], 0);
    EXPECT_EQ(j[0]["value"], "-1/2");
    for (const auto& row : j) EXPECT_TRUE(row["matched"].get<bool>());
    EXPECT_EQ(run("extract beta_sin_s0").code, 0);
    EXPECT_EQ(run("extract eq5").code, 2);
    EXPECT_EQ(run("extract nosuch").code, 2);
}

TEST(Cli, Matrix) {
    const auto m = run("matrix --size 6");
    EXPECT_EQ(m.code, 0);
    EXPECT_EQ(count_lines(m.out), 14);
    EXPECT_EQ(m.out.substr(0, 8), "1 1 1 1\n");
    EXPECT_EQ(run("matrix --size 32 --check 1").code, 0);
    const auto a = nlohmann::json::parse(run("matrix --size 4 --apply 1 --format json").out);
    std::vector<std::string> got;
    for (const auto& row : a) got.push_back(row["value"]);
    EXPECT_EQ(got, (std::vector<std::string>{"1", "1/2", "1/3", "1/4"}));
    EXPECT_EQ(run("matrix --size 0").code, 2);
    EXPECT_EQ(run("matrix --size 4 --apply 5").code, 2);
}

TEST(Cli, List) {
    const auto r = run("list --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(count_lines(r.out), 24);
    EXPECT_EQ(run("--registry /nonexistent list").code, 2);
}
