#include <cmath>
#include <cstdio>
#include <numbers>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli_app.hpp"
#include "json.hpp"

using studentt::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SfExactClosedForm) {
    const Outcome r = invoke({"sf", "--nu", "3", "--a", "1.7320508075688772", "--exact"});
    EXPECT_EQ(r.code, 0) << r.err;
    const std::string header = "nu,a,method,order,sf\n3,1.73205080756888,exact,-1,";
    ASSERT_EQ(r.out.substr(0, header.size()), header);
    EXPECT_NEAR(std::stod(r.out.substr(header.size())), 0.25 - 1.0 / (2.0 * std::numbers::pi), 1e-13);
}

TEST(Cli, SfApproxOrder) {
    const Outcome r = invoke({"sf", "--nu", "50", "--a", "1.1", "--order", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["method"], "approx");
    EXPECT_EQ(j["order"], 3);
    const double want =
        studentt::survival_approx(studentt::DegreesOfFreedom{50}, 1.1, studentt::ApproxOrder::three);
    EXPECT_NEAR(j["sf"].get<double>(), want, 1e-15);
}

TEST(Cli, Constants) {
    const Outcome r = invoke({"constants"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* needle : {"0.137647", "0.353017", "0.758112", "0.1582"}) {
        EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
    }
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,computed,reference");
}

TEST(Cli, QuantileCenter) {
    const Outcome r =
        invoke({"quantile", "--nu", "100", "--alpha", "0.5", "--theorem2-level", "2", "--format",
                "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["lambda"].get<double>(), 0.0);
    EXPECT_EQ(j["method"], "theorem2");
    EXPECT_EQ(j["level"], 2);
    for (const char* key : {"lambda", "residual", "iterations", "method", "level"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST(Cli, QuantileRequiresMethod) {
    EXPECT_EQ(invoke({"quantile", "--nu", "10", "--alpha", "0.1"}).code, 2);
    EXPECT_EQ(invoke({"quantile", "--nu", "10", "--alpha", "0.1", "--oracle",
                      "--invert-order", "2"})
                  .code,
              2);
}

TEST(Cli, PdfAndRatio) {
    Outcome r = invoke({"pdf", "--nu", "4", "--x", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "nu,x,pdf\n4,0,0.375\n");
    r = invoke({"ratio", "--nu", "1000", "--x", "1", "--order", "3", "--log", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["form"], "log");
    EXPECT_NEAR(j["expansion"].get<double>(), j["exact"].get<double>(), 1e-11);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"bogus"}).code, 2);
    EXPECT_EQ(invoke({"pdf", "--nu", "4"}).code, 2);
    EXPECT_EQ(invoke({"sf", "--nu", "4", "--a", "1", "--order", "7"}).code, 2);
    EXPECT_EQ(invoke({"sf", "--nu", "4", "--a", "1", "--order", "1", "--exact"}).code, 2);
    EXPECT_EQ(invoke({"scan", "--nu-list", "10", "--order", "0", "--grid", "50"}).code, 2);
    EXPECT_EQ(invoke({"pdf", "--nu", "4", "--x", "0", "--format", "xml"}).code, 2);
}

TEST(Cli, NumericalErrors) {
    Outcome r = invoke({"pdf", "--nu", "2", "--x", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("degrees of freedom"), std::string::npos);
    r = invoke({"quantile", "--nu", "40", "--alpha", "1e-30", "--invert-order", "1"});
    EXPECT_EQ(r.code, 1);
    r = invoke({"slopes", "--order", "0", "--nu-list", "16", "32", "64"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, ScanCsvRoundTrip) {
    const Outcome r = invoke({"scan", "--nu-list", "16", "64", "256", "--order", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    const auto parsed = studentt::io::parse_scan_csv(in);
    ASSERT_EQ(parsed.size(), 3u);
    const double nus[] = {16, 64, 256};
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const auto direct =
            studentt::max_error_scan(studentt::DegreesOfFreedom{nus[i]}, studentt::ApproxOrder::one);
        const auto fmt = studentt::io::format_number;
        EXPECT_EQ(parsed[i].nu, nus[i]);
        EXPECT_EQ(parsed[i].order, studentt::ApproxOrder::one);
        EXPECT_EQ(fmt(parsed[i].max_error), fmt(direct.max_error));
        EXPECT_EQ(fmt(parsed[i].argmax_a), fmt(direct.argmax_a));
        EXPECT_EQ(parsed[i].grid_points, direct.grid_points);
        EXPECT_EQ(std::stod(fmt(direct.max_error)), parsed[i].max_error);
    }
}

TEST(Cli, ScanHeaderAndNoBulk) {
    const Outcome clipped = invoke({"scan", "--nu-list", "16", "--order", "1"});
    const Outcome full = invoke({"scan", "--nu-list", "16", "--order", "1", "--no-bulk"});
    ASSERT_EQ(clipped.code, 0);
    ASSERT_EQ(full.code, 0);
    EXPECT_EQ(clipped.out.substr(0, clipped.out.find('\n')), "nu,order,max_error,argmax_a,grid_points");
    std::istringstream a(clipped.out), b(full.out);
    EXPECT_LT(studentt::io::parse_scan_csv(a)[0].max_error,
              studentt::io::parse_scan_csv(b)[0].max_error);
}

TEST(Cli, ByteIdenticalRuns) {
    const std::vector<std::string> args{"slopes", "--order", "2", "--nu-list", "16", "32", "64",
                                        "128", "--format", "json"};
    const Outcome first = invoke(args);
    const Outcome second = invoke(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out);
}

TEST(Cli, SlopesJsonShape) {
    const Outcome r = invoke({"slopes", "--order", "0", "--nu-list", "16", "32", "64", "128",
                              "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_object());
    EXPECT_EQ(j["nu_values"].size(), 4u);
    EXPECT_EQ(j["errors"].size(), 4u);
    EXPECT_TRUE(j["excluded_nu"].is_array());
    EXPECT_NEAR(j["slope"].get<double>(), -1.0, 0.2);
    for (const auto& [key, value] : j.items()) {
        if (value.is_array()) {
            for (const auto& v : value) EXPECT_TRUE(v.is_number()) << key;
        }
    }
}

TEST(Cli, ScanJsonIsArray) {
    const Outcome r = invoke({"scan", "--nu-list", "32", "--order", "0", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j[0]["grid_points"], 2001);
}

TEST(Cli, OutputFile) {
    const std::string path = ::testing::TempDir() + "studentt_cli_out.csv";
    const Outcome r = invoke({"pdf", "--nu", "4", "--x", "0", "--output", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), "nu,x,pdf\n4,0,0.375\n");
    std::remove(path.c_str());
}
