#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli/commands.hpp"

namespace hicache::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hicache-cli-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, SimulateWritesBinaryTrace) {
    const fs::path path = scratch("sim.hitr");
    const RunResult r = invoke({"simulate", "--kind", "gp-se", "--dim", "16", "--steps", "50", "--length-scale", "8",
                                "--seed", "7", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(fs::file_size(path), 16u + 50u * 16u * 8u);
}

TEST(Cli, SimulateIsByteDeterministic) {
    const fs::path a = scratch("det-a.csv"), b = scratch("det-b.csv");
    for (const fs::path& p : {a, b}) {
        ASSERT_EQ(invoke({"simulate", "--kind", "ou", "--dim", "3", "--steps", "40", "--seed", "2", "--format", "csv",
                          "--out", p.string()})
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, PredictIntervalOneHasNoPredictedSteps) {
    const fs::path trace = scratch("p1.hitr");
    ASSERT_EQ(invoke({"simulate", "--dim", "4", "--steps", "20", "--out", trace.string()}).code, 0);
    const fs::path summary = scratch("p1.json");
    const RunResult r = invoke({"predict", "--trace", trace.string(), "--interval", "1", "--summary-out",
                                summary.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(summary));
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["oracle_calls"], 20);
    EXPECT_EQ(j["skipped"], 0);
    EXPECT_TRUE(j["mse_predicted"].is_null());
    EXPECT_EQ(j["speedup_proxy"], 1.0);
    // Steps CSV went to stdout: header plus 20 rows.
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 21);
}

TEST(Cli, PredictAffineTraceIsExactOnceWarm) {
    const fs::path trace = scratch("affine.hitr");
    ASSERT_EQ(invoke({"simulate", "--kind", "poly", "--degree", "1", "--noise", "0", "--dim", "4", "--steps", "50",
                      "--out", trace.string()})
                  .code,
              0);
    const fs::path summary = scratch("affine.json"), steps = scratch("affine-steps.csv");
    const RunResult r = invoke({"predict", "--trace", trace.string(), "--interval", "5", "--order", "1", "--sigma",
                                "0.7071067811865476", "--summary-out", summary.string(), "--steps-out",
                                steps.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const auto j = nlohmann::json::parse(slurp(summary));
    EXPECT_EQ(j["oracle_calls"], 10);
    EXPECT_LE(j["mse_predicted_warm"].get<double>(), 1e-18);
    EXPECT_EQ(slurp(steps).substr(0, 36), "t,mode,horizon,order_used,l2_error\n5");
}

TEST(Cli, CompareCsvShape) {
    const RunResult r = invoke({"compare", "--seeds", "3", "--interval", "4", "--orders", "1..2", "--sigma", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "order,horizon,n,n_undefined,r_mean,r_ci_low,r_ci_high,reference_mse,hermite_mse");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 2 * 3);
}

TEST(Cli, CompareJsonAndOrderList) {
    const RunResult r =
        invoke({"compare", "--seeds", "2", "--interval", "6", "--orders", "2,4", "--format", "json", "--cumulative"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["command"], "compare");
}

TEST(Cli, AblateStartsWithTaylorBaseline) {
    const RunResult r = invoke({"ablate-sigma", "--seeds", "3", "--sigmas", "0.5,1.0"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "basis,sigma,order,interval,n_seeds,mse,ratio_vs_taylor");
    EXPECT_EQ(first.substr(0, 8), "taylor,,");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, GaussTestReportsInsufficientShortTraces) {
    const RunResult r = invoke({"gauss-test", "--steps", "50", "--dim", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("insufficient"), std::string::npos);
}

TEST(Cli, GaussTestDegenerateOnPolynomialTrace) {
    const RunResult r = invoke({"gauss-test", "--kind", "poly", "--degree", "1", "--noise", "0", "--steps", "600",
                                "--dim", "2", "--max-order", "2", "--replicates", "99", "--n-ref", "64"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("degenerate"), std::string::npos) << r.out;
}

TEST(Cli, ConfigFileSuppliesOptions) {
    const fs::path cfg = scratch("sim.ini");
    const fs::path out = scratch("from-config.hitr");
    std::ofstream(cfg) << "kind=ou\ndim=2\nsteps=9\nout=" << out.string() << "\n";
    const RunResult r = invoke({"simulate", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(fs::file_size(out), 16u + 9u * 2u * 8u);
}

TEST(Cli, CommandLineOverridesConfigSection) {
    const fs::path cfg = scratch("sections.ini");
    const fs::path out = scratch("from-section.hitr");
    std::ofstream(cfg) << "[simulate]\ndim=5\nsteps=9\nout=" << out.string() << "\n[predict]\ninterval=3\n";
    const RunResult r = invoke({"simulate", "--steps", "4", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(fs::file_size(out), 16u + 4u * 5u * 8u);
    EXPECT_NE(invoke({"simulate", "--config", scratch("no-such.ini").string()}).code, 0);
}

TEST(Cli, ErrorsGiveNonZeroExitCodes) {
    EXPECT_NE(invoke({}).code, 0);
    EXPECT_NE(invoke({"bogus"}).code, 0);
    EXPECT_NE(invoke({"simulate"}).code, 0);  // --out is required
    const RunResult bad_sigma = invoke({"compare", "--seeds", "1", "--sigma", "1.5"});
    EXPECT_EQ(bad_sigma.code, 1);
    EXPECT_FALSE(bad_sigma.err.empty());
    EXPECT_EQ(invoke({"predict", "--trace", scratch("missing.hitr").string()}).code, 1);
    EXPECT_EQ(invoke({"simulate", "--out", scratch("x.bin").string(), "--format", "yaml"}).code, 1);
    EXPECT_EQ(invoke({"compare", "--orders", "3..1"}).code, 1);
}

TEST(Cli, FailedWriteLeavesNoFile) {
    const fs::path target = scratch("absent-dir") / "out.hitr";
    EXPECT_EQ(invoke({"simulate", "--out", target.string()}).code, 1);
    EXPECT_FALSE(fs::exists(target));
}

}  // namespace
}  // namespace hicache::cli
