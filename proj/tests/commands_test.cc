#include "commands.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgsim/circuit.h"

using namespace lgsim;
using namespace lgsim::cli;

namespace {

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("lgsim_commands_test_" + name);
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// U(theta) with a 1% angle error.
Matrix2c skewed_rotation(double theta) { return system_rotation(1.01 * theta); }

}  // namespace

TEST(cmd_run, default_config_violates) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run({}, out, err), kExitOk);
    EXPECT_NE(out.str().find("verdict,violates_moderate"), std::string::npos);
    EXPECT_TRUE(err.str().empty());
}

TEST(cmd_run, theta_zero_exits_with_failure) {
    CommonOptions opts;
    opts.theta = "0";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(opts, out, err), kExitFailure);
    EXPECT_NE(out.str().find("verdict,no_violation"), std::string::npos);
}

TEST(cmd_run, config_file_and_overrides) {
    const auto path = temp_file("hyper.cfg");
    {
        std::ofstream f(path);
        f << "T = 2.7\npreparation = hyperpolarized\n";
    }
    CommonOptions opts;
    opts.config_path = path.string();
    opts.theta = "deg:120";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(opts, out, err), kExitOk);
    EXPECT_NE(out.str().find("verdict,violates_adversarial"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(cmd_run, bad_config_is_usage_error) {
    const auto path = temp_file("bad.cfg");
    {
        std::ofstream f(path);
        f << "temperature = 2.7\n";
    }
    CommonOptions opts;
    opts.config_path = path.string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(opts, out, err), kExitUsage);
    EXPECT_NE(err.str().find("temperature"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(cmd_run, missing_config_is_io_error) {
    CommonOptions opts;
    opts.config_path = "/nonexistent/lgsim.cfg";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(opts, out, err), kExitIo);
}

TEST(cmd_run, writes_out_file) {
    const auto path = temp_file("run.csv");
    CommonOptions opts;
    opts.out_path = path.string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(opts, out, err), kExitOk);
    EXPECT_TRUE(out.str().empty());
    EXPECT_EQ(slurp(path).rfind("field,value\n", 0), 0u);
    std::filesystem::remove(path);
}

TEST(cmd_landscape, grid_rows) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_landscape({}, 3, 3, out, err), kExitOk);
    std::istringstream in(out.str());
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    EXPECT_EQ(n, 10u);
}

TEST(cmd_landscape, unwritable_path_is_io_error) {
    CommonOptions opts;
    opts.out_path = "/nonexistent/dir/grid.csv";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_landscape(opts, 3, 3, out, err), kExitIo);
    EXPECT_NE(err.str().find("/nonexistent/dir/grid.csv"), std::string::npos);
}

TEST(cmd_landscape, degenerate_grid_is_usage_error) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_landscape({}, 1, 3, out, err), kExitUsage);
}

TEST(cmd_landscape, jobs_do_not_change_output) {
    CommonOptions one, four;
    four.jobs = 4;
    std::ostringstream a, b, err;
    cmd_landscape(one, 40, 17, a, err);
    cmd_landscape(four, 40, 17, b, err);
    EXPECT_EQ(a.str(), b.str());
}

TEST(cmd_verify, passes_and_reports_critical_venalities) {
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(out), kExitOk);
    EXPECT_NE(out.str().find("10/10 criteria passed"), std::string::npos);
    EXPECT_NE(out.str().find("moderate 0.25, adversarial 0.1"), std::string::npos);
}

TEST(cmd_verify, detects_skewed_rotation) {
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(out, AcceptanceHarness{skewed_rotation}), kExitFailure);
    EXPECT_NE(out.str().find("FAIL  [ 3]"), std::string::npos);
}

TEST(cmd_bounds, single_point) {
    CommonOptions opts;
    opts.theta = "deg:120";
    opts.zeta = 0.056;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_bounds(opts, out, err), kExitOk);
    EXPECT_NE(out.str().find(",true,true,0.25,0.1"), std::string::npos);
}

TEST(cmd_bounds, out_of_range_zeta_is_usage_error) {
    CommonOptions opts;
    opts.zeta = 2.0;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_bounds(opts, out, err), kExitUsage);
}

TEST(cmd_mr_polytope, lists_vertices_and_extrema) {
    CommonOptions opts;
    opts.zeta = 0.1;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_mr_polytope(opts, out, err), kExitOk);
    const std::string s = out.str();
    EXPECT_NE(s.find("vertex,uuu,1,1,1,4,2"), std::string::npos);
    EXPECT_NE(s.find("min_f,"), std::string::npos);
    EXPECT_NE(s.find("stationarity_counterexample,"), std::string::npos);
    EXPECT_NE(s.find("corrupted_adversarial_bound,zeta=0.1,"), std::string::npos);
}
