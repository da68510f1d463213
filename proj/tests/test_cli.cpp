#include <bimon/cli.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bimon;
using namespace bimon::cli;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = BIMON_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bimon_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t data_rows(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') ++n;
  return n > 0 ? n - 1 : 0;
}

RunConfig config(const char* text, const fs::path& out) {
  RunConfig c = config_from_json(json::parse(text), source_dir / "samples");
  c.output_dir = out.string();
  return c;
}

int run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + std::string(BIMON_CLI) + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Config, Parsing) {
  const RunConfig c = config_from_json(json::parse(R"j({"domain": "halfplane", "u1": 1, "u4": "t/(1+t^2)"})j"));
  EXPECT_EQ(c.domain, DomainTag::upper_half_plane);
  EXPECT_EQ(c.u1.expression, "1");
  EXPECT_EQ(c.quadrature_nodes, 2048);
  EXPECT_EQ(c.methods().size(), 1u);
  EXPECT_EQ(c.grid.size(), default_grid(DomainTag::upper_half_plane).size());
  EXPECT_TRUE(c.verify);
  EXPECT_EQ(c.output_dir, "out");
}

TEST(Config, Rejections) {
  const auto bad = [](const char* text) { EXPECT_THROW(config_from_json(json::parse(text)), ConfigError) << text; };
  bad(R"j({"domain": "square", "u1": "1", "u4": "0"})j");
  bad(R"j({"domain": "disk", "u4": "0"})j");
  bad(R"j({"domain": "disk", "u1": "1", "u4": "0", "colour": 3})j");
  bad(R"j({"domain": "disk", "u1": "1", "u4": "0", "method": "fast"})j");
  bad(R"j({"domain": "disk", "u1": "1", "u4": "0", "quadrature_nodes": 2})j");
  bad(R"j({"domain": "disk", "u1": "1", "u4": "0", "threads": 0})j");
  bad(R"j({"domain": "disk", "u1": "1", "u4": "0", "output": {"format": "xml"}})j");
  EXPECT_THROW(load_config((source_dir / "samples" / "missing.json").string()), IoError);
}

TEST(Solve, CosineDataReportsTheCorrectionConstant) {
  const fs::path out = scratch("cos");
  std::ostringstream o, e;
  ASSERT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "cos(theta)", "u4": "0"})j", out), o, e), 0) << e.str();
  const json r = json::parse(slurp(out / "report.json"));
  EXPECT_NEAR(r["constants"]["b1"].get<double>(), -0.5, 1e-10);
  EXPECT_NEAR(r["constants"]["b2"].get<double>(), 0.0, 1e-10);
  EXPECT_NEAR(r["constants"]["b"].get<double>(), 0.0, 1e-10);
  EXPECT_TRUE(r["verified"].get<bool>());
  EXPECT_EQ(r["method"], "explicit");
  EXPECT_EQ(data_rows(out / "field.csv"), 9u * 64u);
  EXPECT_TRUE(slurp(out / "field.csv").starts_with("# grid polar"));
}

TEST(Solve, TableDataFromFile) {
  const fs::path out = scratch("table");
  std::ostringstream o, e;
  RunConfig c = config(R"j({"domain": "disk", "u1": {"file": "disk_table.csv"}, "u4": "0"})j", out);
  EXPECT_EQ(run_solve(c, o, e), 0) << e.str();
  c.u1.file = "nonexistent.csv";
  EXPECT_EQ(run_solve(c, o, e), 4);
}

TEST(Solve, ExitCodes) {
  const fs::path out = scratch("codes");
  std::ostringstream o, e;
  EXPECT_EQ(run_solve(config(R"j({"domain": "halfplane", "u1": "atan(t)", "u4": "0"})j", out), o, e), 3);
  EXPECT_NE(e.str().find("limit"), std::string::npos);
  EXPECT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "cos(theta", "u4": "0"})j", out), o, e), 2);
  EXPECT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "cos(t)", "u4": "0"})j", out), o, e), 2);
  EXPECT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "foo(theta)", "u4": "0"})j", out), o, e), 2);
  // a regular file where the output directory should be
  fs::create_directories(out);
  std::ofstream(out / "blocker") << "x";
  EXPECT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "1", "u4": "0"})j", out / "blocker" / "sub"), o, e), 4);
}

TEST(Solve, BothMethodsAgree) {
  const fs::path out = scratch("both");
  std::ostringstream o, e;
  ASSERT_EQ(run_solve(config(R"j({"domain": "disk", "u1": "1", "u4": "2*sin(theta)^2", "method": "both"})j", out), o, e),
            0)
      << e.str();
  const json cmp = json::parse(slurp(out / "compare.json"));
  for (const char* k : {"max_dU1", "max_dU4", "spread_U2", "spread_U3"}) EXPECT_LE(cmp[k].get<double>(), 1e-6) << k;
  EXPECT_TRUE(fs::exists(out / "field_pipeline.csv"));
  EXPECT_TRUE(fs::exists(out / "report_pipeline.json"));
}

TEST(Solve, JsonFieldOutput) {
  const fs::path out = scratch("json");
  std::ostringstream o, e;
  ASSERT_EQ(run_solve(config(R"j({"domain": "halfplane", "u1": "1/(1+t^2)", "u4": "0",
                                 "grid": {"x": [-1, 1, 3], "y": [0.5, 1, 2]}, "output": {"format": "json"}})j",
                             out),
                      o, e),
            0);
  const json f = json::parse(slurp(out / "field.json"));
  ASSERT_TRUE(f.contains("rows"));
  EXPECT_EQ(f["rows"].size(), 6u);
  EXPECT_EQ(f["rows"][0].size(), 6u);
  const json r = json::parse(slurp(out / "report.json"));
  ASSERT_TRUE(r["at_infinity"].is_array());
  EXPECT_NEAR(r["at_infinity"][0].get<double>(), 0.0, 1e-8);
}

TEST(Plotdata, FourComponentFiles) {
  const fs::path out = scratch("plot");
  std::ostringstream o, e;
  ASSERT_EQ(emit_plotdata(config(R"j({"domain": "disk", "u1": "cos(theta)", "u4": "sin(theta)^2",
                                     "grid": {"r": [0.2, 0.8, 4], "theta": 16}})j",
                                 out),
                          o, e),
            0)
      << e.str();
  for (int l = 1; l <= 4; ++l) {
    const fs::path p = out / ("U" + std::to_string(l) + ".csv");
    ASSERT_TRUE(fs::exists(p));
    EXPECT_EQ(data_rows(p), 64u);
  }
}

TEST(Verify, BuiltinFixtures) {
  std::ostringstream o, e;
  EXPECT_EQ(run_verify(std::nullopt, o, e), 0) << o.str();
  EXPECT_NE(o.str().find("all checks passed"), std::string::npos);
  std::ostringstream o2;
  EXPECT_EQ(run_verify_file((source_dir / "samples" / "disk_coarse.json").string(), o2, e), 1);
  std::ostringstream o3;
  EXPECT_EQ(run_verify_file((source_dir / "samples" / "halfplane_pipeline.json").string(), o3, e), 0) << o3.str();
}

TEST(Binary, ExitCodesAndDeterminism) {
  const fs::path a = scratch("bin_a"), b = scratch("bin_b");
  const std::string cfg = "\"" + (source_dir / "samples" / "disk_manufactured.json").string() + "\"";
  ASSERT_EQ(run_binary("solve " + cfg + " --output \"" + a.string() + "\"", "BIMON_THREADS=1"), 0);
  ASSERT_EQ(run_binary("solve " + cfg + " --output \"" + b.string() + "\"", "BIMON_THREADS=4"), 0);
  for (const char* f : {"field.csv", "field_pipeline.csv", "report.json", "report_pipeline.json", "compare.json"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  EXPECT_EQ(run_binary("solve \"" + (source_dir / "samples" / "halfplane_atan.json").string() + "\" --output \"" +
                       a.string() + "\""),
            3);
  EXPECT_EQ(run_binary("solve /nonexistent/config.json"), 4);
  EXPECT_EQ(run_binary("frobnicate"), 2);
}
