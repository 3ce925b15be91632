#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run shell(const std::string& cmd) {
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run run(const std::string& args, bool merge_stderr = false) {
  return shell(std::string("\"") + FDLAP_CLI_PATH + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null"));
}

struct Csv {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string get(const std::string& key) const {
    for (const auto& [k, v] : meta)
      if (k == key) return v;
    return {};
  }
  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    ADD_FAILURE() << "missing column " << name;
    return 0;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

Csv parse(const std::string& text) {
  Csv c;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      c.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    } else if (c.columns.empty()) {
      c.columns = split(line);
    } else if (!line.empty()) {
      c.rows.push_back(split(line));
    }
  }
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fdlap_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(CliKernel, OneDimensionalHalfOrder) {
  const auto r = run("kernel --s 0.5 --n 4 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  ASSERT_EQ(c.rows.size(), 5u);
  EXPECT_EQ(c.rows[0][c.col("main_term")], "");
  EXPECT_NEAR(std::stod(c.rows[1][c.col("kernel")]), 4.0 / (3.0 * std::numbers::pi), 1e-15);
  for (std::size_t m = 1; m < c.rows.size(); ++m)
    EXPECT_NEAR(std::stod(c.rows[m][c.col("kernel")]) - std::stod(c.rows[m][c.col("main_term")]),
                std::stod(c.rows[m][c.col("difference")]), 1e-15);
}

TEST(CliKernel, TwoDimensionalNegativeOrderCentre) {
  const auto r = run("kernel --s -0.25 --dim 2 --radius 3 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  ASSERT_EQ(c.rows.size(), 10u);
  EXPECT_EQ(c.rows[0][c.col("entry")], "hypergeometric");
  EXPECT_NEAR(std::stod(c.rows[0][c.col("kernel")]), 0.7675659794842451, 1e-12);
}

TEST(CliKernel, InvalidOrderNamesInterval) {
  const auto r = run("kernel --s 1.5", true);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("(0, 1)"), std::string::npos) << r.out;
}

TEST(CliApply, GaussianOrigin) {
  const auto r = run("apply --pair gaussian --s 0.25 --n 1000 --range -3:3 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  EXPECT_EQ(c.get("tail"), "ignore");
  ASSERT_EQ(c.rows.size(), 7u);
  const auto& origin = c.rows[3];
  EXPECT_EQ(origin[c.col("j")], "0");
  const double want = std::pow(4.0, 0.25) * std::tgamma(0.75) / std::sqrt(std::numbers::pi);
  EXPECT_NEAR(std::stod(origin[c.col("exact")]), want, 1e-13);
  EXPECT_LE(std::abs(std::stod(origin[c.col("error")])), 0.02 * want);
  EXPECT_GE(std::stod(c.get("sup_error")), std::abs(std::stod(origin[c.col("error")])));
}

TEST(CliSolve, AutoTailFollowsSupport) {
  const auto narrow = parse(run("solve --pair ball-1s --s 0.25 --n 20 --range -5:5 --no-timestamp").out);
  EXPECT_EQ(narrow.get("tail"), "zero");
  const auto r = run("solve --pair ball-1s --s 0.25 --n 20 --range -20:20 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto wide = parse(r.out);
  EXPECT_EQ(wide.get("tail"), "ignore");
  EXPECT_EQ(wide.rows.size(), 41u);
  EXPECT_NE(run("solve --pair ball-1s --s 0.25 --n 20 --range -20:20 --tail zero").code, 0);
}

TEST(CliSolve, RejectsOrderAboveHalf) {
  EXPECT_EQ(run("solve --pair ball-1s --s 0.6 --n 20 --range -2:2").code, 2);
}

TEST(CliApply, RieszNeedsOffset) {
  EXPECT_EQ(run("apply --pair riesz2d --s 0.3 --range -1:0").code, 2);
  const auto r = run("apply --pair riesz2d --s 0.3 --n 40 --range -1:0 --offset half --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  EXPECT_EQ(c.get("dim"), "2");
  EXPECT_EQ(c.rows.size(), 4u);
  EXPECT_NEAR(std::stod(c.rows[0][c.col("x1")]), -0.05, 1e-15);
}

TEST(CliApply, Deterministic) {
  const std::string args = "apply --pair algebraic --s 0.3 --n 200 --range -4:4 --no-timestamp";
  EXPECT_EQ(run(args).out, run(args).out);
  const auto stamped = run("apply --pair algebraic --s 0.3 --n 200 --range -4:4");
  EXPECT_EQ(stamped.out.rfind("# generated: ", 0), 0u);
}

TEST(CliApply, JsonFormat) {
  const auto r = run("apply --pair gaussian --s 0.5 --n 100 --range -1:1 --format json --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["meta"]["pair"], "gaussian");
  EXPECT_EQ(j["columns"].size(), 5u);
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][1][0], 0);
  EXPECT_FALSE(j["meta"].contains("generated"));
}

TEST(CliApply, InputFileMatchesPair) {
  const auto path = scratch("bump.csv");
  {
    std::ofstream f(path);
    f << "# hint: compact\nj,value\n";
    for (long j = -10; j <= 10; ++j) f << j << ',' << std::max(0.0, 1.0 - 0.01 * j * j) << '\n';
  }
  const auto r = run("apply --input " + path.string() + " --s 0.4 --n 15 --range -5:5 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  EXPECT_EQ(c.get("tail"), "zero");
  EXPECT_EQ(c.columns, (std::vector<std::string>{"j", "x", "value"}));
  EXPECT_EQ(c.rows.size(), 11u);
  EXPECT_GT(std::stod(c.rows[5][2]), 0.0);
  EXPECT_EQ(run("apply --input " + path.string() + " --pair gaussian").code, 1);
  EXPECT_EQ(run("apply --input /nonexistent/file.csv").code, 1);
}

TEST(CliConverge, PassDegenerateDescriptive) {
  const auto pass = run("converge --pair ball-1s --s 0.25 --no-timestamp");
  EXPECT_EQ(pass.code, 0);
  const auto c = parse(pass.out);
  EXPECT_EQ(c.get("pass"), "true");
  EXPECT_GE(std::stod(c.get("slope")), 0.45);
  EXPECT_EQ(c.rows.size(), 4u);
  EXPECT_EQ(run("converge --pair constant --s 0.25").code, 3);
  const auto two = run("converge --pair ball-1s --dim 2 --s 0.25 --h-list 0.4,0.2,0.1 --no-timestamp");
  EXPECT_EQ(two.code, 0);
  EXPECT_EQ(parse(two.out).get("descriptive"), "true");
  EXPECT_EQ(run("converge --pair ball-1s --s 0.25 --h-list 0.1,0.2,0.05").code, 1);
}

TEST(CliFigure, ListAndPreset) {
  const auto list = run("figure --list");
  ASSERT_EQ(list.code, 0);
  EXPECT_EQ(parse(list.out).rows.size(), 13u);
  const auto r = run("figure 5 --no-timestamp");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  EXPECT_EQ(c.get("N"), "30");
  EXPECT_EQ(c.get("tail"), "zero");
  EXPECT_EQ(c.rows.size(), 41u);
  EXPECT_EQ(run("figure 14").code, 1);
}

TEST(CliPairs, Listing) {
  const auto r = run("pairs");
  ASSERT_EQ(r.code, 0);
  const auto c = parse(r.out);
  ASSERT_EQ(c.rows.size(), 6u);
  EXPECT_EQ(c.rows[4][0], "riesz2d");
}

TEST(CliOutput, EnvironmentDirectoryAndExplicitFile) {
  const auto dir = scratch("out");
  std::filesystem::create_directories(dir);
  const auto r = shell("FDLAP_OUTPUT_DIR=" + dir.string() + " \"" + FDLAP_CLI_PATH +
                       "\" kernel --s 0.3 --n 2 --format json 2>/dev/null");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "kernel.json"));
  const auto file = scratch("k.csv");
  EXPECT_EQ(run("kernel --s 0.3 --n 2 --output " + file.string()).code, 0);
  EXPECT_TRUE(std::filesystem::exists(file));
  EXPECT_EQ(run("kernel --s 0.3 --n 2 --output /nonexistent/dir/k.csv").code, 1);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("apply --pair gaussian --bogus").code, 1);
  EXPECT_EQ(run("apply --pair nosuch").code, 1);
  EXPECT_EQ(run("apply --pair gaussian --range 3:1").code, 1);
  EXPECT_EQ(run("apply --pair gaussian --dim 2").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}
