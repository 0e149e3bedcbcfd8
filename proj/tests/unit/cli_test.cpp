#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"

namespace seev2x::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("seev2x_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  int cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

constexpr const char* kNoHazard =
    "scenario:\n  kind: expressway\n  mode: semantic\n  duration: 120\n  warmup: 30\n";

constexpr const char* kWithHazard =
    "scenario:\n  kind: expressway\n  mode: semantic\n  duration: 120\n  warmup: 30\n"
    "hazard: {}\n";

TEST_F(CliTest, RunWritesOutputsAndFreeFlowSummary) {
  auto s = write("a.yaml", kNoHazard);
  ASSERT_EQ(cli({"run", "--scenario", s.string(), "--out", (dir_ / "o").string()}), kOk)
      << err_.str();
  ASSERT_TRUE(fs::exists(dir_ / "o" / "ticks.csv"));
  auto summary = slurp(dir_ / "o" / "summary.csv");
  std::istringstream is(summary);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "weighted_mean_speed_mps,caution_activations,completed,collision");
  EXPECT_NEAR(std::stod(row.substr(0, row.find(','))), 20.0, 0.5);
}

TEST_F(CliTest, RepeatedRunsByteIdentical) {
  auto s = write("a.yaml", kWithHazard);
  ASSERT_EQ(cli({"run", "--scenario", s.string(), "--out", (dir_ / "x").string(), "--seed", "5"}), kOk);
  ASSERT_EQ(cli({"run", "--scenario", s.string(), "--out", (dir_ / "y").string(), "--seed", "5"}), kOk);
  EXPECT_EQ(slurp(dir_ / "x" / "ticks.csv"), slurp(dir_ / "y" / "ticks.csv"));
  EXPECT_EQ(slurp(dir_ / "x" / "summary.csv"), slurp(dir_ / "y" / "summary.csv"));
}

TEST_F(CliTest, ModeBothWritesTwoDirectories) {
  auto s = write("a.yaml", kWithHazard);
  ASSERT_EQ(cli({"run", "--scenario", s.string(), "--out", (dir_ / "b").string(), "--mode", "both"}),
            kOk);
  EXPECT_TRUE(fs::exists(dir_ / "b" / "traditional" / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "b" / "semantic" / "summary.csv"));
  EXPECT_NE(slurp(dir_ / "b" / "traditional" / "summary.csv"),
            slurp(dir_ / "b" / "semantic" / "summary.csv"));
}

TEST_F(CliTest, BadScenarioExitsTwoWithoutOutputs) {
  auto s = write("bad.yaml", "scenario:\n  kind: expressway\n  mode: semantic\n  spawn_rate: -1\n");
  auto out = dir_ / "never";
  EXPECT_EQ(cli({"run", "--scenario", s.string(), "--out", out.string()}), kValidation);
  EXPECT_NE(err_.str().find("spawn_rate"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(cli({"sweep", "--scenario", s.string(), "--out", out.string()}), kValidation);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, BadFlagsExitTwo) {
  auto s = write("a.yaml", kNoHazard);
  EXPECT_EQ(cli({"run", "--scenario", s.string()}), kValidation);  // --out missing
  EXPECT_EQ(cli({"sweep", "--scenario", s.string(), "--out", (dir_ / "o").string(), "--locations",
                 "0-9"}),
            kValidation);
  EXPECT_EQ(cli({"sweep", "--scenario", s.string(), "--out", (dir_ / "o").string(), "--mode",
                 "semantic"}),
            kValidation);
  EXPECT_EQ(cli({"run", "--scenario", (dir_ / "missing.yaml").string(), "--out",
                 (dir_ / "o").string()}),
            kValidation);
  EXPECT_EQ(cli({"bogus"}), kValidation);
}

TEST_F(CliTest, ValidateSubcommand) {
  auto s = write("a.yaml", kWithHazard);
  EXPECT_EQ(cli({"validate", "--scenario", s.string()}), kOk);
  EXPECT_NE(out_.str().find("ok:"), std::string::npos);
}

TEST_F(CliTest, SweepGridAndParallelismIdentical) {
  auto s = write("a.yaml", kWithHazard);
  const std::vector<std::string> common{"--scenario", s.string(), "--locations", "1-6", "--rates",
                                        "0.3,0.05,0.1", "--seeds", "2"};
  auto args1 = std::vector<std::string>{"sweep", "--out", (dir_ / "p1").string(), "--parallel", "1"};
  auto args4 = std::vector<std::string>{"sweep", "--out", (dir_ / "p4").string(), "--parallel", "4"};
  args1.insert(args1.end(), common.begin(), common.end());
  args4.insert(args4.end(), common.begin(), common.end());
  ASSERT_EQ(cli(args1), kOk) << err_.str();
  ASSERT_EQ(cli(args4), kOk) << err_.str();
  auto grid = slurp(dir_ / "p1" / "gap_grid.csv");
  EXPECT_EQ(grid, slurp(dir_ / "p4" / "gap_grid.csv"));
  EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 19);
  EXPECT_FALSE(fs::exists(dir_ / "p1" / "failures.csv"));
}

TEST_F(CliTest, NoHazardSweepAllZero) {
  auto s = write("a.yaml", kNoHazard);
  ASSERT_EQ(cli({"sweep", "--scenario", s.string(), "--out", (dir_ / "z").string(), "--locations",
                 "1,6", "--seeds", "2"}),
            kOk);
  std::istringstream is(slurp(dir_ / "z" / "gap_grid.csv"));
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_NE(line.find(",0.000000,0.000000,2"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 2);
}

// Drivers that barely brake and keep almost no gap run into the queue that a
// hard speed cap builds behind the hazard.
constexpr const char* kCollides =
    "scenario:\n  kind: expressway\n  mode: traditional\n  duration: 200\n  warmup: 30\n"
    "  spawn_rate: 0.5\n"
    "idm: {s0: 0.5, T: 0.2, b: 0.2, a_max: 2.0}\n"
    "behavior: {speed_cap: 0.5}\n"
    "hazard: {}\n";

TEST_F(CliTest, CollisionExitsThree) {
  auto s = write("c.yaml", kCollides);
  EXPECT_EQ(cli({"run", "--scenario", s.string(), "--out", (dir_ / "c").string()}), kCollision)
      << out_.str() << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "c" / "summary.csv"));
}

TEST_F(CliTest, PartialSweepExitsFour) {
  auto s = write("c.yaml", kCollides);
  EXPECT_EQ(cli({"sweep", "--scenario", s.string(), "--out", (dir_ / "f").string(), "--locations",
                 "1", "--rates", "0.01,0.5", "--seeds", "1"}),
            kPartialSweep)
      << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "f" / "gap_grid.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "f" / "failures.csv"));
}

}  // namespace
}  // namespace seev2x::cli
