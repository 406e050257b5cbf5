#include "locus/cli.hpp"

#include "locus/analytic.hpp"
#include "locus/json_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace locus {
namespace {

using testing_support::fixture;
using testing_support::load;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "locus");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  ::testing::internal::CaptureStdout();
  ::testing::internal::CaptureStderr();
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  Outcome o{code, ::testing::internal::GetCapturedStdout(), ::testing::internal::GetCapturedStderr()};
  return o;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("locus_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Cli, SolveCircle) {
  const Outcome o = run_cli({"solve", "-i", fixture("i1_distance_2d")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(Json::parse(o.out)["pieces"][0]["kind"], "circle");
}

TEST(Cli, SolveRoundTripsAndIsDeterministic) {
  const std::string path = temp_path("solve.json");
  ASSERT_EQ(run_cli({"solve", "-i", fixture("i3_five_solutions"), "-o", path}).code, 0);
  const std::string first = slurp(path);
  ASSERT_EQ(run_cli({"solve", "-i", fixture("i3_five_solutions"), "-o", path}).code, 0);
  EXPECT_EQ(slurp(path), first);
  const SolutionSet mem = solve(load("i3_five_solutions"));
  EXPECT_EQ(solution_to_json(solution_from_json(Json::parse(first))), solution_to_json(mem));
  std::remove(path.c_str());
}

TEST(Cli, VerifyFiveSolutions) {
  const Outcome o = run_cli({"verify", "-i", fixture("i3_five_solutions")});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("PASS"), std::string::npos);
  EXPECT_NE(o.out.find("finite:5"), std::string::npos);
}

TEST(Cli, OpenCaseIsUnresolved) {
  const Outcome o = run_cli({"solve", "-i", fixture("i3_distance_open")});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(Json::parse(o.out)["resolved"], false);
  EXPECT_EQ(run_cli({"verify", "-i", fixture("i3_distance_open")}).code, 1);
}

TEST(Cli, InvalidInputExitCodes) {
  const Outcome syntax = run_cli({"solve", "-i", fixture("bad_syntax")});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("line 2"), std::string::npos) << syntax.err;
  const Outcome field = run_cli({"solve", "-i", fixture("bad_unknown_field")});
  EXPECT_EQ(field.code, 2);
  EXPECT_NE(field.err.find("extra"), std::string::npos) << field.err;
  EXPECT_EQ(run_cli({"solve"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"levels", "-i", fixture("i2_squared_a"), "--levels", "1"}).code, 2);
}

TEST(Cli, OracleJson) {
  const Outcome o = run_cli({"oracle", "-i", fixture("i2_squared_c"), "--res", "101"});
  EXPECT_EQ(o.code, 0);
  const Json j = Json::parse(o.out);
  EXPECT_EQ(j["resolution"], 101);
  EXPECT_EQ(j["cardinality"], "finite:2");
  EXPECT_EQ(j["bounds"].size(), 2u);
}

TEST(Cli, FieldCsv) {
  const std::string path = temp_path("field.csv");
  ASSERT_EQ(run_cli({"field", "-i", fixture("i1_squared_2d"), "--what", "gradient", "--res", "11", "-o", path}).code, 0);
  const std::string text = slurp(path);
  EXPECT_EQ(text.rfind("x,y,gx,gy,singular\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 121);
  EXPECT_EQ(run_cli({"field", "-i", fixture("i1_squared_2d"), "--what", "curl", "-o", path}).code, 2);
  std::remove(path.c_str());
}

TEST(Cli, LevelsTable) {
  const Outcome o = run_cli({"levels", "-i", fixture("i1_distance_2d"), "--levels", "0.5,1,1.5"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "level,inner,outer\n0.5,0.5,1.5\n1,0,2\n1.5,,2.5\n");
}

}  // namespace
}  // namespace locus
