#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json_io.hpp"
#include "sympack/errors.hpp"

using sympack::cli::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sympack::cli::run(args, out, err);
  return Run{code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, WeightsReportIsExact) {
  const auto r = run({"weights", "5/2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"a\":\"5/2\",\"weights\":[\"1\",\"1\",\"1/2\",\"1/2\"],\"p\":4,\"sum_sq\":\"5/2\"}\n");
}

TEST(Cli, ExitCodes) {
  auto r = run({"decide", "--mu", "1", "--balls", "3/5,3/5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["reason"], "negative entry");
  EXPECT_EQ(run({"decide", "--mu", "1", "--balls", "2/5x5"}).code, 0);
  EXPECT_EQ(run({"decide", "--mu", "1", "--balls", "2/5,abc"}).code, 2);
  EXPECT_EQ(run({"decide", "--mu", "0", "--balls", "1/2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"weights", "1/2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TraceListsEverySteps) {
  const auto r = run({"decide", "--balls", "2/5x5", "--trace"});
  const auto j = r.json();
  ASSERT_TRUE(j.contains("steps"));
  EXPECT_EQ(j["steps"].size(), 3u);
  EXPECT_EQ(j["steps"][0]["defect"], "-1/5");
  EXPECT_FALSE(run({"decide", "--balls", "2/5x5"}).json().contains("steps"));
}

TEST(Cli, CertifyModes) {
  auto r = run({"certify", "--target", "T(3/2,3/2,1,1)", "--balls", "19/100x10", "--mode", "optimistic"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["verdict"], "CERTIFIED");
  EXPECT_EQ(r.json()["lambda_threshold"]["exact"], "1/5");
  r = run({"certify", "--target", "T(3/2,3/2,1,1)", "--balls", "19/100x10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["mode"], "conservative");
  r = run({"certify", "--target", "E(1,2)", "--balls", "13/100x100", "--mode", "optimistic"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["volume_slack"], "31/200");
  EXPECT_EQ(run({"certify", "--target", "E(1,2)", "--balls", "1/2"}).code, 1);
  EXPECT_EQ(run({"certify", "--target", "T(2,2,1,1)", "--balls", "1/10"}).code, 2);
  EXPECT_EQ(run({"certify", "--target", "E(1,2)", "--balls", "1/10", "--mode", "bold"}).code, 2);
}

TEST(Cli, BoundsCarryPrecisionMetadata) {
  const auto j = run({"dstar", "--lambdas", "1/2,1/2", "--precision", "64", "--search-kmax", "4"}).json();
  EXPECT_EQ(j["bound"]["precision_bits"], 64);
  EXPECT_EQ(j["bound"]["rounding"], "down");
  EXPECT_EQ(j["search_value"], "1/5");
  EXPECT_EQ(run({"dstar", "--lambdas", "1/2,1/2", "--search-kmax", "8"}).json()["search_value"], "3/16");
  const auto k = run({"dstar", "--lambdas", "1/2", "--search-kmax", "0"}).json();
  EXPECT_EQ(k["bound"]["exact"], "1/8");
  EXPECT_FALSE(k.contains("search_value"));
}

TEST(Cli, PrecisionFromEnvironment) {
  ::setenv("SYMPACK_PRECISION", "48", 1);
  auto j = run({"dstar", "--lambdas", "1/2,1/2", "--search-kmax", "0"}).json();
  EXPECT_EQ(j["bound"]["precision_bits"], 48);
  j = run({"dstar", "--lambdas", "1/2,1/2", "--search-kmax", "0", "--precision", "80"}).json();
  EXPECT_EQ(j["bound"]["precision_bits"], 80);
  ::unsetenv("SYMPACK_PRECISION");
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"certify", "--target", "P2(1;1/3,1/4)", "--balls", "1/100x20"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run(args).code, run(args).code);
}

TEST(Cli, JsonRoundTrip) {
  const auto j = run({"ellipsoid-decide", "-a", "5/2", "--balls", "1,1,1/2,1/2", "--trace"}).json();
  EXPECT_EQ(Json::parse(j.dump()), j);
  sympack::Rational sum;
  for (const auto& l : j["vector"]["lambdas"]) {
    const auto v = sympack::Rational::parse(l.get<std::string>());
    sum += v * v;
  }
  EXPECT_EQ(sum, sympack::Rational(1));
  EXPECT_EQ(j["trace"]["steps"].size(), 4u);
}

TEST(Cli, VolumeMaxBallAndDirected) {
  auto j = run({"volume", "T(3/2,3/2,1,1)"}).json();
  EXPECT_EQ(j["volume"], "3/2");
  EXPECT_EQ(j["polytope"].size(), 4u);
  EXPECT_EQ(run({"volume", "T(2,2,1,1)"}).code, 2);

  j = run({"max-equal-ball", "9"}).json();
  EXPECT_NEAR(j["approx"].get<double>(), 1.0 / 3, 1e-9);

  auto r = run({"directed-check", "--components", "1,1", "--assign", "cross:E(3/5,7/10)@1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["slack"], Json::parse(R"(["2/5","3/10"])"));
  r = run({"directed-check", "--components", "1", "--assign", "first:E(1/2,3/4)@1", "--assign",
           "first:E(1/2,1)@1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run({"directed-check", "--components", "1,1", "--assign", "cross:E(1,1)@1.0,1.0"}).code, 2);
  EXPECT_EQ(run({"directed-check", "--components", "1", "--assign", "first:E(1,1)@3"}).code, 2);
}

TEST(Cli, Atlas) {
  auto r = run({"atlas", "--amin", "2", "--amax", "2"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "a,conservative,optimistic,p,kappa_sq");
  EXPECT_EQ(row.rfind("2,0.06635", 0), 0u) << row;
  EXPECT_NE(row.find(",0.1327"), std::string::npos);
  EXPECT_FALSE(std::getline(lines, extra));

  r = run({"atlas", "--amin", "7", "--amax", "7", "--json"});
  const auto j = r.json();
  EXPECT_EQ(j["rows"][0]["p"], 7);
  EXPECT_EQ(j["rows"][0]["kappa_sq"], "6/7");

  EXPECT_EQ(run({"atlas", "--amin", "3", "--amax", "2"}).code, 2);
  EXPECT_EQ(run({"atlas", "--amin", "1", "--amax", "2"}).code, 2);
  r = run({"atlas", "--amin", "11/10", "--amax", "10", "--step", "1/10"});
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 91);
}

TEST(Cli, Decompose) {
  const auto pol = write_temp("sympack_pol.json",
                              R"({"curves":[{"area":"1","residue":"1/10"},{"area":"1","residue":"1/10"},)"
                              R"({"area":"1","residue":"1/10"}],"volume":"3/20"})");
  auto r = run({"decompose", "--polarization", pol});
  EXPECT_EQ(r.code, 0);
  auto j = r.json();
  EXPECT_EQ(j["delta"], "1/1200");
  EXPECT_EQ(j["total_piece_volume"], "3/20");
  EXPECT_EQ(j["pieces"].size(), 6u);
  EXPECT_FALSE(j["convention"].get<std::string>().empty());

  const auto balls = write_temp("sympack_balls.json", R"({"capacities":["9/1000x30"]})");
  r = run({"decompose", "--polarization", pol, "--balls", balls, "--mode", "optimistic"});
  j = r.json();
  EXPECT_TRUE(j["packing"]["partition"]["within_tolerance"].get<bool>());
  EXPECT_EQ(j["packing"]["certificates"].size(), 6u);
  EXPECT_EQ(r.code, j["packing"]["verdict"] == "CERTIFIED" ? 0 : 1);

  const auto bad = write_temp("sympack_bad.json", R"({"curves":[{"area":"1","residue":"1/10"}],"volume":"1/7"})");
  EXPECT_EQ(run({"decompose", "--polarization", bad}).code, 2);
  const auto broken = write_temp("sympack_broken.json", "{not json");
  EXPECT_EQ(run({"decompose", "--polarization", broken}).code, 2);
  EXPECT_EQ(run({"decompose", "--polarization", "/nonexistent/pol.json"}).code, 2);
}

TEST(Cli, RunReportEnvelope) {
  const auto j = run({"weights", "7/3", "--report"}).json();
  EXPECT_EQ(j["command"], "weights");
  EXPECT_EQ(j["inputs"]["a"], "7/3");
  EXPECT_EQ(j["outputs"]["p"], 5);
  EXPECT_EQ(j["precision"]["bits"], 128);
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("timing_ms"));
}

TEST(Cli, BallShorthand) {
  const auto v = sympack::cli::parse_ball_list("1/2, 1/3x3,1");
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[3], sympack::Rational(1, 3));
  EXPECT_THROW(sympack::cli::parse_ball_list("1/2x0"), sympack::InvalidInput);
  EXPECT_THROW(sympack::cli::parse_ball_list("1/2,,1"), sympack::InvalidInput);
}
