// SPDX-License-Identifier: Apache-2.0

#include <sstream>
#include <string>
#include <vector>

#include "boolperc/cli.hpp"
#include "doctest.h"

using namespace boolperc::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "boolperc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting") {
    CHECK(format_lower(0.0795774715459) == "0.0795774");
    CHECK(format_lower(0.35677261) == "0.356772");
    CHECK(format_lower(0.000962435999) == "0.000962435");
    CHECK(format_lower(12.3456789) == "12.3456");
    CHECK(format_ci(0.000636920) == "0.00063692");
    CHECK(format_ci(0.0031545374) == "0.003154537");
    CHECK(format_ci(1.0) == "1");
  }

  TEST_CASE("bound command") {
    CHECK(first_line(run({"bound", "penrose", "--dim", "2"}).out) == "0.0795774");
    CHECK(first_line(run({"bound", "phi-b3", "--dim", "5"}).out) == "0.00734445");
    CHECK(first_line(run({"bound", "hall", "--dim", "4", "--nodes", "200"}).out) == "0.0198296");
    const Result r = run({"bound", "penrose", "--dim", "3", "--format", "json"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["command"] == "bound");
    CHECK(j["ok"] == true);
    CHECK(j["version"] == version());
    CHECK(j["results"]["display"] == "0.0298415");
    const auto csv = parse_csv(run({"bound", "phi-b3", "--dim", "2", "--format", "csv"}).out);
    REQUIRE(csv.size() == 2);
    CHECK(csv[0][0] == "method");
    CHECK(csv[1][2] == "0.135802");
  }

  TEST_CASE("ci command") {
    CHECK(first_line(run({"ci", "--successes", "0", "--runs", "10000", "--level", "0.99"}).out) == "0.00063692");
    CHECK(first_line(run({"ci", "--successes", "18", "--runs", "10000", "--level", "0.99"}).out) == "0.003154537");
    CHECK(first_line(run({"ci", "--successes", "10000", "--runs", "10000"}).out) == "1");
    CHECK(run({"ci", "--successes", "11", "--runs", "10"}).code == 2);
    CHECK(run({"ci", "--successes", "1", "--runs", "10", "--level", "1.5"}).code != 0);
  }

  TEST_CASE("simulate command") {
    const Result r = run({"simulate", "--dim", "2", "--intensity", "0", "--radius", "10", "--runs", "100", "--seed",
                          "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["results"]["summary"]["successes"] == 0);
    CHECK(j["results"]["lower_bound"] == 0.0);
    CHECK(j["seed"] == 1);
    CHECK_FALSE(j.contains("wall_time_s"));
    CHECK_FALSE(r.err.empty());

    const std::vector<std::string> base{"simulate", "--dim", "3",  "--intensity", "0.08", "--radius",
                                        "5",        "--runs", "300", "--seed",    "9",    "--format", "json"};
    auto with_jobs = [&](const char* n) {
      auto args = base;
      args.insert(args.end(), {"--jobs", n});
      return run(args).out;
    };
    const std::string a = with_jobs("1");
    CHECK(a == with_jobs("1"));
    CHECK(a == with_jobs("3"));
    CHECK(a == with_jobs("8"));

    auto timed = base;
    timed.push_back("--timing");
    CHECK(Json::parse(run(timed).out).contains("wall_time_s"));
  }

  TEST_CASE("simulate: seed is echoed when omitted") {
    const Result r = run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "3", "--runs", "10",
                          "--format", "json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["seed"].is_number_unsigned());
    const std::string replay = run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "3", "--runs", "10",
                                    "--seed", std::to_string(j["seed"].get<std::uint64_t>()), "--format", "json"})
                                   .out;
    CHECK(replay == r.out);
  }

  TEST_CASE("simulate: argument errors") {
    CHECK(run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "1", "--runs", "10"}).code == 2);
    CHECK(run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "3", "--runs", "10", "--threshold", "x"})
              .code == 2);
    CHECK(run({"simulate", "--dim", "2", "--intensity", "1", "--radius", "5000", "--runs", "1", "--engine", "naive"})
              .code == 2);
    CHECK(run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "3"}).code != 0);
    const Result none = run({"simulate", "--dim", "2", "--intensity", "0.1", "--radius", "3", "--runs", "10",
                             "--seed", "1", "--threshold", "none", "--format", "json"});
    CHECK(none.code == 0);
    CHECK(Json::parse(none.out)["parameters"]["threshold"].is_null());
  }

  TEST_CASE("table command") {
    const auto t1 = parse_csv(run({"table", "table1", "--format", "csv"}).out);
    REQUIRE(t1.size() == 11);
    CHECK(t1[0][0] == "d");
    CHECK(t1[1][1] == "0.135802");
    CHECK(t1[10][2] == "0.000259158");
    const Json j3 = Json::parse(run({"table", "table3", "--format", "json"}).out);
    CHECK(j3["results"]["rows"].size() == 10);
    CHECK(j3["results"]["max_rel_deviation"].get<double>() < 1e-4);
    CHECK(j3["results"]["within_tolerance"] == true);
    const auto t3 = parse_csv(run({"table", "table3", "--format", "csv"}).out);
    REQUIRE(t3.size() == 11);
    CHECK(t3[0].size() == 7);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code != 0);
    CHECK(run({"bound", "nonsense", "--dim", "2"}).code != 0);
    CHECK(run({"bound", "penrose", "--dim", "1"}).code != 0);
    CHECK(run({"--version"}).code == 0);
  }
}
