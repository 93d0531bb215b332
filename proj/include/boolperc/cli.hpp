// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the `boolperc` executable. Each command
// returns a RunRecord; rendering and argument parsing are separate so the
// commands can be driven from tests.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boolperc/cluster.hpp"
#include "boolperc/estimator.hpp"
#include "json.hpp"

namespace boolperc::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };
enum class BoundMethod { Penrose, PhiB3, Hall };
enum class TableId { Table1, Table3 };

/// One self-contained result. JSON carries no wall time or worker count
/// unless include_timing is set, so simulation records are byte-identical
/// for a fixed seed.
struct RunRecord {
  std::string command;
  Json parameters = Json::object();
  Json results = Json::object();
  std::optional<std::uint64_t> seed;
  double wall_time = 0.0;
  bool include_timing = false;
  bool ok = true;
  std::string message;  // set when !ok

  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string summary;  // one human-readable line (or block for tables)

  Json to_json() const;
};

std::string version();

std::string render(const RunRecord& record, Format format);

struct BoundOptions {
  BoundMethod method = BoundMethod::Penrose;
  int d = 2;
  double tol = 1e-12;  // relative bracket width for phi-b3
  int nodes = 200;     // Nystrom nodes for hall
};
RunRecord cmd_bound(const BoundOptions& options);

struct SimulateOptions {
  int d = 2;
  double t = 0.0;
  double r = 10.0;
  std::uint64_t runs = 10000;
  std::uint64_t seed = 0;
  std::uint64_t threshold = kDefaultSizeThreshold;
  double level = 0.99;
  int jobs = 1;
  Engine engine = Engine::Explore;
  int ball_crossover = kDefaultBallCrossover;
  bool include_timing = false;
};
RunRecord cmd_simulate(const SimulateOptions& options);

RunRecord cmd_ci(std::uint64_t successes, std::uint64_t runs, double level);

RunRecord cmd_table(TableId which);

/// Parses argv, runs the command and writes the rendered record to `out`
/// (diagnostics to `err`). Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Six significant digits rounded toward zero; lower bounds are printed this way.
std::string format_lower(double x);
/// Nine decimals, rounded to nearest, trailing zeros removed.
std::string format_ci(double x);

}  // namespace boolperc::cli
