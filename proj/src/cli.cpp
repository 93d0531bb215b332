// SPDX-License-Identifier: Apache-2.0

#include "boolperc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "boolperc/bounds.hpp"
#include "boolperc/specialfn.hpp"
#include "boolperc/errors.hpp"
#include "boolperc/reference_values.hpp"

#ifndef BOOLPERC_VERSION
#define BOOLPERC_VERSION "0.0.0"
#endif

namespace boolperc::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::Penrose:
      return "penrose";
    case BoundMethod::PhiB3:
      return "phi-b3";
    case BoundMethod::Hall:
      return "hall";
  }
  return "?";
}

std::string to_string(Engine e) { return e == Engine::Explore ? "explore" : "naive"; }

std::string full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double rel_dev(double computed, double printed) { return std::abs(computed - printed) / std::abs(printed); }

}  // namespace

std::string version() { return BOOLPERC_VERSION; }

std::string format_lower(double x) {
  if (x == 0.0 || !std::isfinite(x)) return full(x);
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::max(0, 5 - exponent);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*f", decimals + 6, x);
  std::string s = buf;
  s.resize(s.size() - 6);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string format_ci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

Json RunRecord::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["results"] = results;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["version"] = version();
  j["ok"] = ok;
  if (!ok) j["message"] = message;
  if (include_timing) j["wall_time_s"] = wall_time;
  return j;
}

std::string render(const RunRecord& record, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << record.to_json().dump(2) << '\n';
      break;
    case Format::Csv: {
      for (std::size_t i = 0; i < record.csv_header.size(); ++i)
        os << (i ? "," : "") << csv_escape(record.csv_header[i]);
      os << '\n';
      for (const auto& row : record.csv_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << '\n';
      }
      break;
    }
    case Format::Text:
      os << record.summary << '\n';
      if (!record.ok) os << "error: " << record.message << '\n';
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RunRecord cmd_bound(const BoundOptions& o) {
  if (o.d < 2 || o.d > 64) throw InvalidArgument("bound: --dim must be in [2, 64]");
  const auto start = Clock::now();
  RunRecord rec;
  rec.command = "bound";
  rec.parameters["method"] = to_string(o.method);
  rec.parameters["d"] = o.d;
  double value = 0.0;
  std::ostringstream diag;

  switch (o.method) {
    case BoundMethod::Penrose:
      value = penrose_bound(o.d);
      break;
    case BoundMethod::PhiB3: {
      if (!(o.tol > 0.0)) throw InvalidArgument("bound: --tol must be positive");
      rec.parameters["tol"] = o.tol;
      value = phi_b3_bound(o.d, o.tol);
      const double residual = phi_b3(o.d, value) - 1.0;
      rec.results["phi_at_root_minus_one"] = residual;
      diag << "  phi(root)-1=" << residual;
      break;
    }
    case BoundMethod::Hall: {
      if (o.nodes < 16) throw InvalidArgument("bound: --nodes must be >= 16");
      rec.parameters["nodes"] = o.nodes;
      const HallBound hb = hall_bound(o.d, o.nodes);
      value = hb.value;
      rec.results["plain"] = hb.plain;
      rec.results["refined"] = hb.refined;
      rec.results["error_estimate"] = hb.error_estimate;
      diag << "  plain(n=" << o.nodes << ")=" << full(hb.plain) << " refined(n=" << 2 * o.nodes
           << ")=" << full(hb.refined) << " error_estimate=" << hb.error_estimate;
      break;
    }
  }
  rec.results["value"] = value;
  rec.results["display"] = format_lower(value);
  rec.wall_time = seconds_since(start);
  rec.csv_header = {"method", "d", "value", "full_precision"};
  rec.csv_rows = {{to_string(o.method), std::to_string(o.d), format_lower(value), full(value)}};
  rec.summary = format_lower(value) + "\n" + to_string(o.method) + " d=" + std::to_string(o.d) +
                " value=" + full(value) + diag.str();
  return rec;
}

RunRecord cmd_simulate(const SimulateOptions& o) {
  if (o.runs < 1) throw InvalidArgument("simulate: --runs must be >= 1");
  if (o.jobs < 1) throw InvalidArgument("simulate: --jobs must be >= 1");
  ExploreConfig config;
  config.d = o.d;
  config.t = o.t;
  config.r = o.r;
  config.size_threshold = o.threshold;
  config.ball_crossover = o.ball_crossover;
  config.validate();
  if (o.engine == Engine::Naive) {
    const double expected = o.t * ball_volume(o.d) * std::pow(o.r + 1.0, o.d);
    if (expected > kMaxOraclePoints)
      throw InvalidArgument("simulate: naive engine needs " + full(expected) + " expected points (limit 1e7)");
  }

  const BoundEstimate est = estimate_bound(config, o.seed, o.runs, o.level, o.jobs, o.engine);

  RunRecord rec;
  rec.command = "simulate";
  rec.seed = o.seed;
  rec.include_timing = o.include_timing;
  rec.wall_time = est.summary.wall_time;
  rec.parameters["d"] = o.d;
  rec.parameters["t"] = o.t;
  rec.parameters["r"] = o.r;
  rec.parameters["runs"] = o.runs;
  rec.parameters["seed"] = o.seed;
  if (o.threshold == kUnboundedThreshold)
    rec.parameters["threshold"] = nullptr;
  else
    rec.parameters["threshold"] = o.threshold;
  rec.parameters["level"] = o.level;
  rec.parameters["engine"] = to_string(o.engine);
  rec.parameters["ball_crossover"] = o.ball_crossover;

  Json summary;
  summary["runs"] = est.summary.runs;
  summary["successes"] = est.summary.successes;
  summary["threshold_hits"] = est.summary.threshold_hits;
  summary["total_grains"] = est.summary.total_grains;
  rec.results["summary"] = summary;
  rec.results["theta_hat"] = static_cast<double>(est.summary.successes) / static_cast<double>(est.summary.runs);
  rec.results["confidence_level"] = est.confidence_level;
  rec.results["theta_upper"] = est.theta_upper;
  rec.results["lower_bound"] = est.lower_bound;
  rec.results["penrose_bound"] = penrose_bound(o.d);

  rec.csv_header = {"d", "r", "t", "runs", "success", "ci", "lower_bound"};
  rec.csv_rows = {{std::to_string(o.d), full(o.r), full(o.t), std::to_string(est.summary.runs),
                   std::to_string(est.summary.successes), format_ci(est.theta_upper), format_lower(est.lower_bound)}};
  std::ostringstream line;
  line << "d=" << o.d << " r=" << o.r << " t=" << o.t << " runs=" << est.summary.runs
       << " success=" << est.summary.successes << " ci=" << format_ci(est.theta_upper)
       << " lower_bound=" << format_lower(est.lower_bound) << " (threshold_hits=" << est.summary.threshold_hits
       << ", seed=" << o.seed << ", wall=" << est.summary.wall_time << "s)";
  rec.summary = line.str();
  return rec;
}

RunRecord cmd_ci(std::uint64_t successes, std::uint64_t runs, double level) {
  if (runs < 1) throw InvalidArgument("ci: --runs must be >= 1");
  if (successes > runs) throw InvalidArgument("ci: --successes must not exceed --runs");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("ci: --level must lie in (0, 1)");
  RunRecord rec;
  rec.command = "ci";
  rec.parameters["successes"] = successes;
  rec.parameters["runs"] = runs;
  rec.parameters["level"] = level;
  const double upper = wilson_upper_cc(successes, runs, level);
  rec.results["theta_upper"] = upper;
  rec.results["display"] = format_ci(upper);
  rec.csv_header = {"successes", "runs", "level", "theta_upper"};
  rec.csv_rows = {{std::to_string(successes), std::to_string(runs), full(level), format_ci(upper)}};
  rec.summary = format_ci(upper);
  return rec;
}

RunRecord cmd_table(TableId which) {
  const auto start = Clock::now();
  RunRecord rec;
  rec.command = "table";
  std::ostringstream text;
  double max_dev = 0.0;
  Json rows = Json::array();

  if (which == TableId::Table1) {
    rec.parameters["which"] = "table1";
    rec.csv_header = {"d", "phi_b3", "penrose", "rel_dev_phi_b3", "rel_dev_penrose"};
    text << "d  phi_b3  penrose\n";
    for (const auto& ref : reference::kTable1) {
      const double phi = phi_b3_bound(ref.d);
      const double pen = penrose_bound(ref.d);
      const double dphi = rel_dev(phi, ref.phi_b3);
      const double dpen = rel_dev(pen, ref.penrose);
      max_dev = std::max({max_dev, dphi, dpen});
      rows.push_back({{"d", ref.d}, {"phi_b3", phi}, {"penrose", pen}, {"rel_dev_phi_b3", dphi},
                      {"rel_dev_penrose", dpen}});
      rec.csv_rows.push_back({std::to_string(ref.d), format_lower(phi), format_lower(pen), full(dphi), full(dpen)});
      text << ref.d << "  " << format_lower(phi) << "  " << format_lower(pen) << '\n';
    }
    rec.results["tolerance"] = reference::kTable1Tolerance;
    rec.results["within_tolerance"] = max_dev < reference::kTable1Tolerance;
  } else {
    rec.parameters["which"] = "table3";
    rec.parameters["nodes"] = 200;
    rec.csv_header = {"d", "penrose", "phi_b3", "hall", "rel_dev_penrose", "rel_dev_phi_b3", "rel_dev_hall"};
    text << "d  penrose  phi_b3  hall\n";
    for (const auto& ref : reference::kTable3) {
      const double pen = penrose_bound(ref.d);
      const double phi = phi_b3_bound(ref.d);
      const double hall = hall_bound(ref.d, 200).value;
      const double dpen = rel_dev(pen, ref.penrose);
      const double dphi = rel_dev(phi, ref.phi_b3);
      const double dhall = rel_dev(hall, ref.hall);
      max_dev = std::max({max_dev, dpen, dphi, dhall});
      rows.push_back({{"d", ref.d}, {"penrose", pen}, {"phi_b3", phi}, {"hall", hall}, {"rel_dev_penrose", dpen},
                      {"rel_dev_phi_b3", dphi}, {"rel_dev_hall", dhall}});
      rec.csv_rows.push_back({std::to_string(ref.d), format_lower(pen), format_lower(phi), format_lower(hall),
                              full(dpen), full(dphi), full(dhall)});
      text << ref.d << "  " << format_lower(pen) << "  " << format_lower(phi) << "  " << format_lower(hall) << '\n';
    }
    rec.results["tolerance"] = reference::kTable3Tolerance;
    rec.results["within_tolerance"] = max_dev < reference::kTable3Tolerance;
  }
  rec.results["rows"] = rows;
  rec.results["max_rel_deviation"] = max_dev;
  rec.wall_time = seconds_since(start);
  text << "max relative deviation from reference: " << max_dev;
  rec.summary = text.str();
  return rec;
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds for the critical intensity of the Boolean model with unit-ball grains"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};
  Format format = Format::Text;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(formats));
  };

  // bound
  auto* bound = app.add_subcommand("bound", "Rigorous lower bound (penrose | phi-b3 | hall)");
  BoundOptions bopt;
  const std::map<std::string, BoundMethod> methods{
      {"penrose", BoundMethod::Penrose}, {"phi-b3", BoundMethod::PhiB3}, {"hall", BoundMethod::Hall}};
  bound->add_option("method", bopt.method, "Bound method")->required()->transform(CLI::CheckedTransformer(methods));
  bound->add_option("--dim", bopt.d, "Dimension")->required()->check(CLI::Range(2, 64));
  bound->add_option("--tol", bopt.tol, "Relative bracket width for phi-b3")->check(CLI::PositiveNumber);
  bound->add_option("--nodes", bopt.nodes, "Nystrom nodes for hall")->check(CLI::Range(16, 100000));
  add_format(bound);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo lower bound t(1 - theta_upper)");
  SimulateOptions sopt;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string threshold = std::to_string(kDefaultSizeThreshold);
  const std::map<std::string, Engine> engines{{"explore", Engine::Explore}, {"naive", Engine::Naive}};
  sim->add_option("--dim", sopt.d, "Dimension")->required()->check(CLI::Range(1, 64));
  sim->add_option("--intensity", sopt.t, "Poisson intensity t")->required()->check(CLI::NonNegativeNumber);
  sim->add_option("--radius", sopt.r, "Observation radius r > 1")->required();
  sim->add_option("--runs", sopt.runs, "Number of trials")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "Master seed (random if omitted)");
  sim->add_option("--threshold", threshold, "Cluster size threshold, or 'none'");
  sim->add_option("--level", sopt.level, "Confidence level")->check(CLI::Bound(1e-12, 1.0 - 1e-12));
  sim->add_option("--jobs", jobs, "Worker threads (default: $BOOLPERC_JOBS or all cores)")->check(CLI::PositiveNumber);
  sim->add_option("--engine", sopt.engine, "explore | naive")->transform(CLI::CheckedTransformer(engines));
  sim->add_option("--ball-crossover", sopt.ball_crossover, "Dimension from which the normalized ball sampler is used")
      ->check(CLI::Range(1, 65));
  sim->add_flag("--timing", sopt.include_timing, "Include wall time in the JSON record");
  add_format(sim);

  // ci
  auto* ci = app.add_subcommand("ci", "Upper confidence limit for a binomial proportion");
  std::uint64_t ci_successes = 0;
  std::uint64_t ci_runs = 0;
  double ci_level = 0.99;
  ci->add_option("--successes", ci_successes, "Successes")->required();
  ci->add_option("--runs", ci_runs, "Runs")->required()->check(CLI::PositiveNumber);
  ci->add_option("--level", ci_level, "Confidence level")->check(CLI::Bound(1e-12, 1.0 - 1e-12));
  add_format(ci);

  // table
  auto* table = app.add_subcommand("table", "Recompute a reference table (table1 | table3)");
  TableId which = TableId::Table1;
  const std::map<std::string, TableId> tables{{"table1", TableId::Table1}, {"table3", TableId::Table3}};
  table->add_option("which", which, "Table")->required()->transform(CLI::CheckedTransformer(tables));
  add_format(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    RunRecord rec;
    if (*bound) {
      rec = cmd_bound(bopt);
    } else if (*sim) {
      if (threshold == "none" || threshold == "unbounded") {
        sopt.threshold = kUnboundedThreshold;
      } else {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(threshold, &pos);
        if (pos != threshold.size() || v < 1) throw InvalidArgument("simulate: --threshold must be >= 1 or 'none'");
        sopt.threshold = v;
      }
      sopt.seed = seed ? *seed : (static_cast<std::uint64_t>(std::random_device{}()) << 32) | std::random_device{}();
      sopt.jobs = jobs ? *jobs : default_parallelism();
      rec = cmd_simulate(sopt);
      if (format == Format::Json) err << rec.summary << '\n';
    } else if (*ci) {
      rec = cmd_ci(ci_successes, ci_runs, ci_level);
    } else if (*table) {
      rec = cmd_table(which);
    }
    out << render(rec, format);
    return rec.ok ? 0 : 1;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    // Convergence and bracket failures: still emit a record.
    RunRecord rec;
    rec.command = bound->parsed() ? "bound" : sim->parsed() ? "simulate" : ci->parsed() ? "ci" : "table";
    rec.ok = false;
    rec.message = e.what();
    rec.summary = "failed";
    out << render(rec, format);
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace boolperc::cli
