// SPDX-License-Identifier: Apache-2.0

#include "boolperc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "boolperc/errors.hpp"
#include "boolperc/specialfn.hpp"

namespace boolperc {

int default_parallelism() {
  if (const char* env = std::getenv("BOOLPERC_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Outcome> run_outcomes(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                                  int parallelism, Engine engine) {
  config.validate();
  if (n_runs < 1) throw InvalidArgument("run_trials: need at least one run");
  if (parallelism < 1) throw InvalidArgument("run_trials: parallelism must be >= 1");

  std::vector<Outcome> outcomes(n_runs);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    try {
      for (std::uint64_t i = next.fetch_add(1); i < n_runs; i = next.fetch_add(1)) {
        RngStream rng = make_stream(master_seed, i);
        if (engine == Engine::Explore) {
          outcomes[i] = explore_cluster(config, rng);
        } else {
          const bool hit = naive_reach_oracle(config, rng);
          outcomes[i] = {hit ? OutcomeKind::ReachedBoundary : OutcomeKind::Finite, 0};
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(n_runs);
    }
  };

  const auto n_workers = static_cast<std::uint64_t>(parallelism) < n_runs ? static_cast<std::uint64_t>(parallelism)
                                                                          : n_runs;
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::uint64_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

TrialSummary summarize(const std::vector<Outcome>& outcomes) {
  TrialSummary s;
  s.runs = outcomes.size();
  for (const Outcome& o : outcomes) {
    if (o.reached()) ++s.successes;
    if (o.kind == OutcomeKind::ThresholdExceeded) ++s.threshold_hits;
    s.total_grains += o.cluster_size;
  }
  return s;
}

TrialSummary run_trials(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                        int parallelism, Engine engine) {
  const auto start = std::chrono::steady_clock::now();
  TrialSummary s = summarize(run_outcomes(config, master_seed, n_runs, parallelism, engine));
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

double wilson_upper_cc(std::uint64_t successes, std::uint64_t runs, double level) {
  if (runs == 0) throw InvalidArgument("wilson_upper_cc: runs must be positive");
  if (successes > runs) throw InvalidArgument("wilson_upper_cc: successes exceed runs");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("wilson_upper_cc: level must lie in (0, 1)");
  if (successes == runs) return 1.0;

  const double n = static_cast<double>(runs);
  const double z = normal_quantile(level);
  const double p = static_cast<double>(successes) / n + 0.5 / n;
  if (p >= 1.0) return 1.0;
  const double z22n = z * z / (2.0 * n);
  const double upper = (p + z22n + z * std::sqrt(p * (1.0 - p) / n + z22n / (2.0 * n))) / (1.0 + 2.0 * z22n);
  return std::min(1.0, upper);
}

BoundEstimate estimate_bound(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                             double level, int parallelism, Engine engine) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("estimate_bound: level must lie in (0, 1)");
  BoundEstimate est;
  est.d = config.d;
  est.t = config.t;
  est.r = config.r;
  est.confidence_level = level;
  est.summary = run_trials(config, master_seed, n_runs, parallelism, engine);
  est.theta_upper = wilson_upper_cc(est.summary.successes, est.summary.runs, level);
  est.lower_bound = lower_bound_from_theta(config.t, est.theta_upper);
  return est;
}

}  // namespace boolperc
