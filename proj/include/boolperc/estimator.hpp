// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo estimation of the crossing probability theta_t(r) and the
// resulting lower bound t * (1 - theta_upper) on the critical intensity.

#pragma once

#include <cstdint>
#include <vector>

#include "boolperc/cluster.hpp"

namespace boolperc {

enum class Engine { Explore, Naive };

struct TrialSummary {
  std::uint64_t runs = 0;
  std::uint64_t successes = 0;       // ReachedBoundary + ThresholdExceeded
  std::uint64_t threshold_hits = 0;  // subset of successes
  std::uint64_t total_grains = 0;    // sum of Outcome::cluster_size (explore engine only)
  double wall_time = 0.0;            // seconds

  bool operator==(const TrialSummary& o) const {
    return runs == o.runs && successes == o.successes && threshold_hits == o.threshold_hits &&
           total_grains == o.total_grains;
  }
};

struct BoundEstimate {
  int d = 0;
  double t = 0.0;
  double r = 0.0;
  TrialSummary summary;
  double confidence_level = 0.99;
  double theta_upper = 1.0;
  double lower_bound = 0.0;
};

/// Worker count from the BOOLPERC_JOBS environment variable, else the
/// hardware concurrency (at least 1).
int default_parallelism();

/// Outcome of trial i for i in [0, n_runs), trial i driven by
/// make_stream(master_seed, i). Independent of `parallelism`.
std::vector<Outcome> run_outcomes(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                                  int parallelism, Engine engine = Engine::Explore);

TrialSummary summarize(const std::vector<Outcome>& outcomes);

TrialSummary run_trials(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                        int parallelism, Engine engine = Engine::Explore);

/// One-sided upper confidence limit for a binomial proportion, as computed by
/// R's prop.test(x, n, alternative = "less", correct = TRUE): the Wilson
/// score bound evaluated at the continuity-corrected estimate p + 0.5/n.
/// Returns 1 when successes == runs.
double wilson_upper_cc(std::uint64_t successes, std::uint64_t runs, double level);

inline double lower_bound_from_theta(double t, double theta_upper) { return t * (1.0 - theta_upper); }

BoundEstimate estimate_bound(const ExploreConfig& config, std::uint64_t master_seed, std::uint64_t n_runs,
                             double level, int parallelism, Engine engine = Engine::Explore);

}  // namespace boolperc
