#ifndef KOENIGS_MONTECARLO_HPP
#define KOENIGS_MONTECARLO_HPP

// Event-driven simulation of the continuous-time MBP with Poisson
// reproduction: every particle lives Exp(K) and is replaced at death by
// Poisson(lambda) children. Deaths are processed from a priority queue keyed
// by (event time, particle id). Replicate r draws from an independent
// substream derived from (seed, r), so results are bit-identical for a given
// (seed, R, config) regardless of worker count: all cross-replicate
// aggregation is integer arithmetic merged in replicate order.

#include <cstdint>
#include <map>
#include <vector>

#include "koenigs/model.hpp"

namespace koenigs {

struct SimConfig {
  BranchingModel<double> model;
  double horizon;                       // time of the final checkpoint
  std::int64_t replicates;
  std::uint64_t seed;
  std::int64_t population_cap = 1'000'000;
  std::vector<double> checkpoints;      // defaults to {horizon}
  int threads = 1;
};

struct CheckpointHistogram {
  double time;
  std::map<std::int64_t, std::int64_t> counts;  // population -> replicates
};

struct SimOutcome {
  std::vector<CheckpointHistogram> histograms;
  double extinct_fraction = 0;   // X(horizon) == 0; truncated counted alive
  double mean_estimate = 0;      // over non-truncated replicates
  double mean_se = 0;
  std::int64_t truncated_replicates = 0;
  std::int64_t replicates = 0;
};

SimOutcome simulate(const SimConfig& config);

struct LclResult {
  std::vector<double> pmf;  // pmf[i] = P(X = i+1 | X > 0)
  std::vector<double> se;
  std::int64_t survivors = 0;
  std::int64_t replicates = 0;
};

// Conditional histogram of X(horizon) given X(horizon) > 0 (lambda < 1).
LclResult lcl_estimate(const SimConfig& config);

}  // namespace koenigs

#endif  // KOENIGS_MONTECARLO_HPP
