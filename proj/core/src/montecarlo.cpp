#include "koenigs/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <thread>

#include "koenigs/numeric.hpp"

namespace koenigs {
namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256++, seeded per replicate through splitmix64
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t replicate) {
    std::uint64_t sm = seed ^ (0xD1B54A32D192ED03ull * (replicate + 1));
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Knuth multiplication method; fine for the lambdas of this model
  std::int64_t poisson(double lambda) {
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

struct ReplicateResult {
  std::vector<std::int64_t> checkpoint_pops;
  bool truncated = false;
};

struct Event {
  double time;
  std::int64_t id;
  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    return id > o.id;
  }
};

ReplicateResult run_replicate(const SimConfig& cfg, const std::vector<double>& cps,
                              std::uint64_t replicate) {
  Rng rng(cfg.seed, replicate);
  const double lambda = cfg.model.lambda;
  const double K = cfg.model.big_k;

  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> deaths;
  std::int64_t next_id = 0;
  deaths.push({rng.exponential(K), next_id++});

  ReplicateResult out;
  out.checkpoint_pops.reserve(cps.size());
  std::size_t ci = 0;

  while (!deaths.empty()) {
    const Event ev = deaths.top();
    while (ci < cps.size() && cps[ci] <= ev.time) {
      out.checkpoint_pops.push_back(static_cast<std::int64_t>(deaths.size()));
      ++ci;
    }
    if (ci == cps.size()) return out;
    deaths.pop();
    const std::int64_t children = rng.poisson(lambda);
    for (std::int64_t c = 0; c < children; ++c) {
      deaths.push({ev.time + rng.exponential(K), next_id++});
    }
    if (static_cast<std::int64_t>(deaths.size()) > cfg.population_cap) {
      out.truncated = true;
      while (ci < cps.size()) {
        out.checkpoint_pops.push_back(static_cast<std::int64_t>(deaths.size()));
        ++ci;
      }
      return out;
    }
  }
  while (ci < cps.size()) {
    out.checkpoint_pops.push_back(0);
    ++ci;
  }
  return out;
}

struct Partial {
  std::vector<std::map<std::int64_t, std::int64_t>> hist;
  unsigned __int128 sum_x = 0;
  unsigned __int128 sum_x2 = 0;
  std::int64_t extinct = 0;
  std::int64_t truncated = 0;
};

void validate(const SimConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("simulate: replicates >= 1 required");
  if (cfg.population_cap < 1) throw std::invalid_argument("simulate: population cap >= 1 required");
  if (cfg.horizon < 0.0) throw std::invalid_argument("simulate: horizon >= 0 required");
}

std::vector<double> checkpoint_times(const SimConfig& cfg) {
  std::vector<double> cps = cfg.checkpoints;
  if (cps.empty()) cps.push_back(cfg.horizon);
  std::sort(cps.begin(), cps.end());
  if (cps.back() != cfg.horizon)
    throw std::invalid_argument("simulate: last checkpoint must equal the horizon");
  return cps;
}

Partial run_range(const SimConfig& cfg, const std::vector<double>& cps, std::int64_t lo,
                  std::int64_t hi) {
  Partial p;
  p.hist.resize(cps.size());
  for (std::int64_t r = lo; r < hi; ++r) {
    const ReplicateResult res = run_replicate(cfg, cps, static_cast<std::uint64_t>(r));
    for (std::size_t i = 0; i < cps.size(); ++i) ++p.hist[i][res.checkpoint_pops[i]];
    const std::int64_t fin = res.checkpoint_pops.back();
    if (res.truncated) {
      ++p.truncated;
    } else {
      p.sum_x += static_cast<unsigned __int128>(fin);
      p.sum_x2 += static_cast<unsigned __int128>(fin) * static_cast<unsigned __int128>(fin);
      if (fin == 0) ++p.extinct;
    }
  }
  return p;
}

}  // namespace

SimOutcome simulate(const SimConfig& cfg) {
  validate(cfg);
  const std::vector<double> cps = checkpoint_times(cfg);
  const int nthreads = std::max(1, cfg.threads);

  std::vector<Partial> parts(nthreads);
  if (nthreads == 1) {
    parts[0] = run_range(cfg, cps, 0, cfg.replicates);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (cfg.replicates + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::int64_t lo = t * chunk;
      const std::int64_t hi = std::min<std::int64_t>(cfg.replicates, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { parts[t] = run_range(cfg, cps, lo, hi); });
    }
    for (auto& th : pool) th.join();
  }

  // fold in replicate-index (chunk) order; everything integer, so the merge
  // is independent of the thread count
  SimOutcome out;
  out.replicates = cfg.replicates;
  out.histograms.resize(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) out.histograms[i].time = cps[i];
  unsigned __int128 sum_x = 0, sum_x2 = 0;
  std::int64_t extinct = 0;
  for (const Partial& p : parts) {
    for (std::size_t i = 0; i < cps.size(); ++i)
      for (const auto& [pop, cnt] : p.hist[i]) out.histograms[i].counts[pop] += cnt;
    sum_x += p.sum_x;
    sum_x2 += p.sum_x2;
    extinct += p.extinct;
    out.truncated_replicates += p.truncated;
  }
  if (out.truncated_replicates == cfg.replicates)
    throw numerical_error("simulate: every replicate hit the population cap");

  const double n = static_cast<double>(cfg.replicates - out.truncated_replicates);
  const double sx = static_cast<double>(sum_x);
  const double sx2 = static_cast<double>(sum_x2);
  out.mean_estimate = sx / n;
  const double var = std::max(0.0, (sx2 - sx * sx / n) / (n - 1.0));
  out.mean_se = std::sqrt(var / n);
  out.extinct_fraction = static_cast<double>(extinct) / static_cast<double>(cfg.replicates);
  return out;
}

LclResult lcl_estimate(const SimConfig& cfg) {
  if (!(cfg.model.lambda < 1.0))
    throw std::domain_error("lcl_estimate: requires a subcritical model (lambda < 1)");
  const SimOutcome sim = simulate(cfg);
  const auto& hist = sim.histograms.back().counts;

  std::int64_t survivors = 0;
  std::int64_t kmax = 0;
  for (const auto& [pop, cnt] : hist) {
    if (pop > 0) {
      survivors += cnt;
      kmax = std::max(kmax, pop);
    }
  }
  if (survivors < 100) {
    const double p = std::max(1e-12, static_cast<double>(survivors) /
                                         static_cast<double>(cfg.replicates));
    throw numerical_error(
        "lcl_estimate: too few surviving replicates (" + std::to_string(survivors) +
        "); need roughly R >= " + std::to_string(static_cast<long long>(100.0 / p)));
  }

  LclResult out;
  out.survivors = survivors;
  out.replicates = cfg.replicates;
  out.pmf.assign(static_cast<std::size_t>(kmax), 0.0);
  out.se.assign(static_cast<std::size_t>(kmax), 0.0);
  for (const auto& [pop, cnt] : hist) {
    if (pop > 0) out.pmf[static_cast<std::size_t>(pop - 1)] = static_cast<double>(cnt) / survivors;
  }
  for (std::size_t i = 0; i < out.pmf.size(); ++i) {
    out.se[i] = std::sqrt(out.pmf[i] * (1.0 - out.pmf[i]) / static_cast<double>(survivors));
  }
  return out;
}

}  // namespace koenigs
