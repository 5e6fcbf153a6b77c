#pragma once

#include <cstdint>
#include <vector>

namespace varsel {

// Monte Carlo over the orthogonal identity-design world: each replicate is a
// sample of n_signal draws from Normal(mu, 1) plus n_noise from Normal(0, 1),
// scored by the known-variance criterion proxy RSS(q) - RSS(0) + 2q.
struct SimConfig {
  int n_signal = 0;
  double mu = 0.0;
  int n_noise = 100;
  int reps = 1000;
  std::uint64_t seed = 0;
  int max_q = 40;
  int threads = 1;

  int n() const { return n_signal + n_noise; }
};

struct SimRow {
  int q = 0;
  double mean = 0.0;      // mean of RSS(q) - RSS(0) + 2q over replicates
  double sd = 0.0;        // with divisor reps-1 (0 when reps == 1)
  double sel_freq = 0.0;  // fraction of replicates whose argmin is q
};

struct SimSummary {
  SimConfig config;
  std::vector<SimRow> rows;  // q = 0..max_q
};

// Deterministic given config.seed; replicate r draws from substream (seed, r)
// and results are reduced in replicate order, so the output is independent of
// config.threads.
SimSummary simulate_orthogonal(const SimConfig& config);

}  // namespace varsel
