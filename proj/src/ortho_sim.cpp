#include "varsel/ortho_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "varsel/errors.hpp"
#include "varsel/lars.hpp"
#include "varsel/parallel.hpp"
#include "varsel/rng.hpp"

namespace varsel {

namespace {

void validate(const SimConfig& cfg) {
  if (cfg.n_signal < 0 || cfg.n_noise < 0)
    throw ConfigError("sim: sample counts must be >= 0");
  if (cfg.n() < 2) throw ConfigError("sim: need n >= 2");
  if (cfg.reps < 1) throw ConfigError("sim: need reps >= 1");
  if (cfg.max_q < 0 || cfg.max_q > cfg.n())
    throw ConfigError("sim: max_q must lie in [0, n], got " +
                      std::to_string(cfg.max_q));
  if (cfg.threads < 1) throw ConfigError("sim: threads must be >= 1");
}

}  // namespace

SimSummary simulate_orthogonal(const SimConfig& cfg) {
  validate(cfg);
  const int n = cfg.n();
  const int width = cfg.max_q + 1;

  // Per-replicate slots; the reduction below runs in replicate order, so the
  // result does not depend on cfg.threads.
  std::vector<double> curves(static_cast<std::size_t>(cfg.reps) *
                             static_cast<std::size_t>(width));
  std::vector<int> argmins(static_cast<std::size_t>(cfg.reps));

  parallel_for(cfg.reps, cfg.threads, [&](int rep) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
    std::vector<std::pair<double, int>> sq(static_cast<std::size_t>(n));
    for (int i = 0; i < cfg.n_signal; ++i) {
      const double d = rng.normal(cfg.mu, 1.0);
      sq[static_cast<std::size_t>(i)] = {d * d, i};
    }
    for (int i = cfg.n_signal; i < n; ++i) {
      const double d = rng.normal();
      sq[static_cast<std::size_t>(i)] = {d * d, i};
    }
    // Descending squares; the index tiebreak pins the order should two
    // draws coincide exactly.
    std::sort(sq.begin(), sq.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = sq[static_cast<std::size_t>(i)].first;

    double* row = &curves[static_cast<std::size_t>(rep) *
                          static_cast<std::size_t>(width)];
    const double rss0 = soft_threshold_rss(v, 0);
    int argmin = 0;
    for (int q = 0; q <= cfg.max_q; ++q) {
      row[q] = soft_threshold_rss(v, static_cast<std::size_t>(q)) - rss0 +
               2.0 * static_cast<double>(q);
      if (row[q] < row[argmin]) argmin = q;
    }
    argmins[static_cast<std::size_t>(rep)] = argmin;
  });

  SimSummary out;
  out.config = cfg;
  out.rows.resize(static_cast<std::size_t>(width));
  std::vector<long long> counts(static_cast<std::size_t>(width), 0);
  for (int rep = 0; rep < cfg.reps; ++rep)
    ++counts[static_cast<std::size_t>(argmins[static_cast<std::size_t>(rep)])];

  for (int q = 0; q < width; ++q) {
    double mean = 0.0;
    for (int rep = 0; rep < cfg.reps; ++rep)
      mean += curves[static_cast<std::size_t>(rep) *
                     static_cast<std::size_t>(width) + static_cast<std::size_t>(q)];
    mean /= static_cast<double>(cfg.reps);
    double ss = 0.0;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const double d = curves[static_cast<std::size_t>(rep) *
                              static_cast<std::size_t>(width) +
                              static_cast<std::size_t>(q)] - mean;
      ss += d * d;
    }
    const double sd =
        cfg.reps > 1 ? std::sqrt(ss / static_cast<double>(cfg.reps - 1)) : 0.0;
    out.rows[static_cast<std::size_t>(q)] = {
        q, mean, sd,
        static_cast<double>(counts[static_cast<std::size_t>(q)]) /
            static_cast<double>(cfg.reps)};
  }
  return out;
}

}  // namespace varsel
