#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "varsel/standardize.hpp"

namespace varsel {

struct PathStep {
  std::vector<int> active;  // column indices in entry order; size q at step q
  Eigen::VectorXd coef;     // coefficients over `active`, same order
  double rss = 0.0;
};

// Least-angle regression path. steps[0] is the empty model (rss = |y|^2 for
// the matrix overload, |y - ybar|^2 for the standardized overload); steps[q]
// records the fit after the q-th equiangular move, i.e. at the breakpoint
// where variable q+1 would enter.
struct LarsPath {
  std::vector<PathStep> steps;
  Eigen::Index n = 0;
  int max_steps = 0;
  bool truncated = false;  // stopped early on a rank-deficient active set

  const std::vector<double>& rss_sequence() const { return rss_; }
  std::vector<double> rss_;  // steps[q].rss, cached for criterion traces
};

// Core path on an explicit design. y is used as given (no centering), so the
// step cap is min(m, n). Ties in |correlation| break to the lowest column
// index; zero-norm columns are never candidates. When adding a column would
// make the active Gram matrix singular (relative pivot below 1e-10) the path
// stops early and `truncated` is set.
LarsPath lars_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   int max_steps);

// Convenience overload on standardized data; the centered response consumes
// one degree of freedom, so max_steps must be <= min(m, n-1).
LarsPath lars_path(const StandardizedDataset& d, int max_steps);

// Residual sum of squares of the q-term orthogonal soft-threshold fit:
// RSS(q) = (q+1) * v[q] + sum_{j>q} v[j] over squared responses v sorted in
// nonincreasing order; RSS(n) = 0. Rejects input with an ascending pair or a
// negative entry.
double soft_threshold_rss(const std::vector<double>& sorted_sq, std::size_t q);

// First difference of the known-variance model-selection score across one
// step in the orthogonal world: (q+1) * (v[q] - v[q+1]) - 2, with v[n] = 0.
double cp_drop(const std::vector<double>& sorted_sq, std::size_t q);

}  // namespace varsel
