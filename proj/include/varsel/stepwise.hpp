#pragma once

#include <Eigen/Dense>
#include <vector>

#include "varsel/standardize.hpp"

namespace varsel {

struct StepwiseOptions {
  double threshold = 0.0;   // squared-t entry cutoff
  int max_terms = -1;       // -1: limited only by the df guard
  int min_residual_df = 2;  // stop before n - q - 1 drops below this
};

struct StepwiseFit {
  std::vector<int> selected;       // column indices in entry order
  Eigen::VectorXd coefficients;    // [intercept, b_1..b_q] in entry order
  std::vector<double> entry_tsq;   // squared partial t at each entry
  int q = 0;                       // number of selected predictors
  double sigma2_hat = 0.0;         // RSS(q) / (n - q - 1)
  int df = 0;                      // n - q - 1
  double rss = 0.0;
};

// Hard-threshold entry cutoff 2 ln(m) for a search over m candidates.
double ric_threshold(int m);

// Greedy forward selection on columns of Z against y: each step refits the
// enlarged model and admits the candidate with the largest squared partial
// t-statistic, provided it meets options.threshold. Ties break to the lowest
// column index; candidates (numerically) collinear with the active set are
// skipped. y is used as given; Z columns need not be standardized.
StepwiseFit forward_stepwise(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                             const StepwiseOptions& options);

// Forward stepwise with the hard threshold 2 ln(m_for_threshold); by default
// the threshold reflects the dataset's own candidate count.
StepwiseFit forward_stepwise_ric(const StandardizedDataset& d,
                                 int m_for_threshold);
StepwiseFit forward_stepwise_ric(const StandardizedDataset& d);

}  // namespace varsel
