#pragma once

#include <Eigen/Dense>
#include <vector>

#include "varsel/dataset.hpp"

namespace varsel {

// A dataset whose predictors have mean 0 / unit sample standard deviation
// (divisor n-1) and whose response is centered. Centers and scales are kept
// so the transform can be replayed on held-out rows.
struct StandardizedDataset {
  Eigen::MatrixXd Z;        // standardized predictors, n x m
  Eigen::VectorXd yc;       // centered response
  Eigen::VectorXd centers;  // per-column mean
  Eigen::VectorXd scales;   // per-column sample SD (1 where lenient fallback hit)
  double y_center = 0.0;
  std::vector<ColumnMeta> columns;

  Eigen::Index n() const { return Z.rows(); }
  Eigen::Index m() const { return Z.cols(); }
};

// Strict standardization: a (near-)constant column is rejected with a
// ZeroVarianceError naming the column.
StandardizedDataset standardize(const Dataset& d);

// Lenient variant for use inside cross-validation folds, where a column can
// be constant within the training cases: such a column keeps scale 1 and
// becomes identically zero, so no selector can pick it.
StandardizedDataset standardize_lenient(const Dataset& d);

// Replays the training-set transform on new predictor rows (k x m).
Eigen::MatrixXd apply_standardization(const StandardizedDataset& s,
                                      const Eigen::MatrixXd& rows);

}  // namespace varsel
