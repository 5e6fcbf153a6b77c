#include "varsel/standardize.hpp"

#include <cmath>
#include <string>

#include "varsel/errors.hpp"

namespace varsel {

namespace {

StandardizedDataset standardize_impl(const Dataset& d, bool strict) {
  d.validate();
  const Eigen::Index n = d.n();
  const Eigen::Index m = d.m();
  if (n < 2) throw DataError("standardize: need at least two cases");

  StandardizedDataset s;
  s.columns = d.columns;
  s.centers.resize(m);
  s.scales.resize(m);
  s.Z.resize(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double center = d.X.col(j).mean();
    Eigen::VectorXd c = d.X.col(j).array() - center;
    const double sd = std::sqrt(c.squaredNorm() / static_cast<double>(n - 1));
    const double floor = 1e-12 * std::max(1.0, std::abs(center));
    double scale = sd;
    if (sd < floor) {
      if (strict)
        throw ZeroVarianceError("standardize: column '" +
                                d.columns[static_cast<std::size_t>(j)].name +
                                "' has zero variance");
      scale = 1.0;
      c.setZero();
    }
    s.centers[j] = center;
    s.scales[j] = scale;
    s.Z.col(j) = c / scale;
  }
  s.y_center = d.y.mean();
  s.yc = d.y.array() - s.y_center;
  return s;
}

}  // namespace

StandardizedDataset standardize(const Dataset& d) {
  return standardize_impl(d, /*strict=*/true);
}

StandardizedDataset standardize_lenient(const Dataset& d) {
  return standardize_impl(d, /*strict=*/false);
}

Eigen::MatrixXd apply_standardization(const StandardizedDataset& s,
                                      const Eigen::MatrixXd& rows) {
  if (rows.cols() != s.m())
    throw DataError("apply_standardization: row width " +
                    std::to_string(rows.cols()) + " != column count " +
                    std::to_string(s.m()));
  Eigen::MatrixXd out = rows;
  out.rowwise() -= s.centers.transpose();
  out.array().rowwise() /= s.scales.transpose().array();
  return out;
}

}  // namespace varsel
