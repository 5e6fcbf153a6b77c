#include "varsel/stepwise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "varsel/errors.hpp"

namespace varsel {

double ric_threshold(int m) {
  if (m < 1)
    throw ConfigError("ric_threshold: candidate count must be >= 1, got " +
                      std::to_string(m));
  return 2.0 * std::log(static_cast<double>(m));
}

StepwiseFit forward_stepwise(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                             const StepwiseOptions& options) {
  const Eigen::Index n = Z.rows();
  const Eigen::Index m = Z.cols();
  if (y.size() != n)
    throw DataError("forward_stepwise: response length != case count");
  if (n < 3)
    throw ConfigError("forward_stepwise: need n >= 3, got " + std::to_string(n));
  if (options.min_residual_df < 1)
    throw ConfigError("forward_stepwise: min_residual_df must be >= 1");

  // Orthonormal basis of the current model, intercept first; candidates are
  // scored by the fit improvement of their component orthogonal to it.
  const Eigen::Index basis_cap = std::min<Eigen::Index>(m, n) + 1;
  Eigen::MatrixXd Q(n, basis_cap);
  Q.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd r = y;
  r -= Q.col(0) * Q.col(0).dot(y);
  double rss = r.squaredNorm();
  const double rss0 = rss;

  Eigen::VectorXd col_norm2(m);
  for (Eigen::Index j = 0; j < m; ++j) col_norm2[j] = Z.col(j).squaredNorm();

  StepwiseFit fit;
  std::vector<char> in_model(static_cast<std::size_t>(m), 0);

  while (true) {
    const int q = static_cast<int>(fit.selected.size());
    if (options.max_terms >= 0 && q >= options.max_terms) break;
    const int df_new = static_cast<int>(n) - q - 2;
    if (df_new < options.min_residual_df) break;
    if (rss <= 1e-20 * rss0) break;  // numerically perfect fit

    int best = -1;
    double best_t2 = -1.0;
    Eigen::VectorXd best_z;
    const auto basis = Q.leftCols(q + 1);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (in_model[static_cast<std::size_t>(j)] || col_norm2[j] < 1e-24)
        continue;
      Eigen::VectorXd z = Z.col(j) - basis * (basis.transpose() * Z.col(j));
      const double nz2 = z.squaredNorm();
      if (nz2 < 1e-20 * col_norm2[j]) continue;  // collinear with the model
      const double proj = z.dot(r);
      const double drss = proj * proj / nz2;
      const double new_rss = std::max(rss - drss, 0.0);
      double t2;
      if (new_rss > 0.0)
        t2 = drss * static_cast<double>(df_new) / new_rss;
      else
        t2 = drss > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      if (t2 > best_t2) {  // strict: ties keep the lowest index
        best_t2 = t2;
        best = static_cast<int>(j);
        best_z = std::move(z);
      }
    }
    if (best < 0 || best_t2 < options.threshold) break;

    Q.col(q + 1) = best_z / best_z.norm();
    r -= Q.col(q + 1) * Q.col(q + 1).dot(r);
    rss = r.squaredNorm();
    fit.selected.push_back(best);
    fit.entry_tsq.push_back(best_t2);
    in_model[static_cast<std::size_t>(best)] = 1;
  }

  fit.q = static_cast<int>(fit.selected.size());
  fit.df = static_cast<int>(n) - fit.q - 1;
  fit.rss = rss;
  fit.sigma2_hat = rss / static_cast<double>(fit.df);

  // Least-squares refit (with intercept) for reporting coefficients.
  Eigen::MatrixXd M(n, fit.q + 1);
  M.col(0).setOnes();
  for (int k = 0; k < fit.q; ++k)
    M.col(k + 1) = Z.col(fit.selected[static_cast<std::size_t>(k)]);
  fit.coefficients = M.colPivHouseholderQr().solve(y);
  return fit;
}

StepwiseFit forward_stepwise_ric(const StandardizedDataset& d,
                                 int m_for_threshold) {
  StepwiseOptions options;
  options.threshold = ric_threshold(m_for_threshold);
  return forward_stepwise(d.Z, d.yc, options);
}

StepwiseFit forward_stepwise_ric(const StandardizedDataset& d) {
  return forward_stepwise_ric(d, static_cast<int>(d.m()));
}

}  // namespace varsel
