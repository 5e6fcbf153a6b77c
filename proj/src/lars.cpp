#include "varsel/lars.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "varsel/errors.hpp"

namespace varsel {

namespace {

void check_sorted_squares(const std::vector<double>& v, const char* who) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0)
      throw ConfigError(std::string(who) + ": squared responses must be >= 0");
    if (i + 1 < v.size() && v[i] < v[i + 1])
      throw ConfigError(std::string(who) + ": input must be nonincreasing");
  }
}

}  // namespace

double soft_threshold_rss(const std::vector<double>& sorted_sq, std::size_t q) {
  check_sorted_squares(sorted_sq, "soft_threshold_rss");
  const std::size_t n = sorted_sq.size();
  if (q > n)
    throw ConfigError("soft_threshold_rss: q = " + std::to_string(q) +
                      " exceeds n = " + std::to_string(n));
  if (q == n) return 0.0;
  double tail = 0.0;
  for (std::size_t j = n; j-- > q + 1;) tail += sorted_sq[j];
  return static_cast<double>(q + 1) * sorted_sq[q] + tail;
}

double cp_drop(const std::vector<double>& sorted_sq, std::size_t q) {
  check_sorted_squares(sorted_sq, "cp_drop");
  const std::size_t n = sorted_sq.size();
  if (q + 1 > n)
    throw ConfigError("cp_drop: q = " + std::to_string(q) +
                      " exceeds n - 1 = " + std::to_string(n) + " - 1");
  const double next = (q + 1 < n) ? sorted_sq[q + 1] : 0.0;
  return static_cast<double>(q + 1) * (sorted_sq[q] - next) - 2.0;
}

LarsPath lars_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   int max_steps) {
  const Eigen::Index n = X.rows();
  const Eigen::Index m = X.cols();
  if (y.size() != n)
    throw DataError("lars_path: response length != case count");
  const Eigen::Index cap = std::min(m, n);
  if (max_steps < 0 || max_steps > cap)
    throw ConfigError("lars_path: max_steps = " + std::to_string(max_steps) +
                      " outside [0, min(m, n)] = [0, " + std::to_string(cap) +
                      "]");

  LarsPath path;
  path.n = n;
  path.max_steps = max_steps;

  Eigen::VectorXd col_norm2(m);
  double max_norm = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    col_norm2[j] = X.col(j).squaredNorm();
    max_norm = std::max(max_norm, std::sqrt(col_norm2[j]));
  }
  // Columns with vanishing norm carry no information and are never entered.
  const double usable_norm2 = 1e-12 * 1e-12;
  const double corr_tol = 1e-12 * max_norm * y.norm();

  Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  std::vector<int> active;
  std::vector<double> sign;
  std::vector<char> is_active(static_cast<std::size_t>(m), 0);
  Eigen::MatrixXd L(max_steps, max_steps);  // Cholesky factor of the signed
                                            // active Gram matrix

  path.steps.push_back({{}, Eigen::VectorXd(), y.squaredNorm()});
  path.rss_.push_back(path.steps[0].rss);

  while (static_cast<int>(active.size()) < max_steps) {
    const Eigen::VectorXd r = y - mu;
    const Eigen::VectorXd c = X.transpose() * r;

    int best = -1;
    double c_max = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (is_active[static_cast<std::size_t>(j)] || col_norm2[j] < usable_norm2)
        continue;
      const double a = std::abs(c[j]);
      if (a > c_max) {  // strict: ties keep the lowest index
        c_max = a;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || c_max <= corr_tol) break;

    // Grow the Cholesky factor by the entering column; a vanishing pivot
    // means the active set would lose full rank, so the path ends here.
    const int q_old = static_cast<int>(active.size());
    const double s_new = c[best] > 0.0 ? 1.0 : -1.0;
    Eigen::VectorXd rhs(q_old);
    for (int k = 0; k < q_old; ++k)
      rhs[k] = s_new * sign[static_cast<std::size_t>(k)] *
               X.col(best).dot(X.col(active[static_cast<std::size_t>(k)]));
    Eigen::VectorXd v(q_old);
    for (int i = 0; i < q_old; ++i) {
      double acc = rhs[i];
      for (int k = 0; k < i; ++k) acc -= L(i, k) * v[k];
      v[i] = acc / L(i, i);
    }
    const double pivot2 = col_norm2[best] - v.squaredNorm();
    if (pivot2 < 1e-10 * col_norm2[best]) {
      path.truncated = true;
      break;
    }
    for (int k = 0; k < q_old; ++k) L(q_old, k) = v[k];
    L(q_old, q_old) = std::sqrt(pivot2);
    active.push_back(best);
    sign.push_back(s_new);
    is_active[static_cast<std::size_t>(best)] = 1;
    const int q = q_old + 1;

    // Equiangular direction: w = A * G^-1 * 1 over the signed active columns.
    Eigen::VectorXd w1(q);
    for (int i = 0; i < q; ++i) {
      double acc = 1.0;
      for (int k = 0; k < i; ++k) acc -= L(i, k) * w1[k];
      w1[i] = acc / L(i, i);
    }
    for (int i = q; i-- > 0;) {
      double acc = w1[i];
      for (int k = i + 1; k < q; ++k) acc -= L(k, i) * w1[k];
      w1[i] = acc / L(i, i);
    }
    const double denom = w1.sum();
    if (!(denom > 0.0)) {
      active.pop_back();
      sign.pop_back();
      is_active[static_cast<std::size_t>(best)] = 0;
      path.truncated = true;
      break;
    }
    const double A = 1.0 / std::sqrt(denom);
    const Eigen::VectorXd w = A * w1;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < q; ++k)
      u += sign[static_cast<std::size_t>(k)] * w[k] *
           X.col(active[static_cast<std::size_t>(k)]);
    const double c_best = std::abs(c[active.back()]);

    // Step length to the next breakpoint; the full least-squares jump
    // c_best / A bounds it and applies when no inactive column competes.
    const double gamma_full = c_best / A;
    double gamma = gamma_full;
    const Eigen::VectorXd a = X.transpose() * u;
    auto consider = [&](double num, double den) {
      if (den <= 1e-12) return;
      double g = num / den;
      if (g < -1e-9 * gamma_full) return;
      gamma = std::min(gamma, std::max(g, 0.0));
    };
    for (Eigen::Index j = 0; j < m; ++j) {
      if (is_active[static_cast<std::size_t>(j)] || col_norm2[j] < usable_norm2)
        continue;
      consider(c_best - c[j], A - a[j]);
      consider(c_best + c[j], A + a[j]);
    }

    mu += gamma * u;
    for (int k = 0; k < q; ++k)
      beta[active[static_cast<std::size_t>(k)]] +=
          gamma * sign[static_cast<std::size_t>(k)] * w[k];

    PathStep step;
    step.active = active;
    step.coef.resize(q);
    for (int k = 0; k < q; ++k)
      step.coef[k] = beta[active[static_cast<std::size_t>(k)]];
    step.rss = (y - mu).squaredNorm();
    // Guard against float drift: RSS is mathematically nonincreasing.
    step.rss = std::min(step.rss, path.steps.back().rss);
    path.steps.push_back(std::move(step));
    path.rss_.push_back(path.steps.back().rss);
  }
  return path;
}

LarsPath lars_path(const StandardizedDataset& d, int max_steps) {
  const Eigen::Index cap = std::min(d.m(), d.n() - 1);
  if (max_steps < 0 || max_steps > cap)
    throw ConfigError("lars_path: max_steps = " + std::to_string(max_steps) +
                      " outside [0, min(m, n-1)] = [0, " + std::to_string(cap) +
                      "]");
  return lars_path(d.Z, d.yc, max_steps);
}

}  // namespace varsel
