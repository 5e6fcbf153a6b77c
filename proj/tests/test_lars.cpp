#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "varsel/criteria.hpp"
#include "varsel/errors.hpp"
#include "varsel/lars.hpp"
#include "varsel/rng.hpp"

using varsel::lars_path;
using varsel::LarsPath;
using varsel::Rng;
using varsel::soft_threshold_rss;

namespace {

// A signed permutation design is orthonormal, so the path's RSS sequence has
// a closed form in the sorted squared correlations.
Eigen::MatrixXd signed_permutation(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    X(perm[static_cast<std::size_t>(j)], j) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return X;
}

std::vector<double> sorted_squares(const Eigen::VectorXd& c) {
  std::vector<double> v(static_cast<std::size_t>(c.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    v[static_cast<std::size_t>(i)] = c[i] * c[i];
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace

TEST_CASE("soft_threshold_rss frozen values on squares (9, 4, 1)") {
  const std::vector<double> v = {9, 4, 1};
  CHECK(soft_threshold_rss(v, 0) == doctest::Approx(14.0).epsilon(1e-14));
  CHECK(soft_threshold_rss(v, 1) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(soft_threshold_rss(v, 2) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(soft_threshold_rss(v, 3) == 0.0);
  CHECK_THROWS_AS(soft_threshold_rss(v, 4), varsel::ConfigError);
  CHECK_THROWS_AS(soft_threshold_rss({1, 2, 3}, 0), varsel::ConfigError);
  CHECK_THROWS_AS(soft_threshold_rss({3, -1}, 0), varsel::ConfigError);
}

TEST_CASE("cp_drop frozen values and degenerate spacing") {
  const std::vector<double> v = {9, 4, 1};
  CHECK(varsel::cp_drop(v, 0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(varsel::cp_drop(v, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(varsel::cp_drop(v, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(varsel::cp_drop(v, 3), varsel::ConfigError);

  const std::vector<double> flat = {4, 4, 4, 4};
  for (std::size_t q = 0; q + 1 < flat.size(); ++q)
    CHECK(varsel::cp_drop(flat, q) == doctest::Approx(-2.0));
}

TEST_CASE("cp_drop equals the first difference of the known-variance trace") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(20));
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.normal();
    const std::vector<double> v = sorted_squares(y);
    std::vector<double> rss;
    for (int q = 0; q <= n; ++q)
      rss.push_back(soft_threshold_rss(v, static_cast<std::size_t>(q)));
    const auto trace = varsel::cp_known_sigma(rss, n);
    for (int q = 0; q < n; ++q) {
      const double diff = trace.values[static_cast<std::size_t>(q)] -
                          trace.values[static_cast<std::size_t>(q + 1)];
      CHECK(std::abs(varsel::cp_drop(v, static_cast<std::size_t>(q)) - diff) <
            1e-12);
    }
  }
}

TEST_CASE("2x2 identity design with y = (3, 1) has RSS path (10, 2, 0)") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd y(2);
  y << 3, 1;
  const LarsPath path = lars_path(X, y, 2);
  REQUIRE(path.rss_sequence().size() == 3);
  CHECK(path.rss_sequence()[0] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(path.rss_sequence()[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(path.rss_sequence()[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(path.steps[1].active == std::vector<int>{0});
  // At the first breakpoint the leading coefficient is soft-thresholded to
  // 3 - 1 = 2.
  CHECK(path.steps[1].coef[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(path.steps[2].coef[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(path.steps[2].coef[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("y orthogonal to every column stops the path immediately") {
  Eigen::MatrixXd X(2, 1);
  X << 1, -1;
  Eigen::VectorXd y(2);
  y << 1, 1;
  const LarsPath path = lars_path(X, y, 1);
  CHECK(path.steps.size() == 1);
  CHECK(path.rss_sequence()[0] == doctest::Approx(2.0));
}

TEST_CASE("identity design with a single nonzero response fits in one step") {
  const int n = 6;
  const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y[3] = 2.5;
  const LarsPath path = lars_path(X, y, n);
  REQUIRE(path.steps.size() >= 2);
  CHECK(path.steps[1].active == std::vector<int>{3});
  CHECK(path.rss_sequence()[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("orthonormal designs match the soft-threshold closed form") {
  Rng rng(33, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(29));
    const Eigen::MatrixXd X = signed_permutation(n, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.normal();
    const LarsPath path = lars_path(X, y, n);
    REQUIRE(path.rss_sequence().size() == static_cast<std::size_t>(n) + 1);
    const std::vector<double> v = sorted_squares(X.transpose() * y);
    const double scale = std::max(1.0, path.rss_sequence()[0]);
    for (int q = 0; q <= n; ++q)
      CHECK(std::abs(path.rss_sequence()[static_cast<std::size_t>(q)] -
                     soft_threshold_rss(v, static_cast<std::size_t>(q))) <
            1e-8 * scale);
  }
}

TEST_CASE("a dense orthonormal design also matches the closed form") {
  Rng rng(34, 0);
  const int n = 12;
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  const Eigen::MatrixXd Q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();
  const LarsPath path = lars_path(Q, y, n);
  REQUIRE(path.rss_sequence().size() == static_cast<std::size_t>(n) + 1);
  const std::vector<double> v = sorted_squares(Q.transpose() * y);
  for (int q = 0; q <= n; ++q)
    CHECK(std::abs(path.rss_sequence()[static_cast<std::size_t>(q)] -
                   soft_threshold_rss(v, static_cast<std::size_t>(q))) < 1e-8);
}

TEST_CASE("path RSS is nonincreasing on random general-position designs") {
  Rng rng(35, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 30, m = 10;
    Eigen::MatrixXd X(n, m);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y[i] = rng.normal();
      for (int j = 0; j < m; ++j) X(i, j) = rng.normal();
    }
    const LarsPath path = lars_path(X, y, m);
    for (std::size_t q = 1; q < path.rss_sequence().size(); ++q)
      CHECK(path.rss_sequence()[q] <= path.rss_sequence()[q - 1]);
    CHECK(!path.truncated);
    CHECK(path.steps.size() == static_cast<std::size_t>(m) + 1);
  }
}

TEST_CASE("duplicate columns truncate the path instead of corrupting it") {
  Rng rng(36, 0);
  const int n = 20;
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = rng.normal();
    X(i, 2) = rng.normal();
    y[i] = rng.normal();
  }
  X.col(1) = X.col(0);
  const LarsPath path = lars_path(X, y, 3);
  CHECK(path.truncated);
  CHECK(path.steps.size() < 4);
  for (std::size_t q = 1; q < path.rss_sequence().size(); ++q)
    CHECK(path.rss_sequence()[q] <= path.rss_sequence()[q - 1]);
}

TEST_CASE("zero-norm columns are never entered") {
  Rng rng(37, 0);
  const int n = 15;
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = rng.normal();
    X(i, 2) = rng.normal();
    y[i] = X(i, 0) + 0.3 * X(i, 2) + 0.1 * rng.normal();
  }
  X.col(1).setZero();
  const LarsPath path = lars_path(X, y, 3);
  for (const auto& step : path.steps)
    for (const int j : step.active) CHECK(j != 1);
}

TEST_CASE("max_steps beyond the cap is rejected") {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  CHECK_THROWS_AS(lars_path(X, y, 5), varsel::ConfigError);
  CHECK_THROWS_AS(lars_path(X, y, -1), varsel::ConfigError);
}

TEST_CASE("standardized overload centers the response and caps at n - 1") {
  varsel::Dataset d;
  Rng rng(38, 0);
  const int n = 10;
  d.X.resize(n, 3);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    d.y[i] = 5.0 + rng.normal();
    for (int j = 0; j < 3; ++j) d.X(i, j) = rng.normal();
  }
  d.columns = {{"a", varsel::ColumnKind::base, false, {}},
               {"b", varsel::ColumnKind::base, false, {}},
               {"c", varsel::ColumnKind::base, false, {}}};
  const auto s = standardize(d);
  const LarsPath path = lars_path(s, 3);
  CHECK(path.rss_sequence()[0] ==
        doctest::Approx((d.y.array() - d.y.mean()).matrix().squaredNorm()));
  CHECK_THROWS_AS(lars_path(s, 10), varsel::ConfigError);
}

TEST_CASE("breakpoint RSS agrees with a dense L1-constrained grid search") {
  // Small-instance oracle: at each breakpoint, coefficients solve least
  // squares subject to sum |b_j| <= t at the breakpoint's own t, provided no
  // coefficient crosses zero along the path (checked below).
  Rng rng(39, 0);
  int tested = 0;
  int attempts = 0;
  while (tested < 5 && attempts < 60) {
    ++attempts;
    const int m = 2;
    const int n = 8;
    Eigen::MatrixXd X(n, m);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) X(i, j) = rng.normal();
      y[i] = rng.normal();
    }
    const LarsPath path = lars_path(X, y, m);
    if (path.truncated) continue;
    bool sign_consistent = true;
    for (std::size_t q = 2; q < path.steps.size() && sign_consistent; ++q) {
      Eigen::VectorXd prev = Eigen::VectorXd::Zero(m);
      const auto& ps = path.steps[q - 1];
      for (std::size_t k = 0; k < ps.active.size(); ++k)
        prev[ps.active[k]] = ps.coef[static_cast<Eigen::Index>(k)];
      const auto& cs = path.steps[q];
      for (std::size_t k = 0; k < cs.active.size(); ++k) {
        const double before = prev[cs.active[k]];
        const double after = cs.coef[static_cast<Eigen::Index>(k)];
        if (before != 0.0 && before * after < 0.0) sign_consistent = false;
      }
    }
    if (!sign_consistent) continue;
    ++tested;
    for (std::size_t q = 1; q < path.steps.size(); ++q) {
      const double t = path.steps[q].coef.cwiseAbs().sum();
      // coarse-to-fine grid search over the coefficient box [-t, t]^m
      Eigen::VectorXd lo = Eigen::VectorXd::Constant(m, -t);
      Eigen::VectorXd hi = Eigen::VectorXd::Constant(m, t);
      double best = y.squaredNorm();
      Eigen::VectorXd best_b = Eigen::VectorXd::Zero(m);
      const int pts = 21;
      for (int round = 0; round < 5; ++round) {
        for (int i0 = 0; i0 < pts; ++i0)
          for (int i1 = 0; i1 < pts; ++i1) {
            Eigen::VectorXd b(m);
            b[0] = lo[0] + (hi[0] - lo[0]) * i0 / (pts - 1);
            b[1] = lo[1] + (hi[1] - lo[1]) * i1 / (pts - 1);
            if (b.cwiseAbs().sum() > t * (1 + 1e-12)) continue;
            const double rss = (y - X * b).squaredNorm();
            if (rss < best) {
              best = rss;
              best_b = b;
            }
          }
        const Eigen::VectorXd width = (hi - lo) / (pts - 1);
        lo = best_b - width;
        hi = best_b + width;
      }
      CHECK(std::abs(best - path.rss_sequence()[q]) < 1e-4);
    }
  }
  CHECK(tested == 5);
}
