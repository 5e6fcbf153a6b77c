#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varsel/dataset.hpp"

namespace varsel {

enum class Method { stepwise_ric, lars_cp, lars_sp };

const char* to_string(Method method);

enum class Sigma2Source { twostep, largest };

const char* to_string(Sigma2Source source);

struct CvConfig {
  int folds = 5;
  int reps = 20;
  std::vector<Method> methods = {Method::stepwise_ric, Method::lars_cp,
                                 Method::lars_sp};
  int max_steps = 50;   // path cap; per fold the effective cap is
                        // min(max_steps, n_train - 1, m)
  int spurious_k = 0;   // informational: augmentation happens upstream
  std::uint64_t seed = 0;
  Sigma2Source cp_sigma2 = Sigma2Source::twostep;
  Sigma2Source sp_sigma2 = Sigma2Source::twostep;
  int threads = 1;
};

struct CvRow {
  int rep = 0;
  int fold = 0;
  Method method = Method::stepwise_ric;
  int q = 0;
  double rmse = 0.0;
};

struct CvReport {
  CvConfig config;
  std::vector<CvRow> rows;  // reps * folds rows per method, in
                            // (rep, fold, method) order
  std::map<std::string, double> median_q;
  std::map<std::string, double> median_rmse;
};

// Root mean squared prediction error.
double rmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& actual);

// Training-fold sizes: n/folds cases each, the first n mod folds getting one
// extra (442 cases over 5 folds -> 89, 89, 88, 88, 88).
std::vector<int> fold_sizes(Eigen::Index n, int folds);

// Reversed cross-validation: per rep, shuffle the cases into `folds` groups;
// each group in turn is the training set (standardized within itself) and
// every method predicts all remaining cases. d must already be
// feature-expanded/augmented. Deterministic given config.seed and independent
// of config.threads.
CvReport reversed_cv(const Dataset& d, const CvConfig& config);

}  // namespace varsel
