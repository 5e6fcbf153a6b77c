#include "varsel/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "varsel/criteria.hpp"
#include "varsel/errors.hpp"
#include "varsel/lars.hpp"
#include "varsel/parallel.hpp"
#include "varsel/standardize.hpp"
#include "varsel/stepwise.hpp"

namespace varsel {

const char* to_string(Method method) {
  switch (method) {
    case Method::stepwise_ric: return "stepwise_ric";
    case Method::lars_cp: return "lars_cp";
    case Method::lars_sp: return "lars_sp";
  }
  return "?";
}

const char* to_string(Sigma2Source source) {
  switch (source) {
    case Sigma2Source::twostep: return "twostep";
    case Sigma2Source::largest: return "largest";
  }
  return "?";
}

double rmse(const Eigen::VectorXd& predicted, const Eigen::VectorXd& actual) {
  if (predicted.size() != actual.size())
    throw DataError("rmse: length mismatch: " + std::to_string(predicted.size()) +
                    " vs " + std::to_string(actual.size()));
  if (predicted.size() == 0) throw DataError("rmse: empty vectors");
  return std::sqrt((predicted - actual).squaredNorm() /
                   static_cast<double>(predicted.size()));
}

std::vector<int> fold_sizes(Eigen::Index n, int folds) {
  if (folds < 1) throw ConfigError("fold_sizes: folds must be >= 1");
  std::vector<int> sizes(static_cast<std::size_t>(folds));
  const int base = static_cast<int>(n) / folds;
  const int extra = static_cast<int>(n) % folds;
  for (int f = 0; f < folds; ++f)
    sizes[static_cast<std::size_t>(f)] = base + (f < extra ? 1 : 0);
  return sizes;
}

namespace {

struct Outcome {
  int q = 0;
  double rmse = 0.0;
};

void validate(const Dataset& d, const CvConfig& cfg) {
  d.validate();
  if (cfg.folds < 2) throw ConfigError("cv: folds must be >= 2");
  if (cfg.reps < 1) throw ConfigError("cv: reps must be >= 1");
  if (cfg.max_steps < 1) throw ConfigError("cv: max_steps must be >= 1");
  if (cfg.threads < 1) throw ConfigError("cv: threads must be >= 1");
  if (cfg.methods.empty()) throw ConfigError("cv: method list is empty");
  std::set<Method> seen;
  for (const Method method : cfg.methods)
    if (!seen.insert(method).second)
      throw ConfigError(std::string("cv: duplicate method ") + to_string(method));
  if (d.n() < static_cast<Eigen::Index>(cfg.folds) * 10)
    throw ConfigError("cv: need n >= folds * 10 cases, got n = " +
                      std::to_string(d.n()));
}

// Criterion estimates can collapse to zero on a perfect in-fold fit; a tiny
// positive floor keeps C_p / S_p well defined without affecting real data.
double sigma_floor(double estimate, double rss0) {
  return std::max({estimate, rss0 * 1e-15, 1e-300});
}

Eigen::VectorXd predict(const Dataset& d, const std::vector<int>& case_rows,
                        const StandardizedDataset& s, double intercept,
                        const std::vector<int>& active,
                        const Eigen::VectorXd& coef) {
  Eigen::VectorXd pred = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(case_rows.size()), s.y_center + intercept);
  for (std::size_t k = 0; k < active.size(); ++k) {
    const Eigen::Index j = active[k];
    const double slope = coef[static_cast<Eigen::Index>(k)] / s.scales[j];
    for (std::size_t i = 0; i < case_rows.size(); ++i)
      pred[static_cast<Eigen::Index>(i)] +=
          slope * (d.X(case_rows[i], j) - s.centers[j]);
  }
  return pred;
}

}  // namespace

CvReport reversed_cv(const Dataset& d, const CvConfig& cfg) {
  validate(d, cfg);
  const Eigen::Index n = d.n();
  const int m = static_cast<int>(d.m());
  const int n_methods = static_cast<int>(cfg.methods.size());
  const std::vector<int> sizes = fold_sizes(n, cfg.folds);

  bool wants_stepwise = false;
  bool wants_lars = false;
  for (const Method method : cfg.methods) {
    wants_stepwise |= method == Method::stepwise_ric;
    wants_lars |= method != Method::stepwise_ric;
  }
  const bool wants_twostep =
      wants_lars && (cfg.cp_sigma2 == Sigma2Source::twostep ||
                     cfg.sp_sigma2 == Sigma2Source::twostep);

  std::vector<Outcome> slots(static_cast<std::size_t>(cfg.reps) *
                             static_cast<std::size_t>(cfg.folds) *
                             static_cast<std::size_t>(n_methods));

  parallel_for(cfg.reps, cfg.threads, [&](int rep) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    int offset = 0;
    for (int fold = 0; fold < cfg.folds; ++fold) {
      const int k_train = sizes[static_cast<std::size_t>(fold)];
      std::vector<char> in_train(static_cast<std::size_t>(n), 0);
      std::vector<int> train(perm.begin() + offset,
                             perm.begin() + offset + k_train);
      for (const int row : train) in_train[static_cast<std::size_t>(row)] = 1;
      offset += k_train;
      // Validation cases in ascending original order: the outcome cannot
      // depend on how the shuffle happened to order them.
      std::vector<int> valid;
      valid.reserve(static_cast<std::size_t>(n) - static_cast<std::size_t>(k_train));
      for (int row = 0; row < static_cast<int>(n); ++row)
        if (!in_train[static_cast<std::size_t>(row)]) valid.push_back(row);

      Dataset tr;
      tr.columns = d.columns;
      tr.y.resize(k_train);
      tr.X.resize(k_train, m);
      for (int i = 0; i < k_train; ++i) {
        tr.y[i] = d.y[train[static_cast<std::size_t>(i)]];
        tr.X.row(i) = d.X.row(train[static_cast<std::size_t>(i)]);
      }
      const StandardizedDataset s = standardize_lenient(tr);
      Eigen::VectorXd actual(static_cast<Eigen::Index>(valid.size()));
      for (std::size_t i = 0; i < valid.size(); ++i)
        actual[static_cast<Eigen::Index>(i)] = d.y[valid[i]];

      StepwiseFit step_fit;
      if (wants_stepwise || wants_twostep) step_fit = forward_stepwise_ric(s, m);

      LarsPath path;
      CriterionTrace cp_trace, sp_trace;
      if (wants_lars) {
        const int eff_steps =
            std::min({cfg.max_steps, static_cast<int>(k_train) - 1, m});
        path = lars_path(s, eff_steps);
        const double rss0 = path.rss_sequence().front();
        const double sigma_largest = sigma_floor(
            path.rss_sequence().back() / static_cast<double>(k_train - 1), rss0);
        const double sigma_twostep = sigma_floor(step_fit.sigma2_hat, rss0);
        const double sigma_cp = cfg.cp_sigma2 == Sigma2Source::largest
                                    ? sigma_largest
                                    : sigma_twostep;
        const double sigma_sp = cfg.sp_sigma2 == Sigma2Source::largest
                                    ? sigma_largest
                                    : sigma_twostep;
        cp_trace = cp_estimated(path.rss_sequence(), k_train, sigma_cp);
        sp_trace = sp(path.rss_sequence(), sigma_sp);
      }

      for (int mi = 0; mi < n_methods; ++mi) {
        const Method method = cfg.methods[static_cast<std::size_t>(mi)];
        Outcome out;
        Eigen::VectorXd pred;
        switch (method) {
          case Method::stepwise_ric: {
            Eigen::VectorXd coef(step_fit.q);
            for (int k = 0; k < step_fit.q; ++k) coef[k] = step_fit.coefficients[k + 1];
            pred = predict(d, valid, s, step_fit.coefficients[0],
                           step_fit.selected, coef);
            out.q = step_fit.q;
            break;
          }
          case Method::lars_cp:
          case Method::lars_sp: {
            const int q = method == Method::lars_cp ? cp_trace.selected_q
                                                    : sp_trace.selected_q;
            const PathStep& step = path.steps[static_cast<std::size_t>(q)];
            pred = predict(d, valid, s, 0.0, step.active, step.coef);
            out.q = q;
            break;
          }
        }
        out.rmse = rmse(pred, actual);
        slots[(static_cast<std::size_t>(rep) * static_cast<std::size_t>(cfg.folds) +
               static_cast<std::size_t>(fold)) *
                  static_cast<std::size_t>(n_methods) +
              static_cast<std::size_t>(mi)] = out;
      }
    }
  });

  CvReport report;
  report.config = cfg;
  report.rows.reserve(slots.size());
  for (int rep = 0; rep < cfg.reps; ++rep)
    for (int fold = 0; fold < cfg.folds; ++fold)
      for (int mi = 0; mi < n_methods; ++mi) {
        const Outcome& out =
            slots[(static_cast<std::size_t>(rep) * static_cast<std::size_t>(cfg.folds) +
                   static_cast<std::size_t>(fold)) *
                      static_cast<std::size_t>(n_methods) +
                  static_cast<std::size_t>(mi)];
        report.rows.push_back({rep, fold, cfg.methods[static_cast<std::size_t>(mi)],
                               out.q, out.rmse});
      }

  auto median = [](std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size();
    return k % 2 == 1 ? values[k / 2]
                      : 0.5 * (values[k / 2 - 1] + values[k / 2]);
  };
  for (const Method method : cfg.methods) {
    std::vector<double> qs, errs;
    for (const CvRow& row : report.rows)
      if (row.method == method) {
        qs.push_back(static_cast<double>(row.q));
        errs.push_back(row.rmse);
      }
    report.median_q[to_string(method)] = median(qs);
    report.median_rmse[to_string(method)] = median(errs);
  }
  return report;
}

}  // namespace varsel
