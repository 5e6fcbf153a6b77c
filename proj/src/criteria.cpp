#include "varsel/criteria.hpp"

#include <cmath>
#include <string>

#include "varsel/errors.hpp"
#include "varsel/stepwise.hpp"

namespace varsel {

const char* to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::cp_known: return "cp_known";
    case CriterionKind::cp_estimated: return "cp_estimated";
    case CriterionKind::sp: return "sp";
  }
  return "?";
}

int select_min(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("select_min: empty value sequence");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

CriterionTrace cp_known_sigma(const std::vector<double>& rss_seq,
                              Eigen::Index n) {
  if (rss_seq.empty()) throw ConfigError("cp_known_sigma: empty RSS sequence");
  CriterionTrace trace;
  trace.kind = CriterionKind::cp_known;
  trace.sigma2 = 1.0;
  trace.values.resize(rss_seq.size());
  for (std::size_t p = 0; p < rss_seq.size(); ++p)
    trace.values[p] =
        rss_seq[p] - static_cast<double>(n) + 2.0 * static_cast<double>(p);
  trace.selected_q = select_min(trace.values);
  return trace;
}

CriterionTrace cp_estimated(const std::vector<double>& rss_seq, Eigen::Index n,
                            double sigma2_hat) {
  if (rss_seq.empty()) throw ConfigError("cp_estimated: empty RSS sequence");
  if (!(sigma2_hat > 0.0))
    throw ConfigError("cp_estimated: sigma2_hat must be > 0, got " +
                      std::to_string(sigma2_hat));
  CriterionTrace trace;
  trace.kind = CriterionKind::cp_estimated;
  trace.sigma2 = sigma2_hat;
  trace.values.resize(rss_seq.size());
  for (std::size_t p = 0; p < rss_seq.size(); ++p)
    trace.values[p] = rss_seq[p] / sigma2_hat - static_cast<double>(n) +
                      2.0 * static_cast<double>(p);
  trace.selected_q = select_min(trace.values);
  return trace;
}

double delta(long long q) {
  if (q < 0) throw ConfigError("delta: q must be >= 0");
  if (q == 0) return 2.0 * std::log(2.0);
  if (q == 1) return 2.0 * std::log(1.5);
  return 2.0 * std::log((static_cast<double>(q) + 4.0) /
                        (static_cast<double>(q) + 2.0));
}

double spacing_approx(long long m, long long k, long long q) {
  if (k < 0 || q < 0) throw ConfigError("spacing_approx: k, q must be >= 0");
  if (k > q)
    throw ConfigError("spacing_approx: need k <= q, got k = " +
                      std::to_string(k) + ", q = " + std::to_string(q));
  if (m <= k)
    throw ConfigError("spacing_approx: need m > k, got m = " +
                      std::to_string(m) + ", k = " + std::to_string(k));
  const double mk = static_cast<double>(m - k);
  const double a = static_cast<double>(q + 1 - k);
  const double b = static_cast<double>(q + 2 - k);
  return 2.0 * std::log(mk / a) - 2.0 * std::log(mk / b);
}

CriterionTrace sp(const std::vector<double>& rss_seq, double sigma2_hat) {
  if (rss_seq.empty()) throw ConfigError("sp: empty RSS sequence");
  if (!(sigma2_hat > 0.0))
    throw ConfigError("sp: sigma2_hat must be > 0, got " +
                      std::to_string(sigma2_hat));
  CriterionTrace trace;
  trace.kind = CriterionKind::sp;
  trace.sigma2 = sigma2_hat;
  trace.values.resize(rss_seq.size());
  double penalty = 0.0;
  for (std::size_t q = 0; q < rss_seq.size(); ++q) {
    if (q > 0)
      penalty += static_cast<double>(q) * delta(static_cast<long long>(q));
    trace.values[q] = rss_seq[q] + sigma2_hat * penalty;
  }
  trace.selected_q = select_min(trace.values);
  return trace;
}

double estimate_sigma2_twostep(const StandardizedDataset& d,
                               int m_for_threshold) {
  return forward_stepwise_ric(d, m_for_threshold).sigma2_hat;
}

}  // namespace varsel
