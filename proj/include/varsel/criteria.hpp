#pragma once

#include <Eigen/Dense>
#include <vector>

#include "varsel/standardize.hpp"

namespace varsel {

enum class CriterionKind { cp_known, cp_estimated, sp };

const char* to_string(CriterionKind kind);

// Per-model-size criterion values over q = 0..Q and the selected size
// (smallest q attaining the minimum).
struct CriterionTrace {
  CriterionKind kind = CriterionKind::cp_known;
  std::vector<double> values;
  double sigma2 = 1.0;
  int selected_q = 0;
};

// Smallest index attaining the minimum value.
int select_min(const std::vector<double>& values);

// values[p] = rss_seq[p] - n + 2p (error variance known and scaled to 1).
CriterionTrace cp_known_sigma(const std::vector<double>& rss_seq,
                              Eigen::Index n);

// values[p] = rss_seq[p] / sigma2_hat - n + 2p.
CriterionTrace cp_estimated(const std::vector<double>& rss_seq, Eigen::Index n,
                            double sigma2_hat);

// Penalty increment delta(q) = 2 ln((q/2 + 2)/(q/2 + 1)), with the defined
// values delta(0) = 2 ln 2 and delta(1) = 2 ln(3/2). The ratio is evaluated
// as (q+4)/(q+2) so halving an odd q introduces no rounding ambiguity.
double delta(long long q);

// Expected gap between consecutive extreme squared-normal order statistics
// when k of the first q entrants carry signal, out of m candidates:
// 2 ln((m-k)/(q+1-k)) - 2 ln((m-k)/(q+2-k)). Independent of m after
// simplification; exposed for experimentation with k policies other than the
// k = q/2 that delta() bakes in.
double spacing_approx(long long m, long long k, long long q);

// values[q] = rss_seq[q] + sigma2_hat * sum_{j=1..q} j * delta(j).
CriterionTrace sp(const std::vector<double>& rss_seq, double sigma2_hat);

// Residual variance from a hard-threshold forward stepwise fit on the same
// data: selection happens first, then sigma^2 comes from that fit's residual
// df, avoiding the selection bias of estimating from a fixed large model.
double estimate_sigma2_twostep(const StandardizedDataset& d, int m_for_threshold);

}  // namespace varsel
