#include <algorithm>
#include <cmath>
#include <map>

#include "courtrank/prob_model.hpp"

namespace courtrank {

std::vector<DiffBin> bin_hit_rates(std::span<const Prediction> predictions) {
  std::map<int, DiffBin> bins;
  for (const auto& p : predictions) {
    if (!p.rank_winner || !p.rank_loser || *p.rank_winner == *p.rank_loser) continue;
    const int diff = std::abs(*p.rank_winner - *p.rank_loser);
    auto& b = bins[diff];
    b.diff = diff;
    ++b.total;
    if (*p.rank_winner < *p.rank_loser) ++b.hits;
  }
  std::vector<DiffBin> out;
  out.reserve(bins.size());
  for (const auto& [diff, b] : bins) out.push_back(b);
  return out;
}

double p_victory(double r1, double r2, double a) {
  if (r1 > r2) return 1.0 - p_victory(r2, r1, a);  // keeps P(r1,r2) + P(r2,r1) == 1 exact
  return 1.0 / (1.0 + std::exp((r1 - r2) / a));
}

double p_victory(std::optional<int> r1, std::optional<int> r2, const LogisticModel& model) {
  if (!r1 && !r2) return 0.5;
  if (!r1) return 0.0;
  if (!r2) return 1.0;
  return p_victory(static_cast<double>(*r1), static_cast<double>(*r2), model.a);
}

namespace {

double objective(std::span<const DiffBin> bins, double a) {
  double sum = 0;
  for (const auto& b : bins) {
    const double e = b.rate() - p_victory(0.0, static_cast<double>(b.diff), a);
    sum += static_cast<double>(b.total) * e * e;
  }
  return sum;
}

}  // namespace

LogisticModel fit_logistic(std::span<const DiffBin> bins, const FitOptions& options) {
  if (!(options.a_min > 0 && options.a_min < options.a_max))
    throw InputError("logistic fit bounds must satisfy 0 < a_min < a_max");
  std::vector<DiffBin> used;
  for (const auto& b : bins) {
    if (b.diff < 1 || b.hits < 0 || b.hits > b.total) throw InputError("malformed difference bin");
    if (b.total >= options.min_bin_total) used.push_back(b);
  }
  std::vector<int> diffs;
  for (const auto& b : used) diffs.push_back(b.diff);
  std::sort(diffs.begin(), diffs.end());
  const auto distinct = std::unique(diffs.begin(), diffs.end()) - diffs.begin();
  if (used.size() < 3 || distinct < 2)
    throw InputError("logistic fit needs at least 3 bins over 2 distinct differences (have " +
                     std::to_string(used.size()) + " usable bins)");

  constexpr int kScan = 400;
  const double log_lo = std::log(options.a_min);
  const double log_hi = std::log(options.a_max);
  const auto grid = [&](int i) {
    if (i <= 0) return options.a_min;
    if (i >= kScan) return options.a_max;
    return std::exp(log_lo + (log_hi - log_lo) * i / kScan);
  };
  int best = 0;
  double best_value = objective(used, grid(0));
  for (int i = 1; i <= kScan; ++i) {
    const double v = objective(used, grid(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  double lo = grid(best - 1);
  double hi = grid(best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(used, x1);
  double f2 = objective(used, x2);
  while (hi - lo > options.tolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(used, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(used, x2);
    }
  }

  LogisticModel m;
  m.a = 0.5 * (lo + hi);
  m.fit_residual = objective(used, m.a);
  if (best_value < m.fit_residual) {  // the scan point beat the refinement (flat or boundary)
    m.a = grid(best);
    m.fit_residual = best_value;
  }
  m.n_points = static_cast<int>(used.size());
  m.degenerate = m.a >= options.a_max * (1.0 - 1e-6);
  return m;
}

}  // namespace courtrank
