#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <Eigen/Dense>

namespace courtrank::testing {

std::vector<double> dense_pagerank(int n, std::span<const DenseEdge> edges, double damping) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (const auto& e : edges) {
    M(e.to, e.from) += e.weight;
    out(e.from) += e.weight;
  }
  for (int j = 0; j < n; ++j) {
    if (out(j) > 0) {
      M.col(j) /= out(j);
    } else {
      M.col(j).setConstant(1.0 / n);
    }
  }
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - damping * M;
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - damping) / n);
  const Eigen::VectorXd x = A.fullPivLu().solve(b);
  return std::vector<double>(x.data(), x.data() + n);
}

std::string reference_uniform_table(const MatchStore& store, TournamentId target, int age_years) {
  Date start = Date::max();
  for (const auto& m : store.matches()) {
    if (m.tournament == target) start = std::min(start, m.date);
  }
  const Date earliest = start - std::chrono::days{364L * age_years};

  std::map<std::int32_t, int> index;
  std::vector<std::pair<int, int>> edges;  // loser -> winner, by player id
  for (const auto& m : store.matches()) {
    if (!m.completed || m.date < earliest || !(m.date < start)) continue;
    edges.emplace_back(static_cast<int>(m.loser), static_cast<int>(m.winner));
    index.emplace(static_cast<std::int32_t>(m.loser), 0);
    index.emplace(static_cast<std::int32_t>(m.winner), 0);
  }
  std::vector<std::int32_t> ids;
  for (auto& [id, i] : index) {
    i = static_cast<int>(ids.size());
    ids.push_back(id);
  }
  const std::size_t n = ids.size();
  std::string table = "rank\tplayer\tscore\n";
  if (n == 0) return table;

  std::vector<std::vector<double>> count(n, std::vector<double>(n, 0.0));
  std::vector<double> losses(n, 0.0);
  for (const auto& [l, w] : edges) {
    count[index[l]][index[w]] += 1.0;
    losses[index[l]] += 1.0;
  }
  const double d = 0.85;
  std::vector<double> r(n, 1.0 / n), next(n);
  for (int it = 0; it < 1000; ++it) {
    double dangling = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (losses[i] == 0) dangling += r[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (losses[i] > 0) s += r[i] * count[i][j] / losses[i];
      }
      next[j] = (1 - d) / n + d * (s + dangling / n);
    }
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - r[i]);
    r.swap(next);
    if (change < 1e-8) break;
  }
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  for (double& x : r) x /= total;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  const auto name = [&](std::size_t i) { return store.player(PlayerId{ids[i]}).canonical_name; };
  for (std::size_t b = 0; b < n;) {
    std::size_t e = b + 1;
    while (e < n && r[order[e - 1]] - r[order[e]] <= 1e-7 * r[order[e - 1]]) ++e;
    std::sort(order.begin() + static_cast<long>(b), order.begin() + static_cast<long>(e),
              [&](std::size_t x, std::size_t y) { return name(x) < name(y); });
    b = e;
  }
  for (std::size_t pos = 0; pos < n; ++pos) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", r[order[pos]]);
    table += std::to_string(pos + 1) + "\t" + name(order[pos]) + "\t" + buf + "\n";
  }
  return table;
}

double brute_force_auroc(std::span<const ScoredMatch> scored) {
  double good = 0;
  double pairs = 0;
  for (const auto& p : scored) {
    if (!p.positive) continue;
    for (const auto& q : scored) {
      if (q.positive) continue;
      pairs += 1;
      if (p.score > q.score) good += 1;
      else if (p.score == q.score) good += 0.5;
    }
  }
  return good / pairs;
}

std::vector<DiffBin> logistic_bins(double a, int first_diff, int last_diff, long per_bin) {
  std::vector<DiffBin> bins;
  for (int diff = first_diff; diff <= last_diff; ++diff) {
    const double p = 1.0 / (1.0 + std::exp(-diff / a));
    bins.push_back(DiffBin{diff, std::lround(p * static_cast<double>(per_bin)), per_bin});
  }
  return bins;
}

}  // namespace courtrank::testing
