#include <algorithm>
#include <cmath>

#include "courtrank/ranking.hpp"
#include "text.hpp"

namespace courtrank {

std::size_t MatchGraph::index_of(PlayerId id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id)
    throw InputError("player " + std::to_string(raw(id)) + " is not in the graph");
  return static_cast<std::size_t>(it - nodes.begin());
}

MatchGraph build_graph(const MatchStore& store, std::span<const MatchRecord* const> window,
                       const TargetContext& target, const WeightParams& p) {
  MatchGraph g;
  g.edges.reserve(window.size());
  for (const MatchRecord* m : window) {
    if (!m->completed) continue;
    g.edges.push_back(edge_weight(*m, store.tournament(m->tournament), target, p));
    g.nodes.push_back(m->winner);
    g.nodes.push_back(m->loser);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  return g;
}

void PageRankConfig::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw InputError("damping must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (max_iterations < 1) throw InputError("max_iterations must be >= 1");
}

std::vector<double> compute_pagerank(const MatchGraph& graph, const PageRankConfig& config) {
  config.validate();
  const std::size_t n = graph.nodes.size();
  if (n == 0) return {};

  struct Transition {
    std::size_t from;
    std::size_t to;
    double probability;
  };
  std::vector<double> out_weight(n, 0.0);
  std::vector<Transition> transitions;
  transitions.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    if (!(e.weight > 0.0)) throw InputError("edge weights must be positive");
    const std::size_t from = graph.index_of(e.from);
    out_weight[from] += e.weight;
    transitions.push_back({from, graph.index_of(e.to), e.weight});
  }
  for (auto& t : transitions) t.probability /= out_weight[t.from];

  std::vector<std::size_t> dangling;
  for (std::size_t v = 0; v < n; ++v) {
    if (out_weight[v] == 0.0) dangling.push_back(v);
  }

  const double d = config.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  double change = 0.0;
  for (int it = 1; it <= config.max_iterations; ++it) {
    double dangling_mass = 0.0;
    for (std::size_t v : dangling) dangling_mass += rank[v];
    std::fill(next.begin(), next.end(), (1.0 - d) * inv_n + d * dangling_mass * inv_n);
    for (const auto& t : transitions) next[t.to] += d * rank[t.from] * t.probability;

    change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < config.tolerance) {
      double total = 0.0;
      for (double r : rank) total += r;
      for (double& r : rank) r /= total;
      return rank;
    }
  }
  throw ConvergenceError("PageRank did not converge within " +
                             std::to_string(config.max_iterations) +
                             " iterations (L1 residual " + text::format_sig(change, 6) + ")",
                         change, config.max_iterations);
}

}  // namespace courtrank
