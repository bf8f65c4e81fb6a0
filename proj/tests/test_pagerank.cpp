#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "courtrank/ranking.hpp"
#include "oracles.hpp"

using namespace courtrank;
using Catch::Matchers::WithinAbs;

namespace {

MatchGraph graph_of(int n, const std::vector<testing::DenseEdge>& edges) {
  MatchGraph g;
  for (int i = 0; i < n; ++i) g.nodes.push_back(PlayerId{i + 1});
  int id = 1;
  for (const auto& e : edges) g.edges.push_back({PlayerId{e.from + 1}, PlayerId{e.to + 1}, e.weight, MatchId{id++}});
  return g;
}

}  // namespace

TEST_CASE("two players, one result", "[ranking]") {
  const auto g = graph_of(2, {{0, 1, 1.0}});
  const auto s = compute_pagerank(g, {});
  // Closed form: winner 37/57, loser 20/57.
  CHECK_THAT(s[1], WithinAbs(37.0 / 57.0, 1e-8));
  CHECK_THAT(s[0], WithinAbs(20.0 / 57.0, 1e-8));
}

TEST_CASE("parallel edges add their weights", "[ranking]") {
  const auto twice = compute_pagerank(graph_of(3, {{0, 1, 1.0}, {0, 1, 1.0}, {0, 2, 1.0}}), {});
  const auto once = compute_pagerank(graph_of(3, {{0, 1, 2.0}, {0, 2, 1.0}}), {});
  for (int i = 0; i < 3; ++i) CHECK_THAT(twice[i], WithinAbs(once[i], 1e-12));
  CHECK(twice[1] > twice[2]);
}

TEST_CASE("power iteration agrees with a direct solve", "[ranking]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    std::vector<testing::DenseEdge> edges;
    const int m = static_cast<int>(rng() % (3 * n));
    for (int k = 0; k < m; ++k) {
      const int a = static_cast<int>(rng() % n);
      int c = static_cast<int>(rng() % n);
      if (c == a) c = (c + 1) % n;
      edges.push_back({a, c, 0.01 + static_cast<double>(rng() % 1000) / 100.0});
    }
    const auto s = compute_pagerank(graph_of(n, edges), {});
    const auto ref = testing::dense_pagerank(n, edges, 0.85);
    INFO("trial " << trial << " n=" << n);
    CHECK_THAT(std::accumulate(s.begin(), s.end(), 0.0), WithinAbs(1.0, 1e-12));
    for (int i = 0; i < n; ++i) CHECK_THAT(s[i], WithinAbs(ref[i], 1e-7));
  }
}

TEST_CASE("graph without edges is uniform", "[ranking]") {
  const auto s = compute_pagerank(graph_of(4, {}), {});
  for (double x : s) CHECK_THAT(x, WithinAbs(0.25, 1e-15));
  CHECK(compute_pagerank(MatchGraph{}, {}).empty());
}

TEST_CASE("iteration cap raises ConvergenceError", "[ranking]") {
  PageRankConfig cfg;
  cfg.max_iterations = 2;
  cfg.tolerance = 1e-15;
  try {
    compute_pagerank(graph_of(3, {{0, 1, 1.0}, {0, 2, 3.0}, {1, 2, 1.0}}), cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 2);
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("pagerank configuration is validated", "[ranking]") {
  PageRankConfig cfg;
  cfg.damping = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = {};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}
