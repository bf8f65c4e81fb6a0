#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "courtrank/prob_model.hpp"
#include "oracles.hpp"

using namespace courtrank;
using Catch::Matchers::WithinAbs;

TEST_CASE("perfect separation and pure ties", "[prob]") {
  const std::vector<ScoredMatch> perfect{{true, 0.9}, {true, 0.8}, {false, 0.3}, {false, 0.1}};
  const auto r = roc_curve(perfect);
  CHECK(r.auroc == 1.0);
  CHECK(r.pairwise == 1.0);
  CHECK(r.positives == 2);
  CHECK(r.negatives == 2);

  const std::vector<ScoredMatch> ties{{true, 0.5}, {false, 0.5}, {true, 0.5}};
  CHECK(roc_curve(ties).auroc == 0.5);

  const std::vector<ScoredMatch> inverted{{false, 0.9}, {true, 0.1}};
  CHECK(roc_curve(inverted).auroc == 0.0);
}

TEST_CASE("six-point example", "[prob]") {
  const std::vector<ScoredMatch> s{{true, 0.9}, {false, 0.8}, {true, 0.7}, {true, 0.6}, {false, 0.55}, {false, 0.4}};
  // Positive-negative pairs ordered correctly: 3 + 2 + 2 = 7 of 9.
  CHECK_THAT(roc_curve(s).auroc, WithinAbs(7.0 / 9.0, 1e-15));
  CHECK_THAT(testing::brute_force_auroc(s), WithinAbs(7.0 / 9.0, 1e-15));
}

TEST_CASE("area agrees with brute-force pair counting", "[prob]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    std::vector<ScoredMatch> s;
    for (int i = 0; i < n; ++i) s.push_back({i == 0 || (i != 1 && rng() % 2 == 0), static_cast<double>(rng() % 7) / 6.0});
    const auto r = roc_curve(s);
    INFO("trial " << trial);
    CHECK_THAT(r.auroc, WithinAbs(testing::brute_force_auroc(s), 1e-12));
    CHECK_THAT(r.pairwise, WithinAbs(r.auroc, 1e-12));
  }
}

TEST_CASE("curve shape", "[prob]") {
  std::mt19937_64 rng(5);
  std::vector<ScoredMatch> s;
  for (int i = 0; i < 300; ++i) s.push_back({rng() % 3 != 0, static_cast<double>(rng() % 1000) / 1000.0});
  const auto r = roc_curve(s);
  REQUIRE(r.curve.size() >= 2);
  CHECK(r.curve.front().fpr == 0.0);
  CHECK(r.curve.front().tpr == 0.0);
  CHECK(r.curve.back().fpr == 1.0);
  CHECK(r.curve.back().tpr == 1.0);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    CHECK(r.curve[i].fpr >= r.curve[i - 1].fpr);
    CHECK(r.curve[i].tpr >= r.curve[i - 1].tpr);
    CHECK(r.curve[i].threshold < r.curve[i - 1].threshold);
  }
  std::ostringstream out;
  write_roc_tsv(out, r);
  const std::string text = out.str();
  CHECK(text.rfind("threshold\tfpr\ttpr\n", 0) == 0);
  CHECK(text.find("\nauroc\t") != std::string::npos);
}

TEST_CASE("single-class input is rejected", "[prob]") {
  const std::vector<ScoredMatch> only{{true, 0.4}, {true, 0.6}};
  CHECK_THROWS_AS(roc_curve(only), InputError);
  CHECK_THROWS_AS(roc_curve({}), InputError);
}
