#pragma once

// Reference computations that share no code with the library.

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "courtrank/dataset.hpp"
#include "courtrank/prob_model.hpp"

namespace courtrank::testing {

struct DenseEdge {
  int from;
  int to;
  double weight;
};

// Stationary vector of the damped walk by a direct linear solve:
// (I - d M) x = (1 - d)/n, with dangling columns of M spread uniformly.
std::vector<double> dense_pagerank(int n, std::span<const DenseEdge> edges, double damping);

// Plain multigraph PageRank on the completed matches in the window
// [start - 364*age days, start), by dense power iteration; returns the
// "rank<TAB>player<TAB>score" table with ties (relative 1e-7) broken by name.
std::string reference_uniform_table(const MatchStore& store, TournamentId target, int age_years);

// Fraction of (positive, negative) pairs ordered correctly, ties counted half.
double brute_force_auroc(std::span<const ScoredMatch> scored);

// Bins whose hit counts follow P_a exactly up to integer rounding.
std::vector<DiffBin> logistic_bins(double a, int first_diff, int last_diff, long per_bin);

}  // namespace courtrank::testing
