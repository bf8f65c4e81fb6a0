#pragma once

// Greedy coordinate ascent over the four weighting parameters.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtrank/dataset.hpp"
#include "courtrank/ranking.hpp"

namespace courtrank {

enum class Coordinate { Years, Decay, Surface, RoundBase };
inline constexpr Coordinate kSweepOrder[] = {Coordinate::Years, Coordinate::Decay,
                                             Coordinate::Surface, Coordinate::RoundBase};

std::string_view to_string(Coordinate c);
double coordinate_value(const WeightParams& p, Coordinate c);
WeightParams with_coordinate(WeightParams p, Coordinate c, double value);

struct SearchGrid {
  std::vector<int> years{1, 2, 3, 4, 5, 6};
  std::vector<double> decay{0.1, 0.2, 5, 10, 25};
  std::vector<double> surface = steps(0, 10);       // 0.0 .. 1.0
  std::vector<double> round_base = steps(10, 20);   // 1.0 .. 2.0

  // Tenths from lo/10 to hi/10 inclusive, each the nearest double to k/10.
  static std::vector<double> steps(int lo_tenths, int hi_tenths);

  std::vector<double> values(Coordinate c) const;
  void validate() const;  // non-empty, strictly ascending, within WeightParams bounds
};

using Evaluator = std::function<double(const WeightParams&)>;

// Memoizes an evaluator on the full parameter vector.
class CachedEvaluator {
 public:
  explicit CachedEvaluator(Evaluator inner) : inner_(std::move(inner)) {}
  double operator()(const WeightParams& p);
  std::size_t evaluations() const { return cache_.size(); }

 private:
  Evaluator inner_;
  std::map<WeightParams, double> cache_;
};

struct TraceEntry {
  int round = 0;
  Coordinate coordinate = Coordinate::Years;
  WeightParams params;
  double score = 0;
  double best_score = 0;  // incumbent score after this entry's sweep decision
  bool adopted = false;
};

struct SearchState {
  WeightParams best;
  double best_score = 0;
  double initial_score = 0;
  std::vector<TraceEntry> trace;
  int rounds = 0;
  bool converged = false;  // last round made no adoption
};

// Thrown (with the original exception nested) when the evaluator fails.
class SearchError : public Error {
 public:
  SearchError(const std::string& what, WeightParams params) : Error(what), params_(params) {}
  const WeightParams& params() const { return params_; }

 private:
  WeightParams params_;
};

// (5, 5, 0.5, 1.3): best individual values of a first one-at-a-time pass.
WeightParams default_search_init();

SearchState initial_state(const WeightParams& init, const Evaluator& evaluate);

// Scores every grid value of one coordinate against the incumbent and adopts
// the first argmax only when it is strictly better. Returns true on adoption.
bool sweep_parameter(SearchState& state, Coordinate which, const SearchGrid& grid,
                     const Evaluator& evaluate, int round = 1);

// Rounds of sweeps in kSweepOrder until a round adopts nothing or max_rounds
// is reached. Ties keep the incumbent, so a plateau ends the search instead
// of cycling.
SearchState coordinate_search(const SearchGrid& grid, const Evaluator& evaluate,
                              const WeightParams& init = default_search_init(),
                              int max_rounds = 50);

// `per_year` tournaments drawn without replacement from each year (all of
// them when fewer exist), in ascending id order within the year.
std::vector<TournamentId> sample_test_set(const MatchStore& store, std::span<const int> years,
                                          int per_year, std::uint64_t seed);

// Pooled hit rate of ParametricPageRank over the test set.
Evaluator backtest_evaluator(const MatchStore& store, std::vector<TournamentId> test_set,
                             PageRankConfig config = {}, unsigned threads = 0);

// Separable objective maximized at (4, 5, 0.3, 1.7); a CLI test hook.
double separable_objective(const WeightParams& p);

// "round<TAB>coordinate<TAB>value<TAB>score<TAB>best_score<TAB>adopted"
void write_trace(std::ostream& out, const SearchState& state);

}  // namespace courtrank
