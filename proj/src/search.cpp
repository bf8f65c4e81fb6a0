#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <random>

#include "courtrank/evaluation.hpp"
#include "courtrank/search.hpp"
#include "text.hpp"

namespace courtrank {

std::string_view to_string(Coordinate c) {
  switch (c) {
    case Coordinate::Years: return "years";
    case Coordinate::Decay: return "decay";
    case Coordinate::Surface: return "surface";
    case Coordinate::RoundBase: return "round";
  }
  return "?";
}

double coordinate_value(const WeightParams& p, Coordinate c) {
  switch (c) {
    case Coordinate::Years: return p.age_years;
    case Coordinate::Decay: return p.decay_lambda;
    case Coordinate::Surface: return p.surface_factor;
    case Coordinate::RoundBase: return p.round_base;
  }
  return 0;
}

WeightParams with_coordinate(WeightParams p, Coordinate c, double value) {
  switch (c) {
    case Coordinate::Years: p.age_years = static_cast<int>(std::lround(value)); break;
    case Coordinate::Decay: p.decay_lambda = value; break;
    case Coordinate::Surface: p.surface_factor = value; break;
    case Coordinate::RoundBase: p.round_base = value; break;
  }
  return p;
}

std::vector<double> SearchGrid::steps(int lo_tenths, int hi_tenths) {
  std::vector<double> out;
  for (int k = lo_tenths; k <= hi_tenths; ++k) out.push_back(k / 10.0);
  return out;
}

std::vector<double> SearchGrid::values(Coordinate c) const {
  switch (c) {
    case Coordinate::Years: return {years.begin(), years.end()};
    case Coordinate::Decay: return decay;
    case Coordinate::Surface: return surface;
    case Coordinate::RoundBase: return round_base;
  }
  return {};
}

void SearchGrid::validate() const {
  for (Coordinate c : kSweepOrder) {
    const auto v = values(c);
    const std::string name(to_string(c));
    if (v.empty()) throw InputError("search grid '" + name + "' is empty");
    if (std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) != v.end())
      throw InputError("search grid '" + name + "' must be strictly ascending");
    for (double x : v) with_coordinate(WeightParams{}, c, x).validate();
  }
}

double CachedEvaluator::operator()(const WeightParams& p) {
  if (const auto it = cache_.find(p); it != cache_.end()) return it->second;
  const double score = inner_(p);
  cache_.emplace(p, score);
  return score;
}

WeightParams default_search_init() {
  WeightParams p;
  p.age_years = 5;
  p.decay_lambda = 5;
  p.surface_factor = 0.5;
  p.round_base = 1.3;
  return p;
}

namespace {

double checked_eval(const Evaluator& evaluate, const WeightParams& p) {
  try {
    return evaluate(p);
  } catch (...) {
    std::throw_with_nested(SearchError("evaluation failed at " + format_weight_params(p), p));
  }
}

}  // namespace

SearchState initial_state(const WeightParams& init, const Evaluator& evaluate) {
  init.validate();
  SearchState s;
  s.best = init;
  s.best_score = s.initial_score = checked_eval(evaluate, init);
  return s;
}

bool sweep_parameter(SearchState& state, Coordinate which, const SearchGrid& grid,
                     const Evaluator& evaluate, int round) {
  const std::size_t first = state.trace.size();
  std::optional<std::size_t> argmax;
  for (double v : grid.values(which)) {
    TraceEntry e;
    e.round = round;
    e.coordinate = which;
    e.params = with_coordinate(state.best, which, v);
    e.score = checked_eval(evaluate, e.params);
    if (!argmax || e.score > state.trace[*argmax].score) argmax = state.trace.size();
    state.trace.push_back(e);
  }
  bool adopted = false;
  if (argmax && state.trace[*argmax].score > state.best_score) {
    state.best = state.trace[*argmax].params;
    state.best_score = state.trace[*argmax].score;
    state.trace[*argmax].adopted = true;
    adopted = true;
  }
  for (std::size_t i = first; i < state.trace.size(); ++i) state.trace[i].best_score = state.best_score;
  return adopted;
}

SearchState coordinate_search(const SearchGrid& grid, const Evaluator& evaluate,
                              const WeightParams& init, int max_rounds) {
  grid.validate();
  if (max_rounds < 1) throw InputError("max_rounds must be >= 1");
  CachedEvaluator cached(evaluate);
  const Evaluator memo = [&](const WeightParams& p) { return cached(p); };
  SearchState state = initial_state(init, memo);
  for (int round = 1; round <= max_rounds; ++round) {
    bool any = false;
    for (Coordinate c : kSweepOrder) any = sweep_parameter(state, c, grid, memo, round) || any;
    state.rounds = round;
    if (!any) {
      state.converged = true;
      break;
    }
  }
  return state;
}

std::vector<TournamentId> sample_test_set(const MatchStore& store, std::span<const int> years,
                                          int per_year, std::uint64_t seed) {
  if (per_year < 1) throw InputError("tournaments per year must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> sorted_years(years.begin(), years.end());
  std::sort(sorted_years.begin(), sorted_years.end());
  sorted_years.erase(std::unique(sorted_years.begin(), sorted_years.end()), sorted_years.end());
  std::vector<TournamentId> out;
  for (int y : sorted_years) {
    auto pool = store.tournaments_in_year(y);
    std::sort(pool.begin(), pool.end());
    // Explicit Fisher-Yates: std::shuffle's draw sequence is library-specific.
    for (std::size_t i = pool.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(pool[i - 1], pool[j]);
    }
    const std::size_t take = std::min(pool.size(), static_cast<std::size_t>(per_year));
    std::vector<TournamentId> chosen(pool.end() - static_cast<std::ptrdiff_t>(take), pool.end());
    std::sort(chosen.begin(), chosen.end());
    out.insert(out.end(), chosen.begin(), chosen.end());
  }
  return out;
}

Evaluator backtest_evaluator(const MatchStore& store, std::vector<TournamentId> test_set,
                             PageRankConfig config, unsigned threads) {
  return [&store, test_set = std::move(test_set), config, threads](const WeightParams& p) {
    const auto results = backtest_tournaments(store, test_set, Predictor::parametric(p, config), threads);
    HitCell pooled;
    for (const auto& r : results) pooled += HitCell{r.hits, r.misses};
    return pooled.rate();
  };
}

double separable_objective(const WeightParams& p) {
  const double a = p.age_years - 4.0;
  const double d = std::log(std::max(p.decay_lambda, 1e-12) / 5.0);
  const double s = p.surface_factor - 0.3;
  const double r = p.round_base - 1.7;
  return 0.0 - (a * a + d * d + s * s + r * r);
}

void write_trace(std::ostream& out, const SearchState& state) {
  out << "round\tcoordinate\tvalue\tscore\tbest_score\tadopted\n";
  for (const auto& e : state.trace) {
    out << e.round << '\t' << to_string(e.coordinate) << '\t'
        << text::format_double(coordinate_value(e.params, e.coordinate)) << '\t'
        << text::format_sig(e.score, 10) << '\t' << text::format_sig(e.best_score, 10) << '\t'
        << (e.adopted ? 1 : 0) << '\n';
  }
}

}  // namespace courtrank
