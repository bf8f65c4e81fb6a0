#pragma once

// Chronological backtest of a ranking source used as a match predictor: the
// better-placed player is predicted to win every completed match.

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "courtrank/dataset.hpp"
#include "courtrank/ranking.hpp"

namespace courtrank {

enum class PredictorKind { OfficialRank, UniformPageRank, ParametricPageRank };

std::string_view to_string(PredictorKind k);
std::optional<PredictorKind> parse_predictor_kind(std::string_view text);

struct Predictor {
  PredictorKind kind = PredictorKind::ParametricPageRank;
  WeightParams params;  // OfficialRank ignores it; UniformPageRank uses only age_years
  PageRankConfig config;

  static Predictor official();
  static Predictor uniform(int age_years = 1, PageRankConfig config = {});
  static Predictor parametric(const WeightParams& params, PageRankConfig config = {});

  // Weights actually applied to graph edges.
  WeightParams effective_params() const;
  std::string label() const;
};

enum class Outcome { Hit, Miss };

struct Prediction {
  MatchId match{};
  TournamentId tournament{};
  std::optional<PlayerId> predicted_winner;  // empty when undecided
  Outcome outcome = Outcome::Miss;
  std::optional<int> rank_winner;  // empty = +infinity (unranked)
  std::optional<int> rank_loser;

  bool hit() const { return outcome == Outcome::Hit; }
};

// Lower position wins; unranked counts as +infinity; equal positions and two
// unranked players are undecided and scored as a Miss.
Prediction predict_match(const MatchRecord& match, std::optional<int> rank_winner,
                         std::optional<int> rank_loser);
Prediction predict_match(const MatchRecord& match, const RatingTable& table);
Prediction predict_official(const MatchRecord& match);

struct TournamentResult {
  TournamentId tournament{};
  long hits = 0;
  long misses = 0;
  long skipped = 0;  // OfficialRank only: matches without either official rank
  std::vector<Prediction> predictions;
};

TournamentResult evaluate_tournament(const MatchStore& store, TournamentId tournament,
                                     const Predictor& predictor);

// Evaluates tournaments independently (threads = 0 uses the hardware count);
// results come back in input order regardless of scheduling.
std::vector<TournamentResult> backtest_tournaments(const MatchStore& store,
                                                   std::span<const TournamentId> tournaments,
                                                   const Predictor& predictor,
                                                   unsigned threads = 0);
std::vector<TournamentResult> backtest(const MatchStore& store, std::span<const int> years,
                                       const Predictor& predictor, unsigned threads = 0);

struct HitCell {
  long hits = 0;
  long misses = 0;

  long total() const { return hits + misses; }
  double rate() const { return total() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total()); }
  void add(const Prediction& p) { p.hit() ? ++hits : ++misses; }
  HitCell& operator+=(const HitCell& o) {
    hits += o.hits;
    misses += o.misses;
    return *this;
  }
  friend bool operator==(const HitCell&, const HitCell&) = default;
};

enum class SliceKind { Year, Surface, Category, RankBand };
std::string_view to_string(SliceKind k);
std::optional<SliceKind> parse_slice_kind(std::string_view text);

enum class RankBand { Top10, From11To50, From51 };
std::string_view to_string(RankBand b);
// Band shared by both positions, if any. Unranked players sit in the 51+ band.
std::optional<RankBand> shared_band(std::optional<int> a, std::optional<int> b);

// One row per slice value; columns are the evaluated years.
struct SliceRow {
  std::string label;
  std::map<int, HitCell> by_year;
  HitCell total;
};

struct SliceTable {
  SliceKind kind = SliceKind::Year;
  std::vector<SliceRow> rows;
};

struct EvalReport {
  std::string predictor;
  std::vector<int> years;
  std::map<int, HitCell> by_year;
  HitCell overall;            // pooled over every evaluated match
  double mean_of_years = 0;   // unweighted mean of the yearly rates
  long skipped = 0;
  std::vector<SliceTable> slices;

  const SliceTable* slice(SliceKind k) const;
};

EvalReport summarize(const MatchStore& store, std::span<const TournamentResult> results,
                     std::span<const int> years, const std::set<SliceKind>& slices,
                     const std::string& predictor_label);

EvalReport evaluate_years(const MatchStore& store, std::span<const int> years,
                          const Predictor& predictor, const std::set<SliceKind>& slices,
                          unsigned threads = 0);

// Report export. The TSV matrices have one row per slice value and the
// columns <slice> <year>... total, each cell "hits/total" rendered as a
// percentage with the raw counts in companion columns; see README.
void write_slice_tsv(std::ostream& out, const EvalReport& report, const SliceTable& table);
void write_years_tsv(std::ostream& out, const EvalReport& report);
std::string report_json(const EvalReport& report);
void write_report(const std::filesystem::path& dir, const std::string& stem, const EvalReport& report);

}  // namespace courtrank
