#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "courtrank/evaluation.hpp"
#include "text.hpp"

namespace courtrank {

std::string_view to_string(PredictorKind k) {
  switch (k) {
    case PredictorKind::OfficialRank: return "official";
    case PredictorKind::UniformPageRank: return "uniform";
    case PredictorKind::ParametricPageRank: return "parametric";
  }
  return "?";
}

std::optional<PredictorKind> parse_predictor_kind(std::string_view text) {
  const auto t = text::lower(text::trim(text));
  if (t == "official" || t == "officialrank" || t == "atp") return PredictorKind::OfficialRank;
  if (t == "uniform" || t == "uniformpagerank") return PredictorKind::UniformPageRank;
  if (t == "parametric" || t == "parametricpagerank") return PredictorKind::ParametricPageRank;
  return std::nullopt;
}

Predictor Predictor::official() {
  Predictor p;
  p.kind = PredictorKind::OfficialRank;
  return p;
}

Predictor Predictor::uniform(int age_years, PageRankConfig config) {
  Predictor p;
  p.kind = PredictorKind::UniformPageRank;
  p.params = WeightParams::identity(age_years);
  p.config = config;
  return p;
}

Predictor Predictor::parametric(const WeightParams& params, PageRankConfig config) {
  Predictor p;
  p.kind = PredictorKind::ParametricPageRank;
  p.params = params;
  p.config = config;
  return p;
}

WeightParams Predictor::effective_params() const {
  if (kind == PredictorKind::UniformPageRank) return WeightParams::identity(params.age_years);
  return params;
}

std::string Predictor::label() const {
  switch (kind) {
    case PredictorKind::OfficialRank: return "official";
    case PredictorKind::UniformPageRank: return "uniform(age=" + std::to_string(params.age_years) + ")";
    case PredictorKind::ParametricPageRank: return "parametric(" + format_weight_params(params) + ")";
  }
  return "?";
}

Prediction predict_match(const MatchRecord& match, std::optional<int> rank_winner,
                         std::optional<int> rank_loser) {
  Prediction p;
  p.match = match.id;
  p.tournament = match.tournament;
  p.rank_winner = rank_winner;
  p.rank_loser = rank_loser;
  if (rank_winner && (!rank_loser || *rank_winner < *rank_loser)) {
    p.predicted_winner = match.winner;
    p.outcome = Outcome::Hit;
  } else if (rank_loser && (!rank_winner || *rank_loser < *rank_winner)) {
    p.predicted_winner = match.loser;
    p.outcome = Outcome::Miss;
  } else {
    p.outcome = Outcome::Miss;  // undecided
  }
  return p;
}

Prediction predict_match(const MatchRecord& match, const RatingTable& table) {
  return predict_match(match, table.position_of(match.winner), table.position_of(match.loser));
}

Prediction predict_official(const MatchRecord& match) {
  return predict_match(match, match.official_rank_winner, match.official_rank_loser);
}

TournamentResult evaluate_tournament(const MatchStore& store, TournamentId tournament,
                                     const Predictor& predictor) {
  TournamentResult result;
  result.tournament = tournament;
  const auto matches = store.matches_of(tournament);
  const bool any_completed =
      std::any_of(matches.begin(), matches.end(), [](const MatchRecord* m) { return m->completed; });
  if (!any_completed) return result;

  RatingTable table;
  if (predictor.kind != PredictorKind::OfficialRank)
    table = rate_tournament(store, tournament, predictor.effective_params(), predictor.config);

  for (const MatchRecord* m : matches) {
    if (!m->completed) continue;
    Prediction p;
    if (predictor.kind == PredictorKind::OfficialRank) {
      if (!m->official_rank_winner && !m->official_rank_loser) {
        ++result.skipped;
        continue;
      }
      p = predict_official(*m);
    } else {
      p = predict_match(*m, table);
    }
    p.hit() ? ++result.hits : ++result.misses;
    result.predictions.push_back(std::move(p));
  }
  return result;
}

std::vector<TournamentResult> backtest_tournaments(const MatchStore& store,
                                                   std::span<const TournamentId> tournaments,
                                                   const Predictor& predictor, unsigned threads) {
  std::vector<TournamentResult> results(tournaments.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tournaments.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tournaments.size(); ++i)
      results[i] = evaluate_tournament(store, tournaments[i], predictor);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tournaments.size() && !failed; i = next++) {
          try {
            results[i] = evaluate_tournament(store, tournaments[i], predictor);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<TournamentResult> backtest(const MatchStore& store, std::span<const int> years,
                                       const Predictor& predictor, unsigned threads) {
  std::vector<TournamentId> ids;
  for (int y : years) {
    const auto in_year = store.tournaments_in_year(y);
    ids.insert(ids.end(), in_year.begin(), in_year.end());
  }
  return backtest_tournaments(store, ids, predictor, threads);
}

std::string_view to_string(SliceKind k) {
  switch (k) {
    case SliceKind::Year: return "year";
    case SliceKind::Surface: return "surface";
    case SliceKind::Category: return "category";
    case SliceKind::RankBand: return "rank_band";
  }
  return "?";
}

std::optional<SliceKind> parse_slice_kind(std::string_view text) {
  const auto t = text::lower(text::trim(text));
  if (t == "year") return SliceKind::Year;
  if (t == "surface") return SliceKind::Surface;
  if (t == "category") return SliceKind::Category;
  if (t == "rank_band" || t == "rank-band" || t == "band") return SliceKind::RankBand;
  return std::nullopt;
}

std::string_view to_string(RankBand b) {
  switch (b) {
    case RankBand::Top10: return "1-10";
    case RankBand::From11To50: return "11-50";
    case RankBand::From51: return "51+";
  }
  return "?";
}

namespace {

RankBand band_of(std::optional<int> position) {
  if (!position || *position > 50) return RankBand::From51;
  return *position <= 10 ? RankBand::Top10 : RankBand::From11To50;
}

}  // namespace

std::optional<RankBand> shared_band(std::optional<int> a, std::optional<int> b) {
  const RankBand ba = band_of(a);
  if (ba != band_of(b)) return std::nullopt;
  return ba;
}

const SliceTable* EvalReport::slice(SliceKind k) const {
  for (const auto& s : slices) {
    if (s.kind == k) return &s;
  }
  return nullptr;
}

EvalReport summarize(const MatchStore& store, std::span<const TournamentResult> results,
                     std::span<const int> years, const std::set<SliceKind>& slices,
                     const std::string& predictor_label) {
  EvalReport report;
  report.predictor = predictor_label;
  report.years.assign(years.begin(), years.end());
  std::sort(report.years.begin(), report.years.end());
  report.years.erase(std::unique(report.years.begin(), report.years.end()), report.years.end());
  for (int y : report.years) report.by_year[y];

  const auto make_table = [&](SliceKind kind, std::vector<std::string> labels) {
    SliceTable t;
    t.kind = kind;
    for (auto& l : labels) {
      SliceRow row;
      row.label = std::move(l);
      for (int y : report.years) row.by_year[y];
      t.rows.push_back(std::move(row));
    }
    return t;
  };
  for (SliceKind kind : slices) {
    std::vector<std::string> labels;
    switch (kind) {
      case SliceKind::Year:
        for (int y : report.years) labels.push_back(std::to_string(y));
        break;
      case SliceKind::Surface:
        for (Surface s : kAllSurfaces) labels.emplace_back(to_string(s));
        break;
      case SliceKind::Category:
        for (Category c : kAllCategories) labels.emplace_back(to_string(c));
        break;
      case SliceKind::RankBand:
        for (RankBand b : {RankBand::Top10, RankBand::From11To50, RankBand::From51})
          labels.emplace_back(to_string(b));
        break;
    }
    report.slices.push_back(make_table(kind, std::move(labels)));
  }

  const auto year_index = [&](int y) {
    return static_cast<std::size_t>(std::lower_bound(report.years.begin(), report.years.end(), y) -
                                    report.years.begin());
  };

  for (const auto& r : results) {
    const Tournament& t = store.tournament(r.tournament);
    if (!report.by_year.contains(t.year)) continue;
    report.skipped += r.skipped;
    for (const auto& p : r.predictions) {
      report.by_year[t.year].add(p);
      report.overall.add(p);
      for (auto& table : report.slices) {
        std::optional<std::size_t> row;
        switch (table.kind) {
          case SliceKind::Year: row = year_index(t.year); break;
          case SliceKind::Surface: row = static_cast<std::size_t>(t.surface); break;
          case SliceKind::Category: row = static_cast<std::size_t>(t.category); break;
          case SliceKind::RankBand:
            if (auto b = shared_band(p.rank_winner, p.rank_loser)) row = static_cast<std::size_t>(*b);
            break;
        }
        if (!row) continue;
        auto& cells = table.rows[*row];
        cells.by_year[t.year].add(p);
        cells.total.add(p);
      }
    }
  }

  double sum = 0;
  int counted = 0;
  for (const auto& [year, cell] : report.by_year) {
    if (cell.total() == 0) continue;
    sum += cell.rate();
    ++counted;
  }
  report.mean_of_years = counted == 0 ? 0.0 : sum / counted;
  return report;
}

EvalReport evaluate_years(const MatchStore& store, std::span<const int> years,
                          const Predictor& predictor, const std::set<SliceKind>& slices,
                          unsigned threads) {
  const auto results = backtest(store, years, predictor, threads);
  return summarize(store, results, years, slices, predictor.label());
}

}  // namespace courtrank
