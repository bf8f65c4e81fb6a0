#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "courtrank/plot.hpp"
#include "text.hpp"

namespace courtrank::cli {

namespace fs = std::filesystem;

namespace {

constexpr PredictorKind kAllKinds[] = {PredictorKind::OfficialRank, PredictorKind::UniformPageRank,
                                       PredictorKind::ParametricPageRank};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
  if (!f) throw InputError("failed writing " + path.string());
}

std::string pct(double rate) { return text::format_fixed(100.0 * rate, 3) + "%"; }

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    out += std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '_';
  }
  return out;
}

MatchStore load_store(const RunConfig& cfg) {
  if (!cfg.store) throw UsageError("no store given (--store or [paths] store)");
  if (!fs::is_directory(*cfg.store)) throw InputError("store directory not found: " + cfg.store->string());
  return MatchStore::load(*cfg.store);
}

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg), store_(load_store(cfg)) {
    const auto available = store_.years();
    if (cfg.years.empty()) {
      years_.assign(available.begin(), available.end());
    } else {
      for (int y : cfg.years) {
        if (!available.contains(y)) throw InputError("year " + std::to_string(y) + " is not covered by the store");
      }
      years_ = cfg.years;
    }
    if (years_.empty()) throw InputError("store holds no tournaments");
  }

  const MatchStore& store() const { return store_; }
  const std::vector<int>& years() const { return years_; }

  const std::vector<TournamentResult>& results(PredictorKind k) {
    auto it = results_.find(k);
    if (it == results_.end())
      it = results_.emplace(k, backtest(store_, years_, cfg_.predictor(k), cfg_.threads)).first;
    return it->second;
  }

  EvalReport report(PredictorKind k) {
    return summarize(store_, results(k), years_, cfg_.slices, cfg_.predictor(k).label());
  }

  std::vector<Prediction> predictions(PredictorKind k) {
    std::vector<Prediction> out;
    for (const auto& r : results(k)) out.insert(out.end(), r.predictions.begin(), r.predictions.end());
    return out;
  }

 private:
  const RunConfig& cfg_;
  MatchStore store_;
  std::vector<int> years_;
  std::map<PredictorKind, std::vector<TournamentResult>> results_;
};

std::string year_span(const std::vector<int>& years) {
  return std::to_string(years.front()) + "-" + std::to_string(years.back());
}

std::string evaluation_summary(const EvalReport& r) {
  std::ostringstream s;
  s << "predictor " << r.predictor << '\n';
  for (const auto& [year, cell] : r.by_year)
    s << "  " << year << "  " << std::setw(9) << pct(cell.rate()) << "  (" << cell.hits << "/" << cell.total() << ")\n";
  s << "  overall (pooled)  " << pct(r.overall.rate()) << "  (" << r.overall.hits << "/" << r.overall.total() << ")\n";
  s << "  mean of years     " << pct(r.mean_of_years) << '\n';
  if (r.skipped > 0) s << "  skipped (no official rank)  " << r.skipped << '\n';
  return s.str();
}

struct ProbFit {
  std::vector<DiffBin> bins;
  ProbTree tree;
};

ProbFit fit_prob(Session& session, const RunConfig& cfg, PredictorKind k) {
  const auto preds = session.predictions(k);
  ProbFit f;
  f.bins = bin_hit_rates(preds);
  f.tree = build_tree(session.store(), preds, cfg.leaf_threshold, cfg.fit);
  return f;
}

struct AurocRow {
  PredictorKind kind;
  std::string model;  // global | tree
  bool mirrored;
  RocResult roc;
};

std::vector<AurocRow> auroc_rows(Session& session, const RunConfig& cfg, PredictorKind k, const ProbFit& fit) {
  const auto preds = session.predictions(k);
  std::vector<AurocRow> rows;
  for (bool mirrored : {false, true}) {
    if (mirrored && !cfg.mirrored) continue;
    rows.push_back({k, "global", mirrored,
                    roc_curve(score_predictions(session.store(), preds, fit.tree.global, nullptr, mirrored))});
    rows.push_back({k, "tree", mirrored,
                    roc_curve(score_predictions(session.store(), preds, fit.tree.global, &fit.tree, mirrored))});
  }
  return rows;
}

std::string roc_stem(const AurocRow& r) {
  return "roc_" + std::string(to_string(r.kind)) + "_" + r.model + (r.mirrored ? "_mirrored" : "");
}

bool parse_label(std::string_view s, bool& out) {
  const auto t = text::lower(text::trim(s));
  if (t == "1" || t == "hit" || t == "true" || t == "positive") {
    out = true;
    return true;
  }
  if (t == "0" || t == "miss" || t == "false" || t == "negative") {
    out = false;
    return true;
  }
  return false;
}

std::vector<ScoredMatch> read_scores(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scores file " + path.string());
  std::vector<ScoredMatch> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto cells = text::split(line, '\t');
    ScoredMatch s;
    const auto score = cells.size() == 2 ? text::parse_double(cells[1]) : std::nullopt;
    if (cells.size() != 2 || !parse_label(cells[0], s.positive) || !score) {
      if (n == 1) continue;  // header
      throw InputError(path.string() + ":" + std::to_string(n) + ": expected '<hit|miss><TAB><score>'");
    }
    s.score = *score;
    out.push_back(s);
  }
  return out;
}

}  // namespace

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.column_map) throw UsageError("ingest needs a column map (--columns or [paths] columns)");
  if (!cfg.raw_dir) throw UsageError("ingest needs a raw data directory (--raw or [paths] raw)");
  if (!cfg.store) throw UsageError("ingest needs an output store directory (--store or [paths] store)");
  if (!fs::is_regular_file(*cfg.column_map)) throw InputError("column map not found: " + cfg.column_map->string());
  if (!fs::is_directory(*cfg.raw_dir)) throw InputError("raw data directory not found: " + cfg.raw_dir->string());

  const auto config = IngestConfig::load(*cfg.column_map);
  const auto rows = parse_raw_files(*cfg.raw_dir, config);
  const auto store = build_store(rows, config);
  store.save(*cfg.store);

  const auto matches = store.matches();
  const auto completed = std::count_if(matches.begin(), matches.end(), [](const auto& m) { return m.completed; });
  const auto years = store.years();
  out << "rows " << rows.size() << '\n'
      << "players " << store.players().size() << '\n'
      << "tournaments " << store.tournaments().size() << '\n'
      << "matches " << matches.size() << '\n'
      << "completed " << completed << '\n';
  if (!years.empty()) out << "years " << *years.begin() << "-" << *years.rbegin() << '\n';
  out << "store " << cfg.store->string() << '\n';
  return 0;
}

int cmd_rank(const RunConfig& cfg, const std::string& tournament, int year, PredictorKind kind,
             std::ostream& out) {
  if (kind == PredictorKind::OfficialRank) throw UsageError("rank builds PageRank tables only (uniform or parametric)");
  const auto store = load_store(cfg);
  const auto id = store.find_tournament(tournament, year);
  if (!id) throw InputError("unknown tournament '" + tournament + "' in " + std::to_string(year));
  const Predictor p = cfg.predictor(kind);
  const auto table = rate_tournament(store, *id, p.effective_params(), p.config);

  std::ostringstream tsv;
  write_rating_table(tsv, table, store);
  const auto path = cfg.out_dir / ("rank_" + slug(store.tournament(*id).name) + "_" + std::to_string(year) + ".tsv");
  write_file(path, tsv.str());

  out << store.tournament(*id).name << ' ' << year << "  " << p.label() << "  players " << table.size() << '\n';
  for (const auto& e : table.entries().first(std::min<std::size_t>(10, table.size())))
    out << std::setw(4) << e.position << "  " << store.player(e.player).canonical_name << "  "
        << text::format_sig(e.score, 6) << '\n';
  out << "written " << path.string() << '\n';
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::vector<PredictorKind>& kinds, std::ostream& out) {
  Session session(cfg);
  for (PredictorKind k : kinds) {
    const auto report = session.report(k);
    const std::string stem = "eval_" + std::string(to_string(k));
    write_report(cfg.out_dir, stem, report);
    const auto summary = evaluation_summary(report);
    write_file(cfg.out_dir / (stem + ".summary.txt"), summary);
    out << summary;
  }
  return 0;
}

int cmd_search(const RunConfig& cfg, bool synthetic, std::ostream& out) {
  nlohmann::ordered_json j;
  std::optional<MatchStore> store;
  Evaluator evaluator;
  if (synthetic) {
    evaluator = separable_objective;
    j["evaluator"] = "synthetic-separable";
  } else {
    store = load_store(cfg);
    std::vector<int> years = cfg.search_years.empty() ? cfg.years : cfg.search_years;
    if (years.empty()) {
      const auto all = store->years();
      years.assign(all.begin(), all.end());
    }
    const auto test_set = sample_test_set(*store, years, cfg.per_year, cfg.seed);
    if (test_set.empty()) throw InputError("search test set is empty");
    auto names = nlohmann::ordered_json::array();
    for (TournamentId id : test_set) {
      const auto& t = store->tournament(id);
      names.push_back({{"name", t.name}, {"year", t.year}});
    }
    j["evaluator"] = "pooled-hit-rate";
    j["seed"] = cfg.seed;
    j["test_set"] = std::move(names);
    evaluator = backtest_evaluator(*store, test_set, cfg.pagerank, cfg.threads);
  }

  long evaluations = 0;
  const Evaluator counted = [&](const WeightParams& p) {
    ++evaluations;
    return evaluator(p);
  };
  const auto state = coordinate_search(cfg.grid, counted, cfg.search_init, cfg.max_rounds);

  std::ostringstream trace;
  write_trace(trace, state);
  write_file(cfg.out_dir / "search_trace.tsv", trace.str());
  j["best"] = format_weight_params(state.best);
  j["best_score"] = state.best_score;
  j["initial"] = format_weight_params(cfg.search_init);
  j["initial_score"] = state.initial_score;
  j["rounds"] = state.rounds;
  j["converged"] = state.converged;
  j["evaluations"] = evaluations;
  write_file(cfg.out_dir / "search_result.json", j.dump(2) + "\n");

  std::ostringstream s;
  s << "best " << format_weight_params(state.best) << "  score " << text::format_sig(state.best_score, 8) << '\n'
    << "initial " << format_weight_params(cfg.search_init) << "  score "
    << text::format_sig(state.initial_score, 8) << '\n'
    << "rounds " << state.rounds << (state.converged ? " (converged)" : " (round limit reached)") << '\n'
    << "evaluations " << evaluations << '\n';
  write_file(cfg.out_dir / "search.summary.txt", s.str());
  out << s.str();
  return 0;
}

int cmd_fit_prob(const RunConfig& cfg, const std::vector<PredictorKind>& kinds, std::ostream& out) {
  Session session(cfg);
  std::ostringstream s;
  for (PredictorKind k : kinds) {
    const auto fit = fit_prob(session, cfg, k);
    const std::string stem = "prob_" + std::string(to_string(k));
    write_file(cfg.out_dir / (stem + ".json"), model_json(fit.tree.global, fit.bins, &fit.tree));
    std::ostringstream bins;
    write_bins_tsv(bins, fit.bins, fit.tree.global);
    write_file(cfg.out_dir / (stem + ".bins.tsv"), bins.str());
    write_file(cfg.out_dir / (stem + ".svg"),
               logistic_svg(fit.bins, fit.tree.global, "Hit rate by rank difference: " + std::string(to_string(k))));

    s << "predictor " << to_string(k) << "  a " << text::format_fixed(fit.tree.global.a, 3) << "  bins "
      << fit.tree.global.n_points << "  residual " << text::format_sig(fit.tree.global.fit_residual, 6)
      << (fit.tree.global.degenerate ? "  DEGENERATE" : "") << '\n';
    for (const auto& leaf : fit.tree.leaves) {
      s << "  " << std::left << std::setw(6) << to_string(leaf.surface) << std::setw(12) << to_string(leaf.category)
        << std::right << std::setw(7) << leaf.matches << "  ";
      if (leaf.model) {
        s << "a " << text::format_fixed(leaf.model->a, 3) << '\n';
      } else {
        s << "fallback\n";
      }
    }
  }
  write_file(cfg.out_dir / "prob.summary.txt", s.str());
  out << s.str();
  return 0;
}

int cmd_auroc(const RunConfig& cfg, const std::vector<PredictorKind>& kinds,
              const std::optional<fs::path>& scores_file, std::ostream& out) {
  if (scores_file) {
    const auto scored = read_scores(*scores_file);
    const auto roc = roc_curve(scored);
    std::ostringstream tsv;
    write_roc_tsv(tsv, roc);
    write_file(cfg.out_dir / "roc_scores.tsv", tsv.str());
    out << "auroc " << text::format_sig(roc.auroc, 12) << '\n';
    return 0;
  }

  Session session(cfg);
  std::vector<AurocRow> rows;
  for (PredictorKind k : kinds) {
    const auto fit = fit_prob(session, cfg, k);
    for (auto& r : auroc_rows(session, cfg, k, fit)) rows.push_back(std::move(r));
  }
  std::ostringstream table;
  table << "predictor\tmodel\tmode\tauroc\tpositives\tnegatives\n";
  std::map<std::string, std::vector<RocSeries>> plots;
  for (const auto& r : rows) {
    std::ostringstream tsv;
    write_roc_tsv(tsv, r.roc);
    write_file(cfg.out_dir / (roc_stem(r) + ".tsv"), tsv.str());
    table << to_string(r.kind) << '\t' << r.model << '\t' << (r.mirrored ? "mirrored" : "single") << '\t'
          << text::format_fixed(r.roc.auroc, 6) << '\t' << r.roc.positives << '\t' << r.roc.negatives << '\n';
    plots[r.model + (r.mirrored ? "_mirrored" : "")].push_back({std::string(to_string(r.kind)), r.roc});
  }
  for (const auto& [name, series] : plots)
    write_file(cfg.out_dir / ("roc_" + name + ".svg"), roc_svg(series, "ROC (" + name + " model)"));
  write_file(cfg.out_dir / "auroc.tsv", table.str());
  out << table.str();
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  Session session(cfg);
  std::map<PredictorKind, EvalReport> reports;
  for (PredictorKind k : kAllKinds) {
    reports.emplace(k, session.report(k));
    write_report(cfg.out_dir, "eval_" + std::string(to_string(k)), reports.at(k));
  }

  std::ostringstream md;
  md << "# Predictor comparison " << year_span(session.years()) << "\n\n";
  md << "| Year | Official | Uniform PageRank | Parametric PageRank |\n|---|---|---|---|\n";
  std::ostringstream years_tsv;
  years_tsv << "year\tofficial\tuniform\tparametric\tofficial_n\tuniform_n\tparametric_n\n";
  for (int y : session.years()) {
    md << "| " << y;
    years_tsv << y;
    for (PredictorKind k : kAllKinds) {
      md << " | " << pct(reports.at(k).by_year.at(y).rate());
      years_tsv << '\t' << text::format_fixed(100 * reports.at(k).by_year.at(y).rate(), 3);
    }
    for (PredictorKind k : kAllKinds) years_tsv << '\t' << reports.at(k).by_year.at(y).total();
    md << " |\n";
    years_tsv << '\n';
  }
  md << "| Total (pooled)";
  years_tsv << "overall";
  for (PredictorKind k : kAllKinds) {
    md << " | " << pct(reports.at(k).overall.rate());
    years_tsv << '\t' << text::format_fixed(100 * reports.at(k).overall.rate(), 3);
  }
  for (PredictorKind k : kAllKinds) years_tsv << '\t' << reports.at(k).overall.total();
  md << " |\n| Mean of years";
  years_tsv << "\nmean_of_years";
  for (PredictorKind k : kAllKinds) {
    md << " | " << pct(reports.at(k).mean_of_years);
    years_tsv << '\t' << text::format_fixed(100 * reports.at(k).mean_of_years, 3);
  }
  md << " |\n\n";
  years_tsv << "\t\t\t\n";
  write_file(cfg.out_dir / "comparison.years.tsv", years_tsv.str());
  if (reports.at(PredictorKind::OfficialRank).skipped > 0)
    md << "Official ranks skipped " << reports.at(PredictorKind::OfficialRank).skipped
       << " matches where neither player had a rank.\n\n";

  for (const auto& table : reports.at(PredictorKind::OfficialRank).slices) {
    if (table.kind == SliceKind::Year) continue;
    md << "## By " << to_string(table.kind) << "\n\n| " << to_string(table.kind)
       << " | Official | Uniform PageRank | Parametric PageRank |\n|---|---|---|---|\n";
    std::ostringstream tsv;
    tsv << to_string(table.kind) << "\tofficial\tuniform\tparametric\tofficial_n\tuniform_n\tparametric_n\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      md << "| " << table.rows[i].label;
      tsv << table.rows[i].label;
      for (PredictorKind k : kAllKinds) {
        const auto& cell = reports.at(k).slice(table.kind)->rows[i].total;
        md << " | " << (cell.total() ? pct(cell.rate()) + " (" + std::to_string(cell.total()) + ")" : "-");
        tsv << '\t' << text::format_fixed(100 * cell.rate(), 3);
      }
      for (PredictorKind k : kAllKinds) tsv << '\t' << reports.at(k).slice(table.kind)->rows[i].total.total();
      md << " |\n";
      tsv << '\n';
    }
    md << '\n';
    write_file(cfg.out_dir / ("comparison." + std::string(to_string(table.kind)) + ".tsv"), tsv.str());
  }

  md << "## AUROC\n\n| Predictor | a | Global model | Tree-routed |\n|---|---|---|---|\n";
  for (PredictorKind k : kAllKinds) {
    md << "| " << to_string(k);
    try {
      const auto fit = fit_prob(session, cfg, k);
      const auto rows = auroc_rows(session, cfg, k, fit);
      md << " | " << text::format_fixed(fit.tree.global.a, 3) << " | " << text::format_fixed(rows[0].roc.auroc, 4)
         << " | " << text::format_fixed(rows[1].roc.auroc, 4) << " |\n";
    } catch (const InputError& e) {
      md << " | n/a | n/a | n/a |\n";
    }
  }
  write_file(cfg.out_dir / "report.md", md.str());
  out << md.str();
  return 0;
}

}  // namespace courtrank::cli
