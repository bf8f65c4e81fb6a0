// courtrank: ingest match files, build PageRank ratings, backtest predictors,
// search weight parameters and fit victory-probability models.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace courtrank;
using namespace courtrank::cli;

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kInput = 3,
  kIntegrity = 4,
  kConvergence = 5,
  kCrossCheck = 6,
};

struct Options {
  std::string config;
  std::optional<std::string> out, store, years, params, predictor, slices, raw, columns;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string tournament;
  int year = 0;
  bool synthetic = false;
  bool mirrored = false;
  std::optional<std::string> scores;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "INI run configuration");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--store", o.store, "Store directory");
  sub->add_option("--years", o.years, "Evaluation years, e.g. 2005-2013");
  sub->add_option("--seed", o.seed, "Random seed for test-set sampling");
  sub->add_option("--params", o.params, "Weight parameters, e.g. age=4,decay=5,surface=0.3,round=1.7");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

RunConfig resolve(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  try {
    if (o.out) c.out_dir = *o.out;
    if (o.store) c.store = *o.store;
    if (o.raw) c.raw_dir = *o.raw;
    if (o.columns) c.column_map = *o.columns;
    if (o.years) c.years = parse_year_list(*o.years);
    if (o.slices) c.slices = parse_slice_list(*o.slices);
    if (o.seed) c.seed = *o.seed;
    if (o.threads) c.threads = *o.threads;
    if (o.params) c.params = parse_weight_params(*o.params, c.params);
    if (o.mirrored) c.mirrored = true;
  } catch (const UsageError&) {
    throw;
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::vector<PredictorKind> kinds(const Options& o, std::vector<PredictorKind> fallback) {
  if (!o.predictor || *o.predictor == "all") return fallback;
  const auto k = parse_predictor_kind(*o.predictor);
  if (!k) throw UsageError("unknown predictor '" + *o.predictor + "' (official, uniform, parametric, all)");
  return {*k};
}

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "courtrank: " << kind << ": " << e.what() << '\n';
  return code;
}

int classify(const std::exception& e) {
  if (const auto* s = dynamic_cast<const SearchError*>(&e)) {
    try {
      std::rethrow_if_nested(*s);
    } catch (const std::exception& inner) {
      std::cerr << "courtrank: " << s->what() << '\n';
      return classify(inner);
    }
  }
  if (dynamic_cast<const UsageError*>(&e)) return report("usage error", e, kUsage);
  if (dynamic_cast<const AmbiguityError*>(&e)) return report("ambiguous input", e, kInput);
  if (dynamic_cast<const InputError*>(&e)) return report("input error", e, kInput);
  if (dynamic_cast<const IntegrityError*>(&e)) return report("integrity error", e, kIntegrity);
  if (dynamic_cast<const ConvergenceError*>(&e)) return report("convergence failure", e, kConvergence);
  if (dynamic_cast<const CrossCheckError*>(&e)) return report("cross-check failure", e, kCrossCheck);
  return report("error", e, kFailure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PageRank tennis ratings: ingest, rank, evaluate, search, fit-prob, auroc, report"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Build the store from raw match files");
  add_common(ingest, o);
  ingest->add_option("--raw", o.raw, "Directory of raw season files");
  ingest->add_option("--columns", o.columns, "Column map INI");

  auto* rank = app.add_subcommand("rank", "Rating table for one tournament");
  add_common(rank, o);
  rank->add_option("--tournament", o.tournament, "Tournament name")->required();
  rank->add_option("--year", o.year, "Tournament year")->required();
  rank->add_option("--predictor", o.predictor, "uniform or parametric (default: config)");

  auto* evaluate = app.add_subcommand("evaluate", "Backtest hit rates");
  add_common(evaluate, o);
  evaluate->add_option("--predictor", o.predictor, "official, uniform, parametric or all (default: config)");
  evaluate->add_option("--slices", o.slices, "Subset of year,surface,category,rank_band");

  auto* search = app.add_subcommand("search", "Coordinate search over weight parameters");
  add_common(search, o);
  search->add_flag("--synthetic", o.synthetic, "Use the separable synthetic objective (test hook)");

  auto* fit = app.add_subcommand("fit-prob", "Fit victory-probability models");
  add_common(fit, o);
  fit->add_option("--predictor", o.predictor, "official, uniform, parametric or all (default: all)");

  auto* auroc = app.add_subcommand("auroc", "ROC curves and AUROC per predictor");
  add_common(auroc, o);
  auroc->add_option("--predictor", o.predictor, "official, uniform, parametric or all (default: all)");
  auroc->add_flag("--mirrored", o.mirrored, "Also score every match from the other player's side");
  auroc->add_option("--scores", o.scores, "Score a '<hit|miss><TAB><score>' file instead of a store");

  auto* rep = app.add_subcommand("report", "Comparison tables for all predictors");
  add_common(rep, o);
  rep->add_option("--slices", o.slices, "Subset of year,surface,category,rank_band");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = resolve(o);
    const std::vector<PredictorKind> all{PredictorKind::OfficialRank, PredictorKind::UniformPageRank,
                                         PredictorKind::ParametricPageRank};
    if (*ingest) return cmd_ingest(cfg, std::cout);
    if (*rank) return cmd_rank(cfg, o.tournament, o.year, kinds(o, {cfg.kind}).front(), std::cout);
    if (*evaluate) return cmd_evaluate(cfg, kinds(o, o.predictor ? all : std::vector{cfg.kind}), std::cout);
    if (*search) return cmd_search(cfg, o.synthetic, std::cout);
    if (*fit) return cmd_fit_prob(cfg, kinds(o, all), std::cout);
    if (*auroc) {
      std::optional<std::filesystem::path> scores;
      if (o.scores) scores = *o.scores;
      return cmd_auroc(cfg, kinds(o, all), scores, std::cout);
    }
    if (*rep) return cmd_report(cfg, std::cout);
  } catch (const std::exception& e) {
    return classify(e);
  }
  return kFailure;
}
