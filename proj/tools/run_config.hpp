#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "courtrank/evaluation.hpp"
#include "courtrank/ini.hpp"
#include "courtrank/prob_model.hpp"
#include "courtrank/search.hpp"

namespace courtrank::cli {

// Bad command line or config content (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Everything a run needs. Relative paths in a config file resolve against the
// file's directory; flags override the file one-to-one.
struct RunConfig {
  std::optional<std::filesystem::path> store;
  std::optional<std::filesystem::path> raw_dir;
  std::optional<std::filesystem::path> column_map;
  std::filesystem::path out_dir = "out";

  std::vector<int> years;  // empty = every year in the store
  std::set<SliceKind> slices{SliceKind::Year, SliceKind::Surface, SliceKind::Category,
                             SliceKind::RankBand};
  unsigned threads = 0;

  PredictorKind kind = PredictorKind::ParametricPageRank;
  WeightParams params;
  int uniform_age = 1;
  PageRankConfig pagerank;

  SearchGrid grid;
  WeightParams search_init = default_search_init();
  std::vector<int> search_years;  // empty = `years`
  int per_year = 10;
  std::uint64_t seed = 20140601;
  int max_rounds = 50;

  FitOptions fit;
  long leaf_threshold = kDefaultLeafThreshold;
  bool mirrored = false;

  static RunConfig from_ini(const IniDocument& doc, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  Predictor predictor(PredictorKind k) const;
  Predictor predictor() const { return predictor(kind); }
};

// "2005-2013", "2005,2007,2010-2012"
std::vector<int> parse_year_list(std::string_view text);
std::set<SliceKind> parse_slice_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

}  // namespace courtrank::cli
