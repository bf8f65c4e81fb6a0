#pragma once

// Victory probability as a logistic function of rank difference, optionally
// refined per (surface, category) leaf, and ROC scoring of predictors.

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "courtrank/evaluation.hpp"

namespace courtrank {

struct DiffBin {
  int diff = 0;  // |r1 - r2| >= 1
  long hits = 0;
  long total = 0;

  double rate() const { return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total); }
  friend bool operator==(const DiffBin&, const DiffBin&) = default;
};

// One bin per observed difference, ascending. Predictions with an unranked
// player or equal ranks carry no difference and are left out.
std::vector<DiffBin> bin_hit_rates(std::span<const Prediction> predictions);

struct LogisticModel {
  double a = 1.0;
  double fit_residual = 0.0;  // sum of total * (rate - P)^2 over fitted bins
  int n_points = 0;
  bool degenerate = false;    // optimum pinned at the upper bound of a
};

struct FitOptions {
  double a_min = 1.0;
  double a_max = 1000.0;
  long min_bin_total = 5;
  double tolerance = 1e-7;  // absolute bracket width on a
};

// Count-weighted least squares over a in [a_min, a_max]: log-spaced scan,
// then golden-section refinement of the best bracket. Needs at least three
// usable bins with two distinct differences; throws InputError otherwise.
LogisticModel fit_logistic(std::span<const DiffBin> bins, const FitOptions& options = {});

// 1 / (1 + exp((r1 - r2) / a)): probability that the player ranked r1 wins.
double p_victory(double r1, double r2, double a);
// Unranked (empty) is +infinity: 0 against a ranked player, 0.5 against another unranked one.
double p_victory(std::optional<int> r1, std::optional<int> r2, const LogisticModel& model);

struct ProbLeaf {
  Surface surface = Surface::Hard;
  Category category = Category::ATP250;
  long matches = 0;                     // ranked predictions routed here
  std::optional<LogisticModel> model;   // empty = falls back to the global model
};

inline constexpr long kDefaultLeafThreshold = 200;

class ProbTree {
 public:
  static constexpr std::size_t kLeafCount = std::size(kAllSurfaces) * std::size(kAllCategories);

  LogisticModel global;
  long threshold = kDefaultLeafThreshold;
  std::array<ProbLeaf, kLeafCount> leaves{};

  static std::size_t leaf_index(Surface s, Category c);
  const ProbLeaf& leaf(Surface s, Category c) const { return leaves[leaf_index(s, c)]; }
  const LogisticModel& resolve(Surface s, Category c) const;
};

// Global fit over every ranked prediction, then one fit per leaf holding at
// least `threshold` ranked predictions. A leaf whose data cannot support a fit
// also falls back.
ProbTree build_tree(const MatchStore& store, std::span<const Prediction> predictions,
                    long threshold = kDefaultLeafThreshold, const FitOptions& options = {});

struct ScoredMatch {
  bool positive = false;  // Hit
  double score = 0.5;     // model probability that the predicted winner wins
};

// Score for each prediction: P(predicted winner wins) under the global model
// or, when `tree` is given, the leaf model of the match's tournament.
// Undecided predictions score 0.5. Mirrored mode also adds each match from
// the other player's side (label flipped, score 1 - p).
std::vector<ScoredMatch> score_predictions(const MatchStore& store,
                                           std::span<const Prediction> predictions,
                                           const LogisticModel& global, const ProbTree* tree = nullptr,
                                           bool mirrored = false);

struct RocPoint {
  double threshold = 0;  // scores >= threshold are called positive
  double fpr = 0;
  double tpr = 0;
};

struct RocResult {
  std::vector<RocPoint> curve;  // (0,0) first, (1,1) last
  double auroc = 0.5;
  double pairwise = 0.5;        // Mann-Whitney statistic from midranks
  long positives = 0;
  long negatives = 0;
};

inline constexpr double kAurocCrossCheckTolerance = 1e-9;

// Threshold sweep over distinct scores with trapezoidal area, verified against
// the rank statistic. Throws InputError on single-class input and
// CrossCheckError when the two areas disagree.
RocResult roc_curve(std::span<const ScoredMatch> scored);

// Exports: model as JSON, ROC as "threshold<TAB>fpr<TAB>tpr" rows plus a final
// "auroc<TAB>value" line, bins as "diff<TAB>hits<TAB>total<TAB>rate<TAB>model".
std::string model_json(const LogisticModel& model, std::span<const DiffBin> bins,
                       const ProbTree* tree = nullptr);
void write_roc_tsv(std::ostream& out, const RocResult& roc);
void write_bins_tsv(std::ostream& out, std::span<const DiffBin> bins, const LogisticModel& model);

}  // namespace courtrank
