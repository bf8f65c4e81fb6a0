#include <ostream>

#include <json.hpp>

#include "courtrank/prob_model.hpp"
#include "text.hpp"

namespace courtrank {

std::size_t ProbTree::leaf_index(Surface s, Category c) {
  return static_cast<std::size_t>(s) * std::size(kAllCategories) + static_cast<std::size_t>(c);
}

const LogisticModel& ProbTree::resolve(Surface s, Category c) const {
  const auto& l = leaf(s, c);
  return l.model ? *l.model : global;
}

ProbTree build_tree(const MatchStore& store, std::span<const Prediction> predictions, long threshold,
                    const FitOptions& options) {
  ProbTree tree;
  tree.threshold = threshold;
  tree.global = fit_logistic(bin_hit_rates(predictions), options);

  std::array<std::vector<Prediction>, ProbTree::kLeafCount> routed;
  for (const auto& p : predictions) {
    const Tournament& t = store.tournament(p.tournament);
    routed[ProbTree::leaf_index(t.surface, t.category)].push_back(p);
  }
  for (Surface s : kAllSurfaces) {
    for (Category c : kAllCategories) {
      const std::size_t i = ProbTree::leaf_index(s, c);
      auto& leaf = tree.leaves[i];
      leaf.surface = s;
      leaf.category = c;
      const auto bins = bin_hit_rates(routed[i]);
      for (const auto& b : bins) leaf.matches += b.total;
      if (leaf.matches < threshold) continue;
      try {
        leaf.model = fit_logistic(bins, options);
      } catch (const InputError&) {
        leaf.model.reset();
      }
    }
  }
  return tree;
}

std::vector<ScoredMatch> score_predictions(const MatchStore& store,
                                           std::span<const Prediction> predictions,
                                           const LogisticModel& global, const ProbTree* tree,
                                           bool mirrored) {
  std::vector<ScoredMatch> out;
  out.reserve(predictions.size() * (mirrored ? 2 : 1));
  for (const auto& p : predictions) {
    ScoredMatch s;
    s.positive = p.hit();
    if (p.predicted_winner) {
      const LogisticModel* model = &global;
      if (tree) {
        const Tournament& t = store.tournament(p.tournament);
        model = &tree->resolve(t.surface, t.category);
      }
      const bool winner_predicted = p.hit();
      const auto better = winner_predicted ? p.rank_winner : p.rank_loser;
      const auto worse = winner_predicted ? p.rank_loser : p.rank_winner;
      s.score = p_victory(better, worse, *model);
    }
    out.push_back(s);
    if (mirrored) out.push_back(ScoredMatch{!s.positive, 1.0 - s.score});
  }
  return out;
}

namespace {

nlohmann::ordered_json model_fields(const LogisticModel& m) {
  return {{"a", m.a}, {"fit_residual", m.fit_residual}, {"n_points", m.n_points},
          {"degenerate", m.degenerate}};
}

}  // namespace

std::string model_json(const LogisticModel& model, std::span<const DiffBin> bins, const ProbTree* tree) {
  nlohmann::ordered_json j;
  j["global"] = model_fields(model);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& b : bins)
    rows.push_back({{"diff", b.diff}, {"hits", b.hits}, {"total", b.total}, {"rate", b.rate()}});
  j["bins"] = std::move(rows);
  if (tree) {
    auto& t = j["tree"];
    t["threshold"] = tree->threshold;
    auto leaves = nlohmann::ordered_json::array();
    for (const auto& l : tree->leaves) {
      nlohmann::ordered_json leaf;
      leaf["surface"] = to_string(l.surface);
      leaf["category"] = to_string(l.category);
      leaf["matches"] = l.matches;
      if (l.model) {
        leaf["model"] = model_fields(*l.model);
      } else {
        leaf["model"] = "fallback";
      }
      leaves.push_back(std::move(leaf));
    }
    t["leaves"] = std::move(leaves);
  }
  return j.dump(2) + "\n";
}

void write_bins_tsv(std::ostream& out, std::span<const DiffBin> bins, const LogisticModel& model) {
  out << "diff\thits\ttotal\trate\tmodel\n";
  for (const auto& b : bins) {
    out << b.diff << '\t' << b.hits << '\t' << b.total << '\t' << text::format_sig(b.rate(), 10) << '\t'
        << text::format_sig(p_victory(0.0, static_cast<double>(b.diff), model.a), 10) << '\n';
  }
}

}  // namespace courtrank
