#include <algorithm>
#include <numeric>
#include <ostream>

#include "courtrank/ranking.hpp"
#include "text.hpp"

namespace courtrank {

RatingTable::RatingTable(TournamentId target, std::vector<RatingEntry> entries)
    : target_(target), entries_(std::move(entries)) {
  position_.reserve(entries_.size());
  for (const auto& e : entries_) position_.emplace(raw(e.player), e.position);
}

std::optional<int> RatingTable::position_of(PlayerId id) const {
  const auto it = position_.find(raw(id));
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

RatingTable rank_players(const MatchGraph& graph, std::span<const double> scores,
                         const MatchStore& store, TournamentId target) {
  if (scores.size() != graph.nodes.size())
    throw InputError("score vector does not match graph size");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Runs of consecutive scores within the tie tolerance are re-ordered by name.
  const auto name = [&](std::size_t i) -> const std::string& {
    return store.player(graph.nodes[i]).canonical_name;
  };
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() &&
           scores[order[end - 1]] - scores[order[end]] <= kScoreTieTolerance * scores[order[end - 1]])
      ++end;
    if (end - begin > 1) {
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                order.begin() + static_cast<std::ptrdiff_t>(end),
                [&](std::size_t a, std::size_t b) { return name(a) < name(b); });
    }
    begin = end;
  }

  std::vector<RatingEntry> entries;
  entries.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    entries.push_back(RatingEntry{static_cast<int>(i + 1), graph.nodes[order[i]], scores[order[i]]});
  }
  return RatingTable(target, std::move(entries));
}

RatingTable rank_players(const MatchGraph& graph, const PageRankConfig& config,
                         const MatchStore& store, TournamentId target) {
  const auto scores = compute_pagerank(graph, config);
  return rank_players(graph, scores, store, target);
}

RatingTable rate_tournament(const MatchStore& store, TournamentId target, const WeightParams& p,
                            const PageRankConfig& config) {
  p.validate();
  const auto window = query_window(store, target, p.age_years);
  const auto graph = build_graph(store, window, target_context(store, target), p);
  return rank_players(graph, config, store, target);
}

void write_rating_table(std::ostream& out, const RatingTable& table, const MatchStore& store) {
  out << "rank\tplayer\tscore\n";
  for (const auto& e : table.entries()) {
    out << e.position << '\t' << store.player(e.player).canonical_name << '\t'
        << text::format_sig(e.score, 10) << '\n';
  }
}

}  // namespace courtrank
