#pragma once

// Time-windowed result graphs and the edge-weighted PageRank that turns
// them into player ratings.

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "courtrank/dataset.hpp"

namespace courtrank {

// The four searched weighting parameters. Each edge weight is the product of
// an aging factor amplitude * exp(-decay_lambda * t), a surface factor
// (1 on the target's surface, surface_factor elsewhere) and a round factor
// round_base^-(v-1) where v is the match's position on the round ladder.
struct WeightParams {
  int age_years = 4;
  double decay_lambda = 5.0;  // positive magnitude; 0 disables aging
  double surface_factor = 0.3;
  double round_base = 1.7;
  double decay_amplitude = 1.0;

  // Every factor identically 1: plain multigraph PageRank over the window.
  static WeightParams identity(int age_years);

  // Throws InputError when a bound is violated.
  void validate() const;

  friend bool operator==(const WeightParams&, const WeightParams&) = default;
  friend auto operator<=>(const WeightParams&, const WeightParams&) = default;
};

// "age=4,decay=5,surface=0.3,round=1.7"; missing keys keep `base` values.
WeightParams parse_weight_params(std::string_view spec, WeightParams base = {});
std::string format_weight_params(const WeightParams& p);

inline constexpr double kMinSurfaceWeight = 1e-12;

// Position of a round on the ladder counted back from a Grand Slam title:
// Grand Slam F=1 .. R128=7; Masters 1000 starts at F=2, ATP 500 at F=3,
// ATP 250 at F=4. Masters Cup: F=2, SF=3, round robin=4.
int round_value(Category category, Round round);

double aging_weight(double t_years, const WeightParams& p);
double surface_weight(Surface match_surface, Surface target_surface, const WeightParams& p);
double instance_weight(int round_value, const WeightParams& p);

struct TargetContext {
  TournamentId id{};
  Surface surface = Surface::Hard;
  Date start{};
};

TargetContext target_context(const MatchStore& store, TournamentId target);

struct WeightedEdge {
  PlayerId from{};  // loser
  PlayerId to{};    // winner
  double weight = 1.0;
  MatchId match{};
};

WeightedEdge edge_weight(const MatchRecord& match, const Tournament& played_at,
                         const TargetContext& target, const WeightParams& p);

// Directed multigraph; parallel edges are kept.
struct MatchGraph {
  std::vector<PlayerId> nodes;  // ascending id
  std::vector<WeightedEdge> edges;

  std::size_t index_of(PlayerId id) const;  // throws if absent
};

MatchGraph build_graph(const MatchStore& store, std::span<const MatchRecord* const> window,
                       const TargetContext& target, const WeightParams& p);

struct PageRankConfig {
  double damping = 0.85;
  double tolerance = 1e-8;  // L1 change between iterations
  int max_iterations = 1000;

  void validate() const;
};

// Scores aligned with graph.nodes, summing to 1. Transition mass from v to u
// is proportional to the summed weight of v->u edges; nodes without
// out-edges teleport uniformly. Throws ConvergenceError at the iteration cap.
std::vector<double> compute_pagerank(const MatchGraph& graph, const PageRankConfig& config);

struct RatingEntry {
  int position = 0;
  PlayerId player{};
  double score = 0.0;
};

class RatingTable {
 public:
  RatingTable() = default;
  RatingTable(TournamentId target, std::vector<RatingEntry> entries);

  TournamentId target() const { return target_; }
  std::span<const RatingEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Absent players have no position (treated as rank +infinity).
  std::optional<int> position_of(PlayerId id) const;

 private:
  TournamentId target_{};
  std::vector<RatingEntry> entries_;
  std::unordered_map<std::int32_t, int> position_;
};

// Relative gap under which two scores count as tied and fall back to
// canonical-name order. Wide enough that a vanishing decay (1e-9) cannot
// split players the unweighted graph ties, still far below real gaps.
inline constexpr double kScoreTieTolerance = 1e-7;

RatingTable rank_players(const MatchGraph& graph, std::span<const double> scores,
                         const MatchStore& store, TournamentId target);
RatingTable rank_players(const MatchGraph& graph, const PageRankConfig& config,
                         const MatchStore& store, TournamentId target);

// Window query + graph + PageRank + ordering for one target tournament.
RatingTable rate_tournament(const MatchStore& store, TournamentId target, const WeightParams& p,
                            const PageRankConfig& config);

// "rank<TAB>player<TAB>score" with 10 significant digits.
void write_rating_table(std::ostream& out, const RatingTable& table, const MatchStore& store);

}  // namespace courtrank
