#pragma once

// Canonical three-table match store (players, tournaments, matches) and the
// ingest pipeline that builds it from heterogeneous per-season files.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "courtrank/core.hpp"
#include "courtrank/ini.hpp"

namespace courtrank {

struct Player {
  PlayerId id{};
  std::string canonical_name;  // "Surname F.M."
};

struct Tournament {
  TournamentId id{};
  std::string name;
  int year = 0;
  unsigned week = 0;  // ISO week of the earliest match date
  Surface surface = Surface::Hard;
  int best_of = 3;
  Category category = Category::ATP250;
  std::string location;
  bool indoor = false;
};

struct SetScore {
  int games_winner = 0;
  int games_loser = 0;
  friend bool operator==(const SetScore&, const SetScore&) = default;
};

struct MatchRecord {
  MatchId id{};
  TournamentId tournament{};
  Round round = Round::R32;
  Date date{};
  PlayerId winner{};
  PlayerId loser{};
  std::optional<int> official_rank_winner;
  std::optional<int> official_rank_loser;
  std::vector<SetScore> sets;  // at most five
  bool completed = false;
  std::optional<double> odds_winner;
  std::optional<double> odds_loser;
};

int sets_won_by_winner(const MatchRecord& m);

// Immutable after construction; every accessor is safe for concurrent reads.
class MatchStore {
 public:
  MatchStore() = default;

  // Validates referential integrity and domain invariants, then sorts
  // matches by (date, id). Ids must be dense and start at 1.
  static MatchStore assemble(std::vector<Player> players, std::vector<Tournament> tournaments,
                             std::vector<MatchRecord> matches);

  std::span<const Player> players() const { return players_; }
  std::span<const Tournament> tournaments() const { return tournaments_; }
  // Sorted by (date, match id).
  std::span<const MatchRecord> matches() const { return matches_; }

  const Player& player(PlayerId id) const;
  const Tournament& tournament(TournamentId id) const;
  const MatchRecord& match(MatchId id) const;

  std::optional<TournamentId> find_tournament(std::string_view name, int year) const;
  std::optional<PlayerId> find_player(std::string_view canonical_name) const;

  // Earliest match date of the tournament.
  Date start_date(TournamentId id) const;
  // Matches of one tournament in (date, id) order.
  std::vector<const MatchRecord*> matches_of(TournamentId id) const;
  // Tournaments of a season ordered by (start date, id).
  std::vector<TournamentId> tournaments_in_year(int year) const;
  // Tournaments grouped under their (year, week) key.
  std::vector<TournamentId> tournaments_in_week(int year, unsigned week) const;
  std::set<int> years() const;

  void save(const std::filesystem::path& dir) const;
  static MatchStore load(const std::filesystem::path& dir);

 private:
  std::vector<Player> players_;
  std::vector<Tournament> tournaments_;
  std::vector<MatchRecord> matches_;
  std::vector<std::size_t> match_slot_;                    // match id - 1 -> index in matches_
  std::vector<std::vector<std::size_t>> by_tournament_;    // tournament id - 1 -> indices
  std::vector<Date> start_dates_;                          // tournament id - 1
  std::map<std::pair<int, unsigned>, std::vector<TournamentId>> by_week_;
  std::unordered_map<std::string, TournamentId> by_name_year_;
  std::unordered_map<std::string, PlayerId> by_player_name_;
};

// Completed matches strictly before the target's first match date and no
// more than age_years * 52 weeks before it, in (date, id) order. Pointers
// refer into the store.
std::vector<const MatchRecord*> query_window(const MatchStore& store, TournamentId target,
                                             int age_years);

// ---------------------------------------------------------------------------
// Name normalization

// Maps a raw spelling onto the canonical "Surname F.M." form. Exact
// (case/diacritic-insensitive) matches win; otherwise a unique known name
// with the same surname and first initial is reused; otherwise a fresh
// canonical name is returned. Several matching candidates throw
// AmbiguityError.
std::string normalize_player(std::string_view name, const std::set<std::string>& known);

// Incremental variant used by ingest; keeps lookup indexes across calls.
class NameRegistry {
 public:
  std::string resolve(std::string_view name);
  const std::set<std::string>& known() const { return known_; }

 private:
  std::set<std::string> known_;
  std::unordered_map<std::string, std::string> resolved_;  // raw spelling -> canonical
};

// Lowercase ASCII fold with Latin diacritics stripped and spaces collapsed.
std::string fold_name(std::string_view name);

// ---------------------------------------------------------------------------
// Ingest

enum class Field {
  Date,
  Tournament,
  Series,
  Surface,
  Court,
  Round,
  BestOf,
  Winner,
  Loser,
  WinnerRank,
  LoserRank,
  W1, L1, W2, L2, W3, L3, W4, L4, W5, L5,
  Comment,
  OddsWinner,
  OddsLoser,
  Location,
};
inline constexpr std::size_t kFieldCount = static_cast<std::size_t>(Field::Location) + 1;

std::string_view field_key(Field f);

enum class DateOrder { YMD, DMY, MDY };

struct ColumnLayout {
  std::string name;
  std::map<Field, std::string> columns;  // field -> header text in the file
  DateOrder date_order = DateOrder::YMD;
};

// A raw round label resolves either to a fixed round or to an ordinal early
// round counted from the tournament's first round (resolved per tournament
// once its deepest ordinal is known).
struct RoundAlias {
  std::optional<Round> fixed;
  int ordinal = 0;
};

struct SeriesAlias {
  Category category;
  std::optional<int> first_year;  // inclusive bounds when the label changed meaning
  std::optional<int> last_year;
};

struct IngestConfig {
  std::vector<ColumnLayout> layouts;
  std::map<std::string, std::vector<SeriesAlias>> series;  // folded label -> aliases
  std::map<std::string, Surface> surfaces;                 // folded label
  std::map<std::string, RoundAlias> rounds;                // folded label
  std::set<std::string> completed_comments{"completed"};  // folded
  std::set<std::string> indoor_labels{"indoor"};          // folded

  static IngestConfig from_ini(const IniDocument& doc);
  static IngestConfig load(const std::filesystem::path& path);
};

struct RawRow {
  std::filesystem::path source;
  std::size_t line = 0;
  std::string layout;
  std::array<std::optional<std::string>, kFieldCount> fields;

  const std::optional<std::string>& get(Field f) const {
    return fields[static_cast<std::size_t>(f)];
  }
};

// Reads every *.csv / *.txt file in the directory (sorted by file name).
std::vector<RawRow> parse_raw_files(const std::filesystem::path& directory,
                                    const IngestConfig& config);

struct UnifiedTournament {
  std::string name;
  Category category;
};

UnifiedTournament unify_tournament(std::string_view raw_name, std::string_view raw_series,
                                   int year, const IngestConfig& config);

MatchStore build_store(std::span<const RawRow> rows, const IngestConfig& config);

}  // namespace courtrank
