#include <algorithm>
#include <fstream>

#include "courtrank/dataset.hpp"
#include "text.hpp"

namespace courtrank {

namespace {

constexpr std::string_view kPlayersHeader = "player_id\tcanonical_name";
constexpr std::string_view kTournamentsHeader =
    "tournament_id\tname\tyear\tweek\tsurface\tbest_of\tcategory\tlocation\tindoor";
constexpr std::string_view kMatchesHeader =
    "match_id\ttournament_id\tround\tdate\twinner_id\tloser_id\tofficial_rank_winner\t"
    "official_rank_loser\tset_scores\tcompleted\todds_winner\todds_loser";

std::string name_year_key(std::string_view name, int year) {
  return fold_name(name) + "\x1f" + std::to_string(year);
}

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
std::string optional_double(const std::optional<double>& v) {
  return v ? text::format_double(*v) : "";
}

std::string format_sets(const std::vector<SetScore>& sets) {
  std::string out;
  for (const auto& s : sets) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(s.games_winner) + "-" + std::to_string(s.games_loser);
  }
  return out;
}

class TsvReader {
 public:
  TsvReader(const std::filesystem::path& path, std::string_view header) : path_(path), in_(path) {
    if (!in_) throw InputError("cannot read store file " + path.string());
    std::string line;
    if (!std::getline(in_, line) || line != header)
      throw InputError(path.string() + ": unexpected header (expected '" + std::string(header) + "')");
    columns_ = text::split(header, '\t').size();
    line_ = 1;
  }

  bool next(std::vector<std::string>& cells) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (line.empty()) continue;
      cells.clear();
      for (auto c : text::split(line, '\t')) cells.emplace_back(c);
      if (cells.size() != columns_) fail("expected " + std::to_string(columns_) + " fields");
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(path_.string() + ":" + std::to_string(line_) + ": " + msg);
  }

  long long integer(const std::string& cell) const {
    const auto v = text::parse_int(cell);
    if (!v) fail("expected integer, got '" + cell + "'");
    return *v;
  }

  std::optional<int> optional_integer(const std::string& cell) const {
    if (cell.empty()) return std::nullopt;
    return static_cast<int>(integer(cell));
  }

  std::optional<double> optional_real(const std::string& cell) const {
    if (cell.empty()) return std::nullopt;
    const auto v = text::parse_double(cell);
    if (!v) fail("expected number, got '" + cell + "'");
    return v;
  }

  bool flag(const std::string& cell) const {
    if (cell == "1") return true;
    if (cell == "0") return false;
    fail("expected 0/1, got '" + cell + "'");
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t columns_ = 0;
  std::size_t line_ = 0;
};

}  // namespace

MatchStore MatchStore::assemble(std::vector<Player> players, std::vector<Tournament> tournaments,
                                std::vector<MatchRecord> matches) {
  MatchStore s;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const Player& p = players[i];
    if (raw(p.id) != static_cast<std::int32_t>(i + 1))
      throw IntegrityError("player ids must be dense from 1; found " + std::to_string(raw(p.id)) +
                           " at position " + std::to_string(i + 1));
    if (p.canonical_name.empty()) throw IntegrityError("player " + std::to_string(raw(p.id)) + " has an empty name");
    if (!s.by_player_name_.emplace(p.canonical_name, p.id).second)
      throw IntegrityError("duplicate player name '" + p.canonical_name + "'");
  }
  for (std::size_t i = 0; i < tournaments.size(); ++i) {
    const Tournament& t = tournaments[i];
    const std::string label = "tournament " + std::to_string(raw(t.id));
    if (raw(t.id) != static_cast<std::int32_t>(i + 1))
      throw IntegrityError("tournament ids must be dense from 1; found " + std::to_string(raw(t.id)));
    if (t.name.empty()) throw IntegrityError(label + " has an empty name");
    if (t.week < 1 || t.week > 53) throw IntegrityError(label + " has week outside 1..53");
    if (t.best_of != 3 && t.best_of != 5) throw IntegrityError(label + " has best_of not in {3,5}");
    if (!s.by_name_year_.emplace(name_year_key(t.name, t.year), t.id).second)
      throw IntegrityError("duplicate tournament (" + t.name + ", " + std::to_string(t.year) + ")");
  }

  std::vector<char> seen(matches.size(), 0);
  s.start_dates_.assign(tournaments.size(), Date::max());
  for (const MatchRecord& m : matches) {
    const std::string label = "match " + std::to_string(raw(m.id));
    const auto id = raw(m.id);
    if (id < 1 || static_cast<std::size_t>(id) > matches.size() || seen[static_cast<std::size_t>(id - 1)])
      throw IntegrityError(label + ": match ids must be unique and dense from 1");
    seen[static_cast<std::size_t>(id - 1)] = 1;
    const auto tid = raw(m.tournament);
    if (tid < 1 || static_cast<std::size_t>(tid) > tournaments.size())
      throw IntegrityError(label + " references unknown tournament " + std::to_string(tid));
    for (PlayerId p : {m.winner, m.loser}) {
      if (raw(p) < 1 || static_cast<std::size_t>(raw(p)) > players.size())
        throw IntegrityError(label + " references unknown player " + std::to_string(raw(p)));
    }
    if (m.winner == m.loser) throw IntegrityError(label + ": winner equals loser");
    if (m.sets.size() > 5) throw IntegrityError(label + ": more than five sets");
    const Tournament& t = tournaments[static_cast<std::size_t>(tid - 1)];
    if (m.completed && sets_won_by_winner(m) < (t.best_of + 1) / 2)
      throw IntegrityError(label + ": completed but winner took fewer than " +
                           std::to_string((t.best_of + 1) / 2) + " sets");
    if ((m.official_rank_winner && *m.official_rank_winner < 1) ||
        (m.official_rank_loser && *m.official_rank_loser < 1))
      throw IntegrityError(label + ": official ranks must be positive");
    if ((m.odds_winner && *m.odds_winner < 1.0) || (m.odds_loser && *m.odds_loser < 1.0))
      throw IntegrityError(label + ": odds must be at least 1.0");
    if (calendar_year(m.date) != t.year && iso_week(m.date).year != t.year)
      throw IntegrityError(label + ": date " + format_date(m.date) + " outside tournament year " +
                           std::to_string(t.year));
    auto& start = s.start_dates_[static_cast<std::size_t>(tid - 1)];
    start = std::min(start, m.date);
  }
  for (const Tournament& t : tournaments) {
    const Date start = s.start_dates_[static_cast<std::size_t>(raw(t.id) - 1)];
    if (start == Date::max())
      throw IntegrityError("tournament " + std::to_string(raw(t.id)) + " (" + t.name + ") has no matches");
    const IsoWeek wk = iso_week(start);
    if (wk.year != t.year || wk.week != t.week)
      throw IntegrityError("tournament " + std::to_string(raw(t.id)) + " (" + t.name +
                           "): year/week disagree with its earliest match date " + format_date(start));
  }

  std::sort(matches.begin(), matches.end(), [](const MatchRecord& a, const MatchRecord& b) {
    return a.date != b.date ? a.date < b.date : raw(a.id) < raw(b.id);
  });
  s.match_slot_.resize(matches.size());
  s.by_tournament_.resize(tournaments.size());
  for (std::size_t i = 0; i < matches.size(); ++i) {
    s.match_slot_[static_cast<std::size_t>(raw(matches[i].id) - 1)] = i;
    s.by_tournament_[static_cast<std::size_t>(raw(matches[i].tournament) - 1)].push_back(i);
  }
  for (const Tournament& t : tournaments) s.by_week_[{t.year, t.week}].push_back(t.id);

  s.players_ = std::move(players);
  s.tournaments_ = std::move(tournaments);
  s.matches_ = std::move(matches);
  return s;
}

const Player& MatchStore::player(PlayerId id) const {
  if (raw(id) < 1 || static_cast<std::size_t>(raw(id)) > players_.size())
    throw InputError("unknown player id " + std::to_string(raw(id)));
  return players_[static_cast<std::size_t>(raw(id) - 1)];
}

const Tournament& MatchStore::tournament(TournamentId id) const {
  if (raw(id) < 1 || static_cast<std::size_t>(raw(id)) > tournaments_.size())
    throw InputError("unknown tournament id " + std::to_string(raw(id)));
  return tournaments_[static_cast<std::size_t>(raw(id) - 1)];
}

const MatchRecord& MatchStore::match(MatchId id) const {
  if (raw(id) < 1 || static_cast<std::size_t>(raw(id)) > matches_.size())
    throw InputError("unknown match id " + std::to_string(raw(id)));
  return matches_[match_slot_[static_cast<std::size_t>(raw(id) - 1)]];
}

std::optional<TournamentId> MatchStore::find_tournament(std::string_view name, int year) const {
  const auto it = by_name_year_.find(name_year_key(name, year));
  if (it == by_name_year_.end()) return std::nullopt;
  return it->second;
}

std::optional<PlayerId> MatchStore::find_player(std::string_view canonical_name) const {
  const auto it = by_player_name_.find(std::string(canonical_name));
  if (it == by_player_name_.end()) return std::nullopt;
  return it->second;
}

Date MatchStore::start_date(TournamentId id) const {
  tournament(id);
  return start_dates_[static_cast<std::size_t>(raw(id) - 1)];
}

std::vector<const MatchRecord*> MatchStore::matches_of(TournamentId id) const {
  tournament(id);
  std::vector<const MatchRecord*> out;
  for (std::size_t i : by_tournament_[static_cast<std::size_t>(raw(id) - 1)]) out.push_back(&matches_[i]);
  return out;
}

std::vector<TournamentId> MatchStore::tournaments_in_year(int year) const {
  std::vector<TournamentId> out;
  for (const auto& t : tournaments_) {
    if (t.year == year) out.push_back(t.id);
  }
  std::sort(out.begin(), out.end(), [&](TournamentId a, TournamentId b) {
    const Date da = start_date(a), db = start_date(b);
    return da != db ? da < db : raw(a) < raw(b);
  });
  return out;
}

std::vector<TournamentId> MatchStore::tournaments_in_week(int year, unsigned week) const {
  const auto it = by_week_.find({year, week});
  return it == by_week_.end() ? std::vector<TournamentId>{} : it->second;
}

std::set<int> MatchStore::years() const {
  std::set<int> out;
  for (const auto& t : tournaments_) out.insert(t.year);
  return out;
}

void MatchStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("players.tsv");
    out << kPlayersHeader << '\n';
    for (const auto& p : players_) out << raw(p.id) << '\t' << p.canonical_name << '\n';
  }
  {
    auto out = open("tournaments.tsv");
    out << kTournamentsHeader << '\n';
    for (const auto& t : tournaments_) {
      out << raw(t.id) << '\t' << t.name << '\t' << t.year << '\t' << t.week << '\t'
          << to_string(t.surface) << '\t' << t.best_of << '\t' << to_string(t.category) << '\t'
          << t.location << '\t' << (t.indoor ? 1 : 0) << '\n';
    }
  }
  {
    auto out = open("matches.tsv");
    out << kMatchesHeader << '\n';
    for (std::size_t slot : match_slot_) {
      const MatchRecord& m = matches_[slot];
      out << raw(m.id) << '\t' << raw(m.tournament) << '\t' << to_string(m.round) << '\t'
          << format_date(m.date) << '\t' << raw(m.winner) << '\t' << raw(m.loser) << '\t'
          << optional_int(m.official_rank_winner) << '\t' << optional_int(m.official_rank_loser)
          << '\t' << format_sets(m.sets) << '\t' << (m.completed ? 1 : 0) << '\t'
          << optional_double(m.odds_winner) << '\t' << optional_double(m.odds_loser) << '\n';
    }
  }
}

MatchStore MatchStore::load(const std::filesystem::path& dir) {
  std::vector<Player> players;
  std::vector<Tournament> tournaments;
  std::vector<MatchRecord> matches;
  std::vector<std::string> c;
  {
    TsvReader r(dir / "players.tsv", kPlayersHeader);
    while (r.next(c)) players.push_back(Player{PlayerId{static_cast<std::int32_t>(r.integer(c[0]))}, c[1]});
  }
  {
    TsvReader r(dir / "tournaments.tsv", kTournamentsHeader);
    while (r.next(c)) {
      Tournament t;
      t.id = TournamentId{static_cast<std::int32_t>(r.integer(c[0]))};
      t.name = c[1];
      t.year = static_cast<int>(r.integer(c[2]));
      t.week = static_cast<unsigned>(r.integer(c[3]));
      const auto surface = parse_surface(c[4]);
      if (!surface) r.fail("unknown surface '" + c[4] + "'");
      t.surface = *surface;
      t.best_of = static_cast<int>(r.integer(c[5]));
      const auto category = parse_category(c[6]);
      if (!category) r.fail("unknown category '" + c[6] + "'");
      t.category = *category;
      t.location = c[7];
      t.indoor = r.flag(c[8]);
      tournaments.push_back(std::move(t));
    }
  }
  {
    TsvReader r(dir / "matches.tsv", kMatchesHeader);
    while (r.next(c)) {
      MatchRecord m;
      m.id = MatchId{static_cast<std::int32_t>(r.integer(c[0]))};
      m.tournament = TournamentId{static_cast<std::int32_t>(r.integer(c[1]))};
      const auto round = parse_round(c[2]);
      if (!round) r.fail("unknown round '" + c[2] + "'");
      m.round = *round;
      try {
        m.date = parse_iso_date(c[3]);
      } catch (const InputError& e) {
        r.fail(e.what());
      }
      m.winner = PlayerId{static_cast<std::int32_t>(r.integer(c[4]))};
      m.loser = PlayerId{static_cast<std::int32_t>(r.integer(c[5]))};
      m.official_rank_winner = r.optional_integer(c[6]);
      m.official_rank_loser = r.optional_integer(c[7]);
      if (!c[8].empty()) {
        for (auto set : text::split(c[8], ',')) {
          const auto games = text::split(set, '-');
          if (games.size() != 2) r.fail("malformed set score '" + std::string(set) + "'");
          m.sets.push_back(SetScore{static_cast<int>(r.integer(std::string(games[0]))),
                                    static_cast<int>(r.integer(std::string(games[1])))});
        }
      }
      m.completed = r.flag(c[9]);
      m.odds_winner = r.optional_real(c[10]);
      m.odds_loser = r.optional_real(c[11]);
      matches.push_back(std::move(m));
    }
  }
  return assemble(std::move(players), std::move(tournaments), std::move(matches));
}

std::vector<const MatchRecord*> query_window(const MatchStore& store, TournamentId target,
                                             int age_years) {
  if (age_years < 1) throw InputError("age_years must be at least 1");
  const Date start = store.start_date(target);
  const Date earliest = start - std::chrono::days{static_cast<long>(age_years) * 52 * 7};
  const auto all = store.matches();
  const auto by_date = [](const MatchRecord& m, Date d) { return m.date < d; };
  auto first = std::lower_bound(all.begin(), all.end(), earliest, by_date);
  const auto last = std::lower_bound(all.begin(), all.end(), start, by_date);
  std::vector<const MatchRecord*> out;
  for (; first != last; ++first) {
    if (first->completed) out.push_back(&*first);
  }
  return out;
}

}  // namespace courtrank
