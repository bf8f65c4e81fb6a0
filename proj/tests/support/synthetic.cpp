#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace courtrank::testing {

namespace {

constexpr const char* kStems[] = {"Bar", "Cal", "Dor", "Fen", "Gal", "Har", "Kor", "Lan",
                                  "Mor", "Nol", "Par", "Ros", "Sol", "Tor", "Val", "Wen"};
constexpr const char* kEndings[] = {"a", "ek", "in", "ov", "ez", "ant", "us", "ier"};

constexpr Category kCategoryCycle[] = {Category::ATP250,      Category::ATP500, Category::Masters1000,
                                       Category::GrandSlam,   Category::ATP250, Category::Masters1000,
                                       Category::ATP500,      Category::MastersCup};
constexpr Surface kSurfaceCycle[] = {Surface::Hard, Surface::Clay, Surface::Grass, Surface::Hard};

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::vector<SetScore> completed_score(std::mt19937_64& rng, int best_of) {
  const int needed = (best_of + 1) / 2;
  const int lost = static_cast<int>(rng() % static_cast<unsigned>(needed));
  std::vector<SetScore> sets;
  for (int i = 0; i < lost; ++i) sets.push_back({static_cast<int>(rng() % 5), 6});
  for (int i = 0; i < needed; ++i) sets.push_back({6, static_cast<int>(rng() % 5)});
  std::shuffle(sets.begin(), sets.end() - 1, rng);  // the deciding set stays last
  return sets;
}

}  // namespace

std::string synthetic_name(int index) {
  std::string surname = std::string(kStems[index % 16]) + kEndings[(index / 16) % 8];
  if (index >= 128) surname += kStems[(index / 128) % 16];
  std::transform(surname.begin() + 1, surname.end(), surname.begin() + 1,
                 [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); });
  return surname + " " + static_cast<char>('A' + (index * 7) % 26) + ".";
}

Date iso_monday(int year, unsigned week) {
  using namespace std::chrono;
  const sys_days jan4{std::chrono::year{year} / January / 4};
  const unsigned wd = weekday{jan4}.iso_encoding();
  return jan4 - days{wd - 1} + weeks{week - 1};
}

SyntheticSeason make_synthetic(const SyntheticSpec& spec) {
  if (spec.draw != 8 && spec.draw != 16 && spec.draw != 32) throw std::invalid_argument("draw must be 8, 16 or 32");
  if (spec.players < spec.draw) throw std::invalid_argument("fewer players than draw slots");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, spec.spread);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SyntheticSeason season;
  std::vector<Player> players;
  for (int i = 0; i < spec.players; ++i) {
    players.push_back(Player{PlayerId{i + 1}, synthetic_name(i)});
    season.strength.push_back(std::exp(gauss(rng)));
  }
  std::vector<int> by_strength(static_cast<std::size_t>(spec.players));
  std::iota(by_strength.begin(), by_strength.end(), 0);
  std::stable_sort(by_strength.begin(), by_strength.end(),
                   [&](int a, int b) { return season.strength[a] > season.strength[b]; });
  std::vector<int> official(static_cast<std::size_t>(spec.players));
  for (std::size_t pos = 0; pos < by_strength.size(); ++pos) official[by_strength[pos]] = static_cast<int>(pos + 1);

  std::vector<Round> rounds;
  if (spec.draw >= 32) rounds.push_back(Round::R32);
  if (spec.draw >= 16) rounds.push_back(Round::R16);
  rounds.insert(rounds.end(), {Round::QF, Round::SF, Round::F});

  std::vector<Tournament> tournaments;
  std::vector<MatchRecord> matches;
  const int spacing = std::max(1, 48 / spec.tournaments_per_year);
  for (int y = 0; y < spec.years; ++y) {
    const int year = spec.first_year + y;
    for (int k = 0; k < spec.tournaments_per_year; ++k) {
      Tournament t;
      t.id = TournamentId{static_cast<std::int32_t>(tournaments.size() + 1)};
      t.name = "Open " + std::to_string(k + 1);
      t.year = year;
      t.week = static_cast<unsigned>(std::min(50, 2 + k * spacing));
      t.surface = kSurfaceCycle[k % 4];
      t.category = kCategoryCycle[k % 8];
      t.best_of = t.category == Category::GrandSlam ? 5 : 3;
      t.location = "City " + std::to_string(k + 1);
      tournaments.push_back(t);

      const Date monday = iso_monday(year, t.week);
      std::vector<int> field(static_cast<std::size_t>(spec.players));
      std::iota(field.begin(), field.end(), 0);
      for (std::size_t i = field.size(); i > 1; --i) std::swap(field[i - 1], field[draw_index(rng, i)]);
      field.resize(static_cast<std::size_t>(spec.draw));

      for (std::size_t r = 0; r < rounds.size(); ++r) {
        std::vector<int> next;
        for (std::size_t i = 0; i + 1 < field.size(); i += 2) {
          const int a = field[i];
          const int b = field[i + 1];
          const double pa = season.strength[a] / (season.strength[a] + season.strength[b]);
          const bool a_wins = unit(rng) < pa;
          const int w = a_wins ? a : b;
          const int l = a_wins ? b : a;
          MatchRecord m;
          m.id = MatchId{static_cast<std::int32_t>(matches.size() + 1)};
          m.tournament = t.id;
          m.round = rounds[r];
          m.date = monday + std::chrono::days{static_cast<int>(r)};
          m.winner = PlayerId{w + 1};
          m.loser = PlayerId{l + 1};
          if (unit(rng) >= spec.unranked_rate) m.official_rank_winner = official[w];
          if (unit(rng) >= spec.unranked_rate) m.official_rank_loser = official[l];
          if (unit(rng) < spec.retire_rate) {
            m.sets = {SetScore{6, static_cast<int>(rng() % 5)}, SetScore{1, 2}};
            m.completed = false;
          } else {
            m.sets = completed_score(rng, t.best_of);
            m.completed = true;
          }
          matches.push_back(std::move(m));
          next.push_back(w);
        }
        field = std::move(next);
      }
    }
  }
  season.store = MatchStore::assemble(std::move(players), std::move(tournaments), std::move(matches));
  return season;
}

PlayerId StoreBuilder::player(const std::string& canonical_name) {
  for (const auto& p : players_) {
    if (p.canonical_name == canonical_name) return p.id;
  }
  players_.push_back(Player{PlayerId{static_cast<std::int32_t>(players_.size() + 1)}, canonical_name});
  return players_.back().id;
}

TournamentId StoreBuilder::tournament(const std::string& name, Surface surface, Category category, int best_of) {
  Tournament t;
  t.id = TournamentId{static_cast<std::int32_t>(tournaments_.size() + 1)};
  t.name = name;
  t.surface = surface;
  t.category = category;
  t.best_of = best_of;
  tournaments_.push_back(t);
  return t.id;
}

MatchId StoreBuilder::match(TournamentId t, Round round, const std::string& date, const std::string& winner,
                            const std::string& loser, std::optional<int> rank_winner,
                            std::optional<int> rank_loser, bool completed) {
  Tournament& tour = tournaments_.at(static_cast<std::size_t>(static_cast<int>(t) - 1));
  MatchRecord m;
  m.id = MatchId{static_cast<std::int32_t>(matches_.size() + 1)};
  m.tournament = t;
  m.round = round;
  m.date = parse_iso_date(date);
  m.winner = player(winner);
  m.loser = player(loser);
  m.official_rank_winner = rank_winner;
  m.official_rank_loser = rank_loser;
  m.completed = completed;
  const int needed = (tour.best_of + 1) / 2;
  for (int i = 0; i < (completed ? needed : 1); ++i) m.sets.push_back(SetScore{6, 2});
  matches_.push_back(std::move(m));
  return matches_.back().id;
}

MatchStore StoreBuilder::build() const {
  // Year and week come from the earliest match of each tournament.
  std::vector<Tournament> tournaments = tournaments_;
  for (auto& t : tournaments) {
    Date first = Date::max();
    for (const auto& m : matches_) {
      if (m.tournament == t.id) first = std::min(first, m.date);
    }
    if (first != Date::max()) {
      const auto wk = iso_week(first);
      t.year = wk.year;
      t.week = wk.week;
    }
  }
  return MatchStore::assemble(players_, std::move(tournaments), matches_);
}

std::string columns_ini() {
  return "[layout synthetic]\n"
         "date = Date\ntournament = Tournament\nseries = Series\nsurface = Surface\ncourt = Court\n"
         "round = Round\nbest_of = Best of\nwinner = Winner\nloser = Loser\n"
         "winner_rank = WRank\nloser_rank = LRank\n"
         "w1 = W1\nl1 = L1\nw2 = W2\nl2 = L2\nw3 = W3\nl3 = L3\nw4 = W4\nl4 = L4\nw5 = W5\nl5 = L5\n"
         "comment = Comment\nlocation = Location\ndate_order = ymd\n\n"
         "[status]\ncompleted = Completed\nindoor = Indoor\n";
}

void write_season_csv(const MatchStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::map<int, std::ofstream> files;
  for (const auto& m : store.matches()) {
    const Tournament& t = store.tournament(m.tournament);
    auto it = files.find(t.year);
    if (it == files.end()) {
      it = files.emplace(t.year, std::ofstream(dir / ("season_" + std::to_string(t.year) + ".csv"), std::ios::binary))
               .first;
      it->second << "Location,Tournament,Date,Series,Court,Surface,Round,Best of,Winner,Loser,WRank,LRank,"
                    "W1,L1,W2,L2,W3,L3,W4,L4,W5,L5,Comment\n";
    }
    auto& out = it->second;
    out << t.location << ',' << t.name << ',' << format_date(m.date) << ',' << to_string(t.category) << ','
        << (t.indoor ? "Indoor" : "Outdoor") << ',' << to_string(t.surface) << ',' << to_string(m.round) << ','
        << t.best_of << ',' << store.player(m.winner).canonical_name << ','
        << store.player(m.loser).canonical_name << ',';
    out << (m.official_rank_winner ? std::to_string(*m.official_rank_winner) : "N/A") << ','
        << (m.official_rank_loser ? std::to_string(*m.official_rank_loser) : "N/A");
    for (std::size_t s = 0; s < 5; ++s) {
      if (s < m.sets.size()) {
        out << ',' << m.sets[s].games_winner << ',' << m.sets[s].games_loser;
      } else {
        out << ",,";
      }
    }
    out << ',' << (m.completed ? "Completed" : "Retired") << '\n';
  }
}

}  // namespace courtrank::testing
