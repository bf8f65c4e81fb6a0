#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "courtrank/dataset.hpp"
#include "synthetic.hpp"

using namespace courtrank;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("courtrank_store_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("store save and load round-trip byte for byte", "[dataset]") {
  testing::SyntheticSpec spec;
  spec.seed = 3;
  const auto store = testing::make_synthetic(spec).store;
  const auto a = scratch("a");
  const auto b = scratch("b");
  store.save(a);
  const auto loaded = MatchStore::load(a);
  loaded.save(b);
  for (const char* f : {"players.tsv", "tournaments.tsv", "matches.tsv"}) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  REQUIRE(loaded.matches().size() == store.matches().size());
  for (std::size_t i = 0; i < store.matches().size(); ++i) {
    const auto& x = store.matches()[i];
    const auto& y = loaded.matches()[i];
    CHECK(x.id == y.id);
    CHECK(x.date == y.date);
    CHECK(x.sets == y.sets);
    CHECK(x.official_rank_loser == y.official_rank_loser);
  }
}

TEST_CASE("load rejects a foreign header", "[dataset]") {
  const auto dir = scratch("bad");
  testing::make_synthetic({}).store.save(dir);
  std::ofstream(dir / "players.tsv") << "who\tname\n1\tX\n";
  CHECK_THROWS_AS(MatchStore::load(dir), InputError);
  CHECK_THROWS_AS(MatchStore::load(dir / "missing"), InputError);
}

TEST_CASE("query_window honours both boundaries", "[dataset]") {
  testing::StoreBuilder b;
  const auto old = b.tournament("Old", Surface::Clay, Category::ATP250);
  b.match(old, Round::QF, "2009-01-04", "Edge B.", "Out C.");  // start - 365 days
  b.match(old, Round::SF, "2009-01-05", "Edge B.", "In D.");   // start - 364 days
  const auto late = b.tournament("Late", Surface::Hard, Category::ATP500);
  b.match(late, Round::SF, "2010-01-02", "In D.", "Out C.", 3, 4, false);  // retired
  b.match(late, Round::F, "2010-01-03", "In D.", "Edge B.");
  const auto same = b.tournament("Same Week", Surface::Hard, Category::ATP250);
  b.match(same, Round::F, "2010-01-04", "Out C.", "In D.");
  const auto target = b.tournament("Target", Surface::Hard, Category::ATP250);
  b.match(target, Round::QF, "2010-01-04", "Edge B.", "In D.");
  b.match(target, Round::F, "2010-01-06", "Edge B.", "Out C.");
  const auto store = b.build();

  const auto window = query_window(store, target, 1);
  std::vector<std::string> dates;
  for (const MatchRecord* m : window) dates.push_back(format_date(m->date));
  CHECK(dates == std::vector<std::string>{"2009-01-05", "2010-01-03"});

  CHECK(query_window(store, target, 2).size() == 3);
  CHECK(query_window(store, old, 3).empty());
  CHECK_THROWS_AS(query_window(store, target, 0), InputError);
}

TEST_CASE("store lookups", "[dataset]") {
  testing::StoreBuilder b;
  const auto t = b.tournament("Paris Masters", Surface::Hard, Category::Masters1000);
  b.match(t, Round::SF, "2008-10-31", "Tsonga J.W.", "Blake J.");
  b.match(t, Round::F, "2008-11-02", "Tsonga J.W.", "Nalbandian D.");
  const auto store = b.build();
  CHECK(store.find_tournament("PARIS MASTERS", 2008) == t);
  CHECK_FALSE(store.find_tournament("Paris Masters", 2009));
  CHECK(store.find_player("Tsonga J.W.").has_value());
  CHECK(format_date(store.start_date(t)) == "2008-10-31");
  CHECK(store.tournament(t).week == 44);
  CHECK(store.tournaments_in_week(2008, 44) == std::vector<TournamentId>{t});
  CHECK(store.matches_of(t).size() == 2);
  CHECK_THROWS_AS(store.player(PlayerId{99}), InputError);
}

TEST_CASE("assemble enforces store invariants", "[dataset]") {
  const auto base_players = std::vector<Player>{{PlayerId{1}, "A B."}, {PlayerId{2}, "C D."}};
  Tournament t;
  t.id = TournamentId{1};
  t.name = "T";
  t.year = 2008;
  t.week = 10;
  MatchRecord m;
  m.id = MatchId{1};
  m.tournament = t.id;
  m.round = Round::F;
  m.date = parse_iso_date("2008-03-03");
  m.winner = PlayerId{1};
  m.loser = PlayerId{2};
  m.sets = {{6, 1}, {6, 2}};
  m.completed = true;
  CHECK_NOTHROW(MatchStore::assemble(base_players, {t}, {m}));

  SECTION("sparse player ids") {
    auto players = base_players;
    players[1].id = PlayerId{5};
    m.loser = PlayerId{5};
    CHECK_THROWS_AS(MatchStore::assemble(players, {t}, {m}), IntegrityError);
  }
  SECTION("self match") {
    m.loser = PlayerId{1};
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t}, {m}), IntegrityError);
  }
  SECTION("unknown player") {
    m.loser = PlayerId{3};
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t}, {m}), IntegrityError);
  }
  SECTION("completed without enough sets") {
    m.sets = {{6, 1}};
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t}, {m}), IntegrityError);
  }
  SECTION("non-positive rank") {
    m.official_rank_winner = 0;
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t}, {m}), IntegrityError);
  }
  SECTION("tournament without matches") {
    Tournament u = t;
    u.id = TournamentId{2};
    u.name = "U";
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t, u}, {m}), IntegrityError);
  }
  SECTION("bad best_of") {
    t.best_of = 4;
    CHECK_THROWS_AS(MatchStore::assemble(base_players, {t}, {m}), IntegrityError);
  }
}
