#include <catch_amalgamated.hpp>

#include <cmath>

#include "courtrank/ranking.hpp"
#include "synthetic.hpp"

using namespace courtrank;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("weight factors at reference points", "[ranking]") {
  WeightParams p;  // age 4, decay 5, surface 0.3, round 1.7
  CHECK_THAT(aging_weight(1.0, p), WithinRel(0.006737947, 1e-7));
  WeightParams slow = p;
  slow.decay_lambda = 0.2;
  CHECK_THAT(aging_weight(1.0, slow), WithinRel(0.818730753, 1e-9));
  CHECK(aging_weight(0.0, p) == 1.0);

  CHECK_THAT(instance_weight(4, p), WithinRel(0.2035416243, 1e-9));
  CHECK(instance_weight(1, p) == 1.0);
  WeightParams two = p;
  two.round_base = 2.0;
  CHECK(instance_weight(2, two) == 0.5);

  CHECK(surface_weight(Surface::Clay, Surface::Clay, p) == 1.0);
  CHECK(surface_weight(Surface::Clay, Surface::Grass, p) == 0.3);
  WeightParams flat = p;
  flat.surface_factor = 0.0;
  CHECK(surface_weight(Surface::Clay, Surface::Grass, flat) == kMinSurfaceWeight);
}

TEST_CASE("edge weight multiplies the three factors", "[ranking]") {
  testing::StoreBuilder b;
  const auto old = b.tournament("Rome", Surface::Clay, Category::Masters1000);
  b.match(old, Round::F, "2009-01-05", "Nadal R.", "Federer R.");
  const auto target = b.tournament("Target", Surface::Hard, Category::ATP250);
  b.match(target, Round::F, "2010-01-04", "Nadal R.", "Federer R.");
  const auto store = b.build();

  const auto& m = store.matches()[0];
  const auto edge = edge_weight(m, store.tournament(old), target_context(store, target), WeightParams{});
  CHECK(edge.from == m.loser);
  CHECK(edge.to == m.winner);
  CHECK_THAT(edge.weight, WithinRel(std::exp(-5.0) * 0.3 / 1.7, 1e-12));
  CHECK_THAT(edge.weight, WithinRel(0.0011890495, 1e-7));

  const auto unit = edge_weight(m, store.tournament(old), target_context(store, target), WeightParams::identity(4));
  CHECK(unit.weight == 1.0);
}

TEST_CASE("round ladder", "[ranking]") {
  CHECK(round_value(Category::GrandSlam, Round::F) == 1);
  CHECK(round_value(Category::GrandSlam, Round::R128) == 7);
  CHECK(round_value(Category::Masters1000, Round::F) == 2);
  CHECK(round_value(Category::ATP500, Round::F) == 3);
  CHECK(round_value(Category::ATP250, Round::F) == 4);
  CHECK(round_value(Category::ATP250, Round::QF) == 6);
  CHECK(round_value(Category::MastersCup, Round::F) == 2);
  CHECK(round_value(Category::MastersCup, Round::SF) == 3);
  CHECK(round_value(Category::MastersCup, Round::RR) == 4);
  // Deeper rounds never weigh more than shallower ones in the same event.
  for (Category c : kAllCategories) {
    for (int r = 0; r + 1 < 7; ++r) {
      CHECK(round_value(c, static_cast<Round>(r)) >= round_value(c, static_cast<Round>(r + 1)));
    }
  }
}

TEST_CASE("weight parameters parse and validate", "[ranking]") {
  const auto p = parse_weight_params("age=3, decay=0.2,surface=0.5,round=1.3");
  CHECK(p.age_years == 3);
  CHECK(p.decay_lambda == 0.2);
  CHECK(p.surface_factor == 0.5);
  CHECK(p.round_base == 1.3);
  CHECK(format_weight_params(p) == "age=3,decay=0.2,surface=0.5,round=1.3");
  CHECK(parse_weight_params("round=2").age_years == WeightParams{}.age_years);
  CHECK_THROWS_AS(parse_weight_params("age=0"), InputError);
  CHECK_THROWS_AS(parse_weight_params("age=2.5"), InputError);
  CHECK_THROWS_AS(parse_weight_params("decay=-1"), InputError);
  CHECK_THROWS_AS(parse_weight_params("surface=1.5"), InputError);
  CHECK_THROWS_AS(parse_weight_params("round=0.9"), InputError);
  CHECK_THROWS_AS(parse_weight_params("speed=1"), InputError);
  CHECK_THROWS_AS(parse_weight_params("age"), InputError);
  CHECK_NOTHROW(WeightParams::identity(2).validate());
}
