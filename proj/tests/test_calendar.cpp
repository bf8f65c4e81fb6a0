#include <catch_amalgamated.hpp>

#include "courtrank/core.hpp"
#include "courtrank/ini.hpp"

#include <sstream>

using namespace courtrank;

TEST_CASE("ISO weeks at year boundaries", "[dataset]") {
  const auto w1 = iso_week(parse_iso_date("2005-01-01"));  // Saturday
  CHECK(w1.year == 2004);
  CHECK(w1.week == 53);
  const auto w2 = iso_week(parse_iso_date("2008-12-29"));  // Monday
  CHECK(w2.year == 2009);
  CHECK(w2.week == 1);
  const auto w3 = iso_week(parse_iso_date("2013-06-24"));
  CHECK(w3.year == 2013);
  CHECK(w3.week == 26);
  CHECK(calendar_year(parse_iso_date("2008-12-29")) == 2008);
}

TEST_CASE("years_between counts 52-week years", "[dataset]") {
  const Date a = parse_iso_date("2010-01-04");
  CHECK(years_between(a, a) == 0.0);
  CHECK(years_between(a, a + std::chrono::days{364}) == 1.0);
  CHECK(years_between(a, a + std::chrono::days{7 * 26}) == 0.5);
}

TEST_CASE("dates and enum labels round-trip", "[dataset]") {
  CHECK(format_date(parse_iso_date("2007-03-09")) == "2007-03-09");
  CHECK_THROWS_AS(parse_iso_date("2007-02-30"), InputError);
  CHECK_THROWS_AS(parse_iso_date("07-03-09"), InputError);
  for (Surface s : kAllSurfaces) CHECK(parse_surface(to_string(s)) == s);
  for (Category c : kAllCategories) CHECK(parse_category(to_string(c)) == c);
  CHECK(parse_round("qf") == Round::QF);
  CHECK_FALSE(parse_round("Quarterfinals").has_value());
}

TEST_CASE("INI reader", "[dataset]") {
  std::istringstream in("# comment\n[a]\nkey one = 1\n; other\n[b]\nx=y\n");
  const auto doc = parse_ini(in, "mem");
  REQUIRE(doc.sections.size() == 3);
  REQUIRE(doc.find("a"));
  CHECK(doc.find("a")->get("key one") == "1");
  CHECK(doc.find("b")->get("x") == "y");
  CHECK_FALSE(doc.find("c"));

  std::istringstream dup_key("[a]\nk=1\nk=2\n");
  CHECK_THROWS_AS(parse_ini(dup_key, "mem"), InputError);
  std::istringstream dup_section("[a]\n[a]\n");
  CHECK_THROWS_AS(parse_ini(dup_section, "mem"), InputError);
}
