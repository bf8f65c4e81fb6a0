#include "courtrank/core.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace courtrank {

namespace {

constexpr std::array<std::string_view, 3> kSurfaceNames = {"Hard", "Clay", "Grass"};
constexpr std::array<std::string_view, 5> kCategoryNames = {"ATP250", "ATP500", "Masters1000",
                                                            "GrandSlam", "MastersCup"};
constexpr std::array<std::string_view, 8> kRoundNames = {"R128", "R64", "R32", "R16",
                                                         "QF",   "SF",  "F",   "RR"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view text) {
  for (std::size_t i = 0; i < N; ++i) {
    if (iequals(names[i], text)) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

int parse_int_field(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InputError("malformed date '" + std::string(whole) + "'");
  return value;
}

}  // namespace

std::string_view to_string(Surface s) { return kSurfaceNames.at(static_cast<std::size_t>(s)); }
std::string_view to_string(Category c) { return kCategoryNames.at(static_cast<std::size_t>(c)); }
std::string_view to_string(Round r) { return kRoundNames.at(static_cast<std::size_t>(r)); }

std::optional<Surface> parse_surface(std::string_view text) {
  return lookup<Surface>(kSurfaceNames, text);
}
std::optional<Category> parse_category(std::string_view text) {
  return lookup<Category>(kCategoryNames, text);
}
std::optional<Round> parse_round(std::string_view text) {
  return lookup<Round>(kRoundNames, text);
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw InputError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  const int y = parse_int_field(text.substr(0, 4), text);
  const int m = parse_int_field(text.substr(5, 2), text);
  const int d = parse_int_field(text.substr(8, 2), text);
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw InputError("invalid calendar date '" + std::string(text) + "'");
  return Date{ymd};
}

IsoWeek iso_week(Date d) {
  using namespace std::chrono;
  // The ISO week belongs to the year containing its Thursday.
  const unsigned iso_dow = weekday{d}.iso_encoding();  // Mon=1 .. Sun=7
  const Date thursday = d + days{4 - static_cast<int>(iso_dow)};
  const year_month_day thu{thursday};
  const Date jan1 = sys_days{thu.year() / January / 1};
  const auto week = static_cast<unsigned>((thursday - jan1).count() / 7 + 1);
  return {static_cast<int>(thu.year()), week};
}

int calendar_year(Date d) { return static_cast<int>(std::chrono::year_month_day{d}.year()); }

double years_between(Date earlier, Date later) {
  const double weeks = static_cast<double>((later - earlier).count()) / 7.0;
  return weeks / 52.0;
}

}  // namespace courtrank
