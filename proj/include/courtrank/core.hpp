#pragma once

// Shared vocabulary: entity ids, closed enums, calendar dates and the error
// hierarchy used across the library.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace courtrank {

enum class PlayerId : std::int32_t {};
enum class TournamentId : std::int32_t {};
enum class MatchId : std::int32_t {};

constexpr std::int32_t raw(PlayerId id) { return static_cast<std::int32_t>(id); }
constexpr std::int32_t raw(TournamentId id) { return static_cast<std::int32_t>(id); }
constexpr std::int32_t raw(MatchId id) { return static_cast<std::int32_t>(id); }

enum class Surface { Hard, Clay, Grass };
enum class Category { ATP250, ATP500, Masters1000, GrandSlam, MastersCup };
enum class Round { R128, R64, R32, R16, QF, SF, F, RR };

inline constexpr Surface kAllSurfaces[] = {Surface::Hard, Surface::Clay, Surface::Grass};
inline constexpr Category kAllCategories[] = {Category::ATP250, Category::ATP500,
                                              Category::Masters1000, Category::GrandSlam,
                                              Category::MastersCup};

std::string_view to_string(Surface s);
std::string_view to_string(Category c);
std::string_view to_string(Round r);

// Exact (case-insensitive) enum labels as written by to_string.
std::optional<Surface> parse_surface(std::string_view text);
std::optional<Category> parse_category(std::string_view text);
std::optional<Round> parse_round(std::string_view text);

using Date = std::chrono::sys_days;

// YYYY-MM-DD.
std::string format_date(Date d);
Date parse_iso_date(std::string_view text);

struct IsoWeek {
  int year;
  unsigned week;  // 1..53
};

IsoWeek iso_week(Date d);
int calendar_year(Date d);

// Fractional years between two dates, measured as week difference / 52.
double years_between(Date earlier, Date later);

// Library error types. The CLI maps each class to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: unreadable files, unmapped layouts, unknown labels, bad
// configuration values.
class InputError : public Error {
 public:
  using Error::Error;
};

// Two known players match a name variant; never merged silently.
class AmbiguityError : public InputError {
 public:
  using InputError::InputError;
};

// A store that violates its referential or domain invariants.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Power iteration hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Two independent computations of the same quantity disagreed.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace courtrank
