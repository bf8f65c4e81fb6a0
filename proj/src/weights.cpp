#include <algorithm>
#include <cmath>

#include "courtrank/ranking.hpp"
#include "text.hpp"

namespace courtrank {

WeightParams WeightParams::identity(int age_years) {
  WeightParams p;
  p.age_years = age_years;
  p.decay_lambda = 0.0;
  p.surface_factor = 1.0;
  p.round_base = 1.0;
  return p;
}

void WeightParams::validate() const {
  if (age_years < 1) throw InputError("age_years must be >= 1");
  if (!(decay_lambda >= 0.0) || !std::isfinite(decay_lambda))
    throw InputError("decay_lambda must be a finite non-negative magnitude");
  if (!(surface_factor >= 0.0 && surface_factor <= 1.0))
    throw InputError("surface_factor must lie in [0, 1]");
  if (!(round_base >= 1.0) || !std::isfinite(round_base)) throw InputError("round_base must be >= 1");
  if (decay_amplitude != 1.0) throw InputError("decay_amplitude is fixed at 1");
}

WeightParams parse_weight_params(std::string_view spec, WeightParams base) {
  for (auto item : text::split(spec, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("bad parameter '" + std::string(item) + "' (expected key=value)");
    const std::string key = text::lower(text::trim(item.substr(0, eq)));
    const auto value = text::parse_double(item.substr(eq + 1));
    if (!value) throw InputError("bad numeric value in '" + std::string(item) + "'");
    if (key == "age") {
      if (*value != std::floor(*value)) throw InputError("age must be a whole number of years");
      base.age_years = static_cast<int>(*value);
    } else if (key == "decay") {
      base.decay_lambda = *value;
    } else if (key == "surface") {
      base.surface_factor = *value;
    } else if (key == "round") {
      base.round_base = *value;
    } else {
      throw InputError("unknown parameter '" + key + "' (expected age, decay, surface, round)");
    }
  }
  base.validate();
  return base;
}

std::string format_weight_params(const WeightParams& p) {
  return "age=" + std::to_string(p.age_years) + ",decay=" + text::format_double(p.decay_lambda) +
         ",surface=" + text::format_double(p.surface_factor) +
         ",round=" + text::format_double(p.round_base);
}

int round_value(Category category, Round round) {
  int depth = 0;
  switch (round) {
    case Round::F: depth = 0; break;
    case Round::SF: depth = 1; break;
    case Round::QF: depth = 2; break;
    case Round::R16: depth = 3; break;
    case Round::R32: depth = 4; break;
    case Round::R64: depth = 5; break;
    case Round::R128: depth = 6; break;
    case Round::RR: depth = 4; break;  // group stage outside the Masters Cup sits at first-round level
  }
  switch (category) {
    case Category::GrandSlam: return 1 + depth;
    case Category::Masters1000: return 2 + depth;
    case Category::ATP500: return 3 + depth;
    case Category::ATP250: return 4 + depth;
    case Category::MastersCup: return round == Round::RR ? 4 : 2 + depth;
  }
  return 4 + depth;
}

double aging_weight(double t_years, const WeightParams& p) {
  return p.decay_amplitude * std::exp(-p.decay_lambda * t_years);
}

double surface_weight(Surface match_surface, Surface target_surface, const WeightParams& p) {
  if (match_surface == target_surface) return 1.0;
  return std::max(p.surface_factor, kMinSurfaceWeight);
}

double instance_weight(int round_value, const WeightParams& p) {
  return std::pow(p.round_base, -static_cast<double>(round_value - 1));
}

TargetContext target_context(const MatchStore& store, TournamentId target) {
  const Tournament& t = store.tournament(target);
  return TargetContext{t.id, t.surface, store.start_date(target)};
}

WeightedEdge edge_weight(const MatchRecord& match, const Tournament& played_at,
                         const TargetContext& target, const WeightParams& p) {
  const double t = std::max(0.0, years_between(match.date, target.start));
  const double w = aging_weight(t, p) * surface_weight(played_at.surface, target.surface, p) *
                   instance_weight(round_value(played_at.category, match.round), p);
  return WeightedEdge{match.loser, match.winner, w, match.id};
}

}  // namespace courtrank
