#include "run_config.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "text.hpp"

namespace courtrank::cli {

namespace {

long long to_int(const std::string& where, std::string_view v) {
  const auto n = text::parse_int(v);
  if (!n) throw UsageError(where + ": expected an integer, got '" + std::string(v) + "'");
  return *n;
}

double to_real(const std::string& where, std::string_view v) {
  const auto x = text::parse_double(v);
  if (!x) throw UsageError(where + ": expected a number, got '" + std::string(v) + "'");
  return *x;
}

bool to_bool(const std::string& where, std::string_view v) {
  const auto t = text::lower(text::trim(v));
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw UsageError(where + ": expected true/false, got '" + std::string(v) + "'");
}

}  // namespace

std::vector<int> parse_year_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : text::split(text, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto dash = item.find('-', 1);
    const auto first = to_int("years", item.substr(0, dash));
    const auto last = dash == std::string_view::npos ? first : to_int("years", item.substr(dash + 1));
    if (last < first || last - first > 1000) throw UsageError("bad year range '" + std::string(item) + "'");
    for (auto y = first; y <= last; ++y) out.push_back(static_cast<int>(y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<SliceKind> parse_slice_list(std::string_view text) {
  std::set<SliceKind> out;
  for (auto item : text::split(text, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto k = parse_slice_kind(item);
    if (!k) throw UsageError("unknown slice '" + std::string(item) + "' (year, surface, category, rank_band)");
    out.insert(*k);
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : text::split(text, ',')) {
    item = text::trim(item);
    if (!item.empty()) out.push_back(to_real("grid", item));
  }
  return out;
}

RunConfig RunConfig::from_ini(const IniDocument& doc, const std::filesystem::path& base_dir) {
  RunConfig c;
  const auto path = [&](const std::string& v) {
    std::filesystem::path p(v);
    return p.is_absolute() ? p : base_dir / p;
  };
  using Setter = std::function<void(const std::string& where, const std::string& value)>;
  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"paths",
       {{"store", [&](auto&, auto& v) { c.store = path(v); }},
        {"raw", [&](auto&, auto& v) { c.raw_dir = path(v); }},
        {"columns", [&](auto&, auto& v) { c.column_map = path(v); }},
        {"out", [&](auto&, auto& v) { c.out_dir = path(v); }}}},
      {"evaluate",
       {{"years", [&](auto&, auto& v) { c.years = parse_year_list(v); }},
        {"slices", [&](auto&, auto& v) { c.slices = parse_slice_list(v); }},
        {"threads", [&](auto& w, auto& v) { c.threads = static_cast<unsigned>(to_int(w, v)); }}}},
      {"predictor",
       {{"kind",
         [&](auto& w, auto& v) {
           const auto k = parse_predictor_kind(v);
           if (!k) throw UsageError(w + ": unknown predictor '" + v + "'");
           c.kind = *k;
         }},
        {"age", [&](auto& w, auto& v) { c.params.age_years = static_cast<int>(to_int(w, v)); }},
        {"decay", [&](auto& w, auto& v) { c.params.decay_lambda = to_real(w, v); }},
        {"surface", [&](auto& w, auto& v) { c.params.surface_factor = to_real(w, v); }},
        {"round", [&](auto& w, auto& v) { c.params.round_base = to_real(w, v); }},
        {"uniform_age", [&](auto& w, auto& v) { c.uniform_age = static_cast<int>(to_int(w, v)); }},
        {"damping", [&](auto& w, auto& v) { c.pagerank.damping = to_real(w, v); }},
        {"tolerance", [&](auto& w, auto& v) { c.pagerank.tolerance = to_real(w, v); }},
        {"max_iterations",
         [&](auto& w, auto& v) { c.pagerank.max_iterations = static_cast<int>(to_int(w, v)); }}}},
      {"search",
       {{"seed", [&](auto& w, auto& v) { c.seed = static_cast<std::uint64_t>(to_int(w, v)); }},
        {"per_year", [&](auto& w, auto& v) { c.per_year = static_cast<int>(to_int(w, v)); }},
        {"years", [&](auto&, auto& v) { c.search_years = parse_year_list(v); }},
        {"max_rounds", [&](auto& w, auto& v) { c.max_rounds = static_cast<int>(to_int(w, v)); }},
        {"init", [&](auto&, auto& v) { c.search_init = parse_weight_params(v, c.search_init); }},
        {"grid_years",
         [&](auto&, auto& v) {
           c.grid.years.clear();
           for (double x : parse_real_list(v)) c.grid.years.push_back(static_cast<int>(x));
         }},
        {"grid_decay", [&](auto&, auto& v) { c.grid.decay = parse_real_list(v); }},
        {"grid_surface", [&](auto&, auto& v) { c.grid.surface = parse_real_list(v); }},
        {"grid_round", [&](auto&, auto& v) { c.grid.round_base = parse_real_list(v); }}}},
      {"prob",
       {{"min_bin_total", [&](auto& w, auto& v) { c.fit.min_bin_total = to_int(w, v); }},
        {"leaf_threshold", [&](auto& w, auto& v) { c.leaf_threshold = to_int(w, v); }},
        {"a_min", [&](auto& w, auto& v) { c.fit.a_min = to_real(w, v); }},
        {"a_max", [&](auto& w, auto& v) { c.fit.a_max = to_real(w, v); }},
        {"mirrored", [&](auto& w, auto& v) { c.mirrored = to_bool(w, v); }}}},
  };

  for (const auto& section : doc.sections) {
    const std::string at = doc.source + ":" + std::to_string(section.line);
    const auto s = schema.find(section.name);
    if (s == schema.end()) {
      if (section.name.empty() && section.entries.empty()) continue;
      throw UsageError(at + ": unknown section [" + section.name + "]");
    }
    for (const auto& [key, value] : section.entries) {
      const auto k = s->second.find(key);
      if (k == s->second.end()) throw UsageError(at + ": unknown key '" + key + "' in [" + section.name + "]");
      try {
        k->second("[" + section.name + "] " + key, value);
      } catch (const UsageError&) {
        throw;
      } catch (const Error& e) {
        throw UsageError(at + ": " + e.what());
      }
    }
  }
  try {
    c.params.validate();
    c.search_init.validate();
    c.pagerank.validate();
    c.grid.validate();
    WeightParams::identity(c.uniform_age).validate();
  } catch (const InputError& e) {
    throw UsageError(doc.source + ": " + e.what());
  }
  if (c.per_year < 1) throw UsageError(doc.source + ": per_year must be >= 1");
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("config file not found: " + path.string());
  const auto doc = load_ini(path);
  return from_ini(doc, path.parent_path());
}

Predictor RunConfig::predictor(PredictorKind k) const {
  switch (k) {
    case PredictorKind::OfficialRank: return Predictor::official();
    case PredictorKind::UniformPageRank: return Predictor::uniform(uniform_age, pagerank);
    case PredictorKind::ParametricPageRank: return Predictor::parametric(params, pagerank);
  }
  return Predictor::official();
}

}  // namespace courtrank::cli
