#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "courtrank/dataset.hpp"
#include "text.hpp"

namespace courtrank {

namespace {

constexpr std::string_view kFieldKeys[kFieldCount] = {
    "date",       "tournament", "series", "surface", "court",       "round",
    "best_of",    "winner",     "loser",  "winner_rank", "loser_rank",
    "w1", "l1", "w2", "l2", "w3", "l3", "w4", "l4", "w5", "l5",
    "comment",    "odds_winner", "odds_loser", "location"};

constexpr Field kRequired[] = {Field::Date,  Field::Tournament, Field::Series, Field::Surface,
                               Field::Round, Field::Winner,     Field::Loser};

constexpr Field kSetFields[5][2] = {{Field::W1, Field::L1}, {Field::W2, Field::L2},
                                    {Field::W3, Field::L3}, {Field::W4, Field::L4},
                                    {Field::W5, Field::L5}};

std::optional<Field> field_from_key(std::string_view key) {
  for (std::size_t i = 0; i < kFieldCount; ++i) {
    if (kFieldKeys[i] == key) return static_cast<Field>(i);
  }
  return std::nullopt;
}

std::string fold_label(std::string_view s) { return text::lower(text::collapse_spaces(s)); }

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!text::is_space(c)) out.push_back(c);
  }
  return out;
}

// Splits one delimited line, honouring double-quoted cells ("" escapes a quote).
std::vector<std::string> split_delimited(std::string_view line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string where(const RawRow& row) {
  return row.source.string() + ":" + std::to_string(row.line);
}

Date parse_row_date(std::string_view raw, DateOrder order, const RawRow& row) {
  std::string_view s = text::trim(raw);
  if (const auto sp = s.find_first_of(" T"); sp != std::string_view::npos) s = s.substr(0, sp);
  int y = 0, m = 0, d = 0;
  bool ok = false;
  if (s.size() == 8 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    y = static_cast<int>(*text::parse_int(s.substr(0, 4)));
    m = static_cast<int>(*text::parse_int(s.substr(4, 2)));
    d = static_cast<int>(*text::parse_int(s.substr(6, 2)));
    ok = true;
  } else {
    const auto sep_pos = s.find_first_of("-/.");
    if (sep_pos != std::string_view::npos) {
      const auto parts = text::split(s, s[sep_pos]);
      if (parts.size() == 3) {
        const auto a = text::parse_int(parts[0]);
        const auto b = text::parse_int(parts[1]);
        const auto c = text::parse_int(parts[2]);
        if (a && b && c) {
          ok = true;
          if (parts[0].size() == 4 || order == DateOrder::YMD) {
            y = static_cast<int>(*a), m = static_cast<int>(*b), d = static_cast<int>(*c);
            if (parts[0].size() == 2) y += 2000;
          } else {
            if (order == DateOrder::MDY) {
              m = static_cast<int>(*a), d = static_cast<int>(*b), y = static_cast<int>(*c);
            } else {
              d = static_cast<int>(*a), m = static_cast<int>(*b), y = static_cast<int>(*c);
            }
            if (parts[2].size() == 2) y += 2000;
          }
        }
      }
    }
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ok || !ymd.ok())
    throw InputError(where(row) + ": unparseable date '" + std::string(raw) + "'");
  return Date{ymd};
}

std::optional<int> parse_rank(const std::optional<std::string>& cell) {
  if (!cell) return std::nullopt;
  auto v = text::parse_int(*cell);
  if (!v) {
    // Excel exports sometimes write integers as "12.0".
    const auto d = text::parse_double(*cell);
    if (d && *d == static_cast<double>(static_cast<long long>(*d))) v = static_cast<long long>(*d);
  }
  if (!v || *v <= 0) return std::nullopt;
  return static_cast<int>(*v);
}

std::optional<double> parse_odds(const std::optional<std::string>& cell) {
  if (!cell) return std::nullopt;
  const auto v = text::parse_double(*cell);
  if (!v || !(*v >= 1.0)) return std::nullopt;
  return v;
}

std::optional<int> parse_games(const std::optional<std::string>& cell) {
  if (!cell) return std::nullopt;
  auto v = text::parse_int(*cell);
  if (!v) {
    const auto d = text::parse_double(*cell);
    if (d && *d == static_cast<double>(static_cast<long long>(*d))) v = static_cast<long long>(*d);
  }
  if (!v || *v < 0) return std::nullopt;
  return static_cast<int>(*v);
}

Round round_from_depth(int rounds_before_qf, const RawRow& row) {
  switch (rounds_before_qf) {
    case 1: return Round::R16;
    case 2: return Round::R32;
    case 3: return Round::R64;
    case 4: return Round::R128;
    default:
      throw InputError(where(row) + ": draw deeper than 128 players cannot be placed on the round ladder");
  }
}

}  // namespace

std::string_view field_key(Field f) { return kFieldKeys[static_cast<std::size_t>(f)]; }

int sets_won_by_winner(const MatchRecord& m) {
  return static_cast<int>(std::count_if(m.sets.begin(), m.sets.end(), [](const SetScore& s) {
    return s.games_winner > s.games_loser;
  }));
}

IngestConfig IngestConfig::from_ini(const IniDocument& doc) {
  IngestConfig cfg;
  const auto fail = [&](const IniSection& s, const std::string& msg) {
    return InputError(doc.source + " [" + s.name + "]: " + msg);
  };
  for (const auto& section : doc.sections) {
    if (section.name.empty()) {
      if (!section.entries.empty())
        throw InputError(doc.source + ": entries outside any section");
      continue;
    }
    if (section.name.rfind("layout", 0) == 0) {
      ColumnLayout layout;
      layout.name = std::string(text::trim(std::string_view(section.name).substr(6)));
      if (layout.name.empty()) layout.name = section.name;
      for (const auto& [key, value] : section.entries) {
        if (key == "date_order") {
          const std::string v = text::lower(value);
          if (v == "ymd") layout.date_order = DateOrder::YMD;
          else if (v == "dmy") layout.date_order = DateOrder::DMY;
          else if (v == "mdy") layout.date_order = DateOrder::MDY;
          else throw fail(section, "date_order must be ymd, dmy or mdy");
          continue;
        }
        const auto f = field_from_key(key);
        if (!f) throw fail(section, "unknown field '" + key + "'");
        layout.columns[*f] = value;
      }
      for (Field req : kRequired) {
        if (!layout.columns.count(req))
          throw fail(section, "layout lacks required field '" + std::string(field_key(req)) + "'");
      }
      cfg.layouts.push_back(std::move(layout));
    } else if (section.name == "series") {
      for (const auto& [key, value] : section.entries) {
        std::string label = key;
        SeriesAlias alias{};
        if (const auto at = key.find('@'); at != std::string::npos) {
          label = key.substr(0, at);
          const auto range = text::split(text::trim(std::string_view(key).substr(at + 1)), '-');
          const auto lo = text::parse_int(range.front());
          const auto hi = range.size() > 1 ? text::parse_int(range[1]) : lo;
          if (!lo || !hi || range.size() > 2) throw fail(section, "bad year range in '" + key + "'");
          alias.first_year = static_cast<int>(*lo);
          alias.last_year = static_cast<int>(*hi);
        }
        const auto cat = parse_category(strip_spaces(value));
        if (!cat) throw fail(section, "unknown category '" + value + "'");
        alias.category = *cat;
        cfg.series[fold_label(label)].push_back(alias);
      }
    } else if (section.name == "surface") {
      for (const auto& [key, value] : section.entries) {
        const auto s = parse_surface(value);
        if (!s) throw fail(section, "unknown surface '" + value + "'");
        cfg.surfaces[fold_label(key)] = *s;
      }
    } else if (section.name == "round") {
      for (const auto& [key, value] : section.entries) {
        RoundAlias alias;
        if (!value.empty() && value.front() == '+') {
          const auto n = text::parse_int(std::string_view(value).substr(1));
          if (!n || *n < 1 || *n > 4) throw fail(section, "ordinal round must be +1..+4");
          alias.ordinal = static_cast<int>(*n);
        } else {
          alias.fixed = parse_round(value);
          if (!alias.fixed) throw fail(section, "unknown round '" + value + "'");
        }
        cfg.rounds[fold_label(key)] = alias;
      }
    } else if (section.name == "status") {
      for (const auto& [key, value] : section.entries) {
        std::set<std::string>* target = nullptr;
        if (key == "completed") target = &cfg.completed_comments;
        else if (key == "indoor") target = &cfg.indoor_labels;
        else throw fail(section, "unknown key '" + key + "'");
        target->clear();
        for (auto v : text::split(value, ',')) target->insert(fold_label(v));
      }
    } else {
      throw InputError(doc.source + ": unknown section [" + section.name + "]");
    }
  }
  if (cfg.layouts.empty()) throw InputError(doc.source + ": no [layout ...] section");
  return cfg;
}

IngestConfig IngestConfig::load(const std::filesystem::path& path) {
  return from_ini(load_ini(path));
}

std::vector<RawRow> parse_raw_files(const std::filesystem::path& directory,
                                    const IngestConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw InputError("raw data directory not found: " + directory.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = text::lower(entry.path().extension().string());
    if (ext == ".csv" || ext == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<RawRow> rows;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot read " + file.string());
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    char delim = ',';
    const ColumnLayout* layout = nullptr;
    std::array<std::optional<std::size_t>, kFieldCount> column_index{};
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (text::trim(line).empty()) continue;
      if (!layout) {
        delim = std::count(line.begin(), line.end(), ';') > std::count(line.begin(), line.end(), ',')
                    ? ';'
                    : ',';
        for (auto& cell : split_delimited(line, delim)) header.push_back(fold_label(cell));
        std::size_t best_cols = 0;
        for (const auto& candidate : config.layouts) {
          const bool all_present = std::all_of(
              candidate.columns.begin(), candidate.columns.end(), [&](const auto& kv) {
                return std::find(header.begin(), header.end(), fold_label(kv.second)) != header.end();
              });
          if (all_present && candidate.columns.size() > best_cols) {
            layout = &candidate;
            best_cols = candidate.columns.size();
          }
        }
        if (!layout)
          throw InputError(file.string() + ": no column layout matches header '" + line + "'");
        for (const auto& [f, col] : layout->columns) {
          const auto it = std::find(header.begin(), header.end(), fold_label(col));
          column_index[static_cast<std::size_t>(f)] =
              static_cast<std::size_t>(it - header.begin());
        }
        continue;
      }
      const auto cells = split_delimited(line, delim);
      RawRow row;
      row.source = file;
      row.line = lineno;
      row.layout = layout->name;
      for (std::size_t f = 0; f < kFieldCount; ++f) {
        if (!column_index[f] || *column_index[f] >= cells.size()) continue;
        std::string value = text::collapse_spaces(cells[*column_index[f]]);
        if (!value.empty()) row.fields[f] = std::move(value);
      }
      rows.push_back(std::move(row));
    }
    if (in.bad()) throw InputError("read error in " + file.string());
  }
  return rows;
}

UnifiedTournament unify_tournament(std::string_view raw_name, std::string_view raw_series,
                                   int year, const IngestConfig& config) {
  UnifiedTournament out;
  out.name = text::collapse_spaces(raw_name);
  if (out.name.empty()) throw InputError("empty tournament name");

  const std::string label = fold_label(raw_series);
  if (const auto it = config.series.find(label); it != config.series.end()) {
    const SeriesAlias* fallback = nullptr;
    for (const auto& alias : it->second) {
      if (!alias.first_year) {
        fallback = &alias;
      } else if (year >= *alias.first_year && year <= *alias.last_year) {
        out.category = alias.category;
        return out;
      }
    }
    if (fallback) {
      out.category = fallback->category;
      return out;
    }
  }
  if (const auto direct = parse_category(strip_spaces(raw_series))) {
    out.category = *direct;
    return out;
  }
  throw InputError("unknown tournament series label '" + std::string(raw_series) + "' (" +
                   out.name + " " + std::to_string(year) + "); extend the [series] alias table");
}

MatchStore build_store(std::span<const RawRow> rows, const IngestConfig& config) {
  std::map<std::string, DateOrder> date_orders;
  for (const auto& layout : config.layouts) date_orders[layout.name] = layout.date_order;

  struct Group {
    std::string folded_name;
    Tournament info;
    Date start = Date::max();
    int max_ordinal = 0;
    const RawRow* first_row = nullptr;
  };
  struct Pending {
    const RawRow* row;
    std::size_t group;
    RoundAlias round;
    MatchRecord record;
  };

  NameRegistry names;
  std::map<std::string, PlayerId> player_ids;
  std::vector<Player> players;
  std::map<std::pair<std::string, std::string>, std::size_t> group_index;  // (file, name)
  std::vector<Group> groups;
  std::vector<Pending> pending;
  pending.reserve(rows.size());

  const auto player_id = [&](const std::string& raw, const RawRow& row) {
    std::string canonical;
    try {
      canonical = names.resolve(raw);
    } catch (const AmbiguityError& e) {
      throw AmbiguityError(where(row) + ": " + e.what());
    }
    auto [it, inserted] = player_ids.emplace(canonical, PlayerId{static_cast<std::int32_t>(players.size() + 1)});
    if (inserted) players.push_back(Player{it->second, canonical});
    return it->second;
  };

  for (const auto& row : rows) {
    for (Field f : kRequired) {
      if (!row.get(f))
        throw InputError(where(row) + ": missing value for '" + std::string(field_key(f)) + "'");
    }
    const auto order_it = date_orders.find(row.layout);
    const Date date = parse_row_date(*row.get(Field::Date), order_it == date_orders.end() ? DateOrder::YMD : order_it->second, row);

    const std::string raw_name = *row.get(Field::Tournament);
    const auto key = std::make_pair(row.source.string(), fold_label(raw_name));
    auto [git, fresh] = group_index.emplace(key, groups.size());
    if (fresh) {
      Group g;
      g.folded_name = key.second;
      g.first_row = &row;
      UnifiedTournament u;
      try {
        u = unify_tournament(raw_name, *row.get(Field::Series), calendar_year(date), config);
      } catch (const InputError& e) {
        throw InputError(where(row) + ": " + e.what());
      }
      g.info.name = u.name;
      g.info.category = u.category;
      const std::string surface_label = fold_label(*row.get(Field::Surface));
      if (const auto sit = config.surfaces.find(surface_label); sit != config.surfaces.end()) {
        g.info.surface = sit->second;
      } else if (const auto s = parse_surface(surface_label)) {
        g.info.surface = *s;
      } else {
        throw InputError(where(row) + ": unknown surface '" + *row.get(Field::Surface) + "'");
      }
      g.info.indoor = row.get(Field::Court) && config.indoor_labels.count(fold_label(*row.get(Field::Court))) > 0;
      g.info.location = row.get(Field::Location).value_or("");
      g.info.best_of = u.category == Category::GrandSlam ? 5 : 3;
      if (const auto& bo = row.get(Field::BestOf)) {
        const auto v = text::parse_int(*bo);
        if (!v || (*v != 3 && *v != 5))
          throw InputError(where(row) + ": best_of must be 3 or 5, got '" + *bo + "'");
        g.info.best_of = static_cast<int>(*v);
      }
      groups.push_back(std::move(g));
    }
    Group& group = groups[git->second];
    group.start = std::min(group.start, date);

    RoundAlias round;
    const std::string round_label = fold_label(*row.get(Field::Round));
    if (const auto rit = config.rounds.find(round_label); rit != config.rounds.end()) {
      round = rit->second;
    } else if (const auto r = parse_round(round_label)) {
      round.fixed = *r;
    } else {
      throw InputError(where(row) + ": unknown round label '" + *row.get(Field::Round) +
                       "'; extend the [round] alias table");
    }
    group.max_ordinal = std::max(group.max_ordinal, round.ordinal);

    MatchRecord m;
    m.id = MatchId{static_cast<std::int32_t>(pending.size() + 1)};
    m.date = date;
    m.winner = player_id(*row.get(Field::Winner), row);
    m.loser = player_id(*row.get(Field::Loser), row);
    if (m.winner == m.loser)
      throw IntegrityError(where(row) + ": winner and loser resolve to the same player '" +
                           players[static_cast<std::size_t>(raw(m.winner) - 1)].canonical_name + "'");
    m.official_rank_winner = parse_rank(row.get(Field::WinnerRank));
    m.official_rank_loser = parse_rank(row.get(Field::LoserRank));
    for (const auto& [wf, lf] : kSetFields) {
      const auto w = parse_games(row.get(wf));
      const auto l = parse_games(row.get(lf));
      if (w && l) m.sets.push_back(SetScore{*w, *l});
    }
    m.odds_winner = parse_odds(row.get(Field::OddsWinner));
    m.odds_loser = parse_odds(row.get(Field::OddsLoser));
    pending.push_back(Pending{&row, git->second, round, std::move(m)});
  }

  std::vector<Tournament> tournaments;
  tournaments.reserve(groups.size());
  std::map<std::pair<std::string, int>, std::size_t> seen;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Group& g = groups[i];
    const IsoWeek wk = iso_week(g.start);
    g.info.id = TournamentId{static_cast<std::int32_t>(i + 1)};
    g.info.year = wk.year;
    g.info.week = wk.week;
    auto [it, inserted] = seen.emplace(std::make_pair(g.folded_name, wk.year), i);
    if (!inserted)
      throw IntegrityError(where(*g.first_row) + ": tournament '" + g.info.name + "' " +
                           std::to_string(wk.year) + " also appears in " +
                           groups[it->second].first_row->source.string());
    tournaments.push_back(g.info);
  }

  std::vector<MatchRecord> matches;
  matches.reserve(pending.size());
  for (auto& p : pending) {
    const Group& g = groups[p.group];
    MatchRecord& m = p.record;
    m.tournament = g.info.id;
    m.round = p.round.fixed ? *p.round.fixed
                            : round_from_depth(g.max_ordinal - p.round.ordinal + 1, *p.row);
    const int needed = (g.info.best_of + 1) / 2;
    const auto& comment = p.row->get(Field::Comment);
    const bool comment_ok = !comment || config.completed_comments.count(fold_label(*comment)) > 0;
    m.completed = comment_ok && sets_won_by_winner(m) >= needed;
    if (m.sets.size() > 5)
      throw IntegrityError(where(*p.row) + ": more than five sets");
    if (calendar_year(m.date) != g.info.year && iso_week(m.date).year != g.info.year)
      throw IntegrityError(where(*p.row) + ": match date " + format_date(m.date) +
                           " outside tournament year " + std::to_string(g.info.year));
    matches.push_back(std::move(m));
  }

  return MatchStore::assemble(std::move(players), std::move(tournaments), std::move(matches));
}

}  // namespace courtrank
