#include <fstream>
#include <ostream>

#include <json.hpp>

#include "courtrank/evaluation.hpp"
#include "text.hpp"

namespace courtrank {

namespace {

std::string percent(const HitCell& c) { return text::format_fixed(100.0 * c.rate(), 3); }

void write_matrix(std::ostream& out, std::string_view head, const std::vector<int>& years,
                  const std::vector<std::pair<std::string, const std::map<int, HitCell>*>>& rows,
                  const std::vector<HitCell>& totals) {
  out << head;
  for (int y : years) out << '\t' << y;
  out << "\ttotal";
  for (int y : years) out << '\t' << y << "_hits\t" << y << "_n";
  out << "\ttotal_hits\ttotal_n\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [label, cells] = rows[i];
    out << label;
    for (int y : years) out << '\t' << percent(cells->at(y));
    out << '\t' << percent(totals[i]);
    for (int y : years) out << '\t' << cells->at(y).hits << '\t' << cells->at(y).total();
    out << '\t' << totals[i].hits << '\t' << totals[i].total() << '\n';
  }
}

nlohmann::ordered_json cell_json(const HitCell& c) {
  return {{"hits", c.hits}, {"misses", c.misses}, {"total", c.total()}, {"rate", c.rate()}};
}

}  // namespace

void write_years_tsv(std::ostream& out, const EvalReport& report) {
  out << "year\trate\thits\tn\n";
  for (const auto& [year, cell] : report.by_year)
    out << year << '\t' << percent(cell) << '\t' << cell.hits << '\t' << cell.total() << '\n';
  out << "overall\t" << percent(report.overall) << '\t' << report.overall.hits << '\t'
      << report.overall.total() << '\n';
  out << "mean_of_years\t" << text::format_fixed(100.0 * report.mean_of_years, 3) << "\t\t\n";
}

void write_slice_tsv(std::ostream& out, const EvalReport& report, const SliceTable& table) {
  std::vector<std::pair<std::string, const std::map<int, HitCell>*>> rows;
  std::vector<HitCell> totals;
  for (const auto& r : table.rows) {
    rows.emplace_back(r.label, &r.by_year);
    totals.push_back(r.total);
  }
  write_matrix(out, to_string(table.kind), report.years, rows, totals);
}

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["predictor"] = report.predictor;
  j["years"] = report.years;
  j["overall"] = cell_json(report.overall);
  j["mean_of_years"] = report.mean_of_years;
  j["skipped"] = report.skipped;
  auto& by_year = j["by_year"] = nlohmann::ordered_json::object();
  for (const auto& [year, cell] : report.by_year) by_year[std::to_string(year)] = cell_json(cell);
  auto& slices = j["slices"] = nlohmann::ordered_json::object();
  for (const auto& table : report.slices) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json row;
      row["label"] = r.label;
      row["total"] = cell_json(r.total);
      auto& cells = row["by_year"] = nlohmann::ordered_json::object();
      for (const auto& [year, cell] : r.by_year) cells[std::to_string(year)] = cell_json(cell);
      rows.push_back(std::move(row));
    }
    slices[std::string(to_string(table.kind))] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

void write_report(const std::filesystem::path& dir, const std::string& stem, const EvalReport& report) {
  std::filesystem::create_directories(dir);
  const auto open = [&](const std::string& name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw InputError("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open(stem + ".years.tsv");
    write_years_tsv(f, report);
  }
  for (const auto& table : report.slices) {
    auto f = open(stem + "." + std::string(to_string(table.kind)) + ".tsv");
    write_slice_tsv(f, report, table);
  }
  auto f = open(stem + ".json");
  f << report_json(report);
}

}  // namespace courtrank
