#include "courtrank/ini.hpp"

#include <fstream>
#include <istream>

#include "courtrank/core.hpp"
#include "text.hpp"

namespace courtrank {

std::optional<std::string> IniSection::get(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const IniSection* IniDocument::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniDocument parse_ini(std::istream& in, const std::string& source_name) {
  IniDocument doc;
  doc.source = source_name;
  doc.sections.push_back(IniSection{"", 0, {}});
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = text::trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw InputError(source_name + ":" + std::to_string(lineno) + ": unterminated section");
      std::string name(text::trim(body.substr(1, body.size() - 2)));
      for (const auto& s : doc.sections) {
        if (s.name == name)
          throw InputError(source_name + ":" + std::to_string(lineno) + ": duplicate section [" +
                           name + "]");
      }
      doc.sections.push_back(IniSection{std::move(name), lineno, {}});
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw InputError(source_name + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key(text::trim(body.substr(0, eq)));
    std::string value(text::trim(body.substr(eq + 1)));
    if (key.empty())
      throw InputError(source_name + ":" + std::to_string(lineno) + ": empty key");
    auto& section = doc.sections.back();
    if (section.get(key))
      throw InputError(source_name + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                       "'");
    section.entries.emplace_back(std::move(key), std::move(value));
  }
  return doc;
}

IniDocument load_ini(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path.string());
  return parse_ini(in, path.string());
}

}  // namespace courtrank
