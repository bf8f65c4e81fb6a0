#pragma once

// Minimal INI reader for column maps and run configs. Keys may contain
// spaces ("International Gold = ATP500"); '#' and ';' start comment lines.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace courtrank {

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(const std::string& key) const;
};

struct IniDocument {
  std::string source;
  std::vector<IniSection> sections;  // entries before any header land in section ""

  const IniSection* find(const std::string& name) const;
};

IniDocument parse_ini(std::istream& in, const std::string& source_name);
IniDocument load_ini(const std::filesystem::path& path);

}  // namespace courtrank
