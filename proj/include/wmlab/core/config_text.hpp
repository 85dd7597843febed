#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wmlab {

// Sectioned key-value text:
//
//   # comment
//   [section]
//   key = value
//   key = [1.5, 2, 3e-4]
//
// Values are kept verbatim; typed accessors convert and report the source line.
struct ConfigEntry {
  std::string raw;
  int line = 0;
  bool is_array = false;
  std::vector<std::string> items;  // array elements, trimmed
};

struct ConfigSection {
  int line = 0;
  std::map<std::string, ConfigEntry> entries;
};

using ConfigSchema = std::map<std::string, std::set<std::string>>;

class ConfigDocument {
 public:
  // Throws ConfigError on syntax errors, duplicate keys, and any section or
  // key missing from `schema`.
  static ConfigDocument parse(const std::string& text, const ConfigSchema& schema);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigEntry* find(const std::string& section, const std::string& key) const;
  // Line of the section header, or 0 if absent.
  int section_line(const std::string& section) const;

  double get_real(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  std::string get_word(const std::string& section, const std::string& key) const;
  std::vector<double> get_reals(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_words(const std::string& section, const std::string& key) const;

 private:
  std::map<std::string, ConfigSection> sections_;
  const ConfigEntry& require(const std::string& section, const std::string& key) const;
};

// Shortest decimal text that parses back to exactly `x`.
std::string format_real(double x);
// Strict conversions; throw ConfigError(line, ...) on trailing garbage.
double parse_real(const std::string& s, int line);
long long parse_integer(const std::string& s, int line);

}  // namespace wmlab
