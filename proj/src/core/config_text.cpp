#include "wmlab/core/config_text.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "wmlab/core/error.hpp"

namespace wmlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

}  // namespace

ConfigDocument ConfigDocument::parse(const std::string& text, const ConfigSchema& schema) {
  ConfigDocument doc;
  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  ConfigSection* current = nullptr;
  std::string current_name;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!schema.count(name)) throw ConfigError(line_no, "unknown section [" + name + "]");
      if (doc.sections_.count(name)) throw ConfigError(line_no, "duplicate section [" + name + "]");
      current = &doc.sections_[name];
      current->line = line_no;
      current_name = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
    if (!current) throw ConfigError(line_no, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    if (!is_identifier(key)) throw ConfigError(line_no, "invalid key '" + key + "'");
    if (!schema.at(current_name).count(key)) {
      throw ConfigError(line_no, "unknown key '" + key + "' in [" + current_name + "]");
    }
    if (current->entries.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");

    ConfigEntry entry;
    entry.line = line_no;
    entry.raw = trim(line.substr(eq + 1));
    if (entry.raw.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    if (entry.raw.front() == '[') {
      if (entry.raw.back() != ']') throw ConfigError(line_no, "unterminated array");
      entry.is_array = true;
      const std::string body = trim(entry.raw.substr(1, entry.raw.size() - 2));
      if (!body.empty()) {
        std::istringstream items(body);
        std::string item;
        while (std::getline(items, item, ',')) {
          item = trim(item);
          if (item.empty()) throw ConfigError(line_no, "empty array element");
          entry.items.push_back(item);
        }
        if (body.back() == ',') throw ConfigError(line_no, "trailing comma in array");
      }
    }
    current->entries.emplace(key, std::move(entry));
  }
  return doc;
}

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const ConfigEntry* ConfigDocument::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto e = s->second.entries.find(key);
  return e == s->second.entries.end() ? nullptr : &e->second;
}

int ConfigDocument::section_line(const std::string& section) const {
  const auto s = sections_.find(section);
  return s == sections_.end() ? 0 : s->second.line;
}

const ConfigEntry& ConfigDocument::require(const std::string& section,
                                           const std::string& key) const {
  const ConfigEntry* e = find(section, key);
  if (!e) {
    const int at = section_line(section);
    throw ConfigError(at, "missing required key '" + key + "' in [" + section + "]");
  }
  return *e;
}

double ConfigDocument::get_real(const std::string& section, const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  if (e.is_array) throw ConfigError(e.line, "'" + key + "' must be a number");
  return parse_real(e.raw, e.line);
}

int ConfigDocument::get_int(const std::string& section, const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  if (e.is_array) throw ConfigError(e.line, "'" + key + "' must be an integer");
  const long long v = parse_integer(e.raw, e.line);
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(e.line, "integer out of range");
  return static_cast<int>(v);
}

std::string ConfigDocument::get_word(const std::string& section, const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  if (e.is_array || !is_identifier(e.raw)) {
    throw ConfigError(e.line, "'" + key + "' must be a bare word");
  }
  return e.raw;
}

std::vector<double> ConfigDocument::get_reals(const std::string& section,
                                              const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  if (!e.is_array) throw ConfigError(e.line, "'" + key + "' must be an array, e.g. [1.0, 2.0]");
  std::vector<double> out;
  for (const auto& item : e.items) out.push_back(parse_real(item, e.line));
  return out;
}

std::vector<std::string> ConfigDocument::get_words(const std::string& section,
                                                   const std::string& key) const {
  const ConfigEntry& e = require(section, key);
  std::vector<std::string> out = e.is_array ? e.items : std::vector<std::string>{e.raw};
  for (const auto& w : out) {
    if (!is_identifier(w)) throw ConfigError(e.line, "invalid name '" + w + "'");
  }
  return out;
}

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& s, int line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError(line, "'" + s + "' is not a number");
  }
  if (!std::isfinite(v)) throw ConfigError(line, "'" + s + "' is not finite");
  return v;
}

long long parse_integer(const std::string& s, int line) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError(line, "'" + s + "' is not an integer");
  }
  return v;
}

}  // namespace wmlab
