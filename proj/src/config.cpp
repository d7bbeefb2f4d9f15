#include "eel/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace eel {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  cfg.text_ = text;
  std::istringstream is(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected `key = value`");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key before any [section] header");
    cfg.items_.push_back({section, key, value});
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  for (const auto& it : items_)
    if (it.section == section && it.key == key) return true;
  return false;
}

std::string ConfigFile::get(const std::string& section,
                            const std::string& key) const {
  for (const auto& it : items_)
    if (it.section == section && it.key == key) return it.value;
  throw ConfigError("missing config field: [" + section + "] " + key);
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

std::vector<std::string> ConfigFile::get_all(const std::string& section,
                                             const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& it : items_)
    if (it.section == section && it.key == key) out.push_back(it.value);
  return out;
}

i64 ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  try {
    std::size_t pos = 0;
    i64 r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config field [" + section + "] " + key +
                      " is not an integer: " + v);
  }
}

i64 ConfigFile::get_int_or(const std::string& section, const std::string& key,
                           i64 fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

double ConfigFile::get_real(const std::string& section,
                            const std::string& key) const {
  const std::string v = get(section, key);
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw ConfigError("config field [" + section + "] " + key +
                      " is not a number: " + v);
  }
}

double ConfigFile::get_real_or(const std::string& section, const std::string& key,
                               double fallback) const {
  return has(section, key) ? get_real(section, key) : fallback;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace eel
