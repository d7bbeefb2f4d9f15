#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eel/common.hpp"

namespace eel {

/// Flat `key = value` configuration with `[section]` headers. Keys may
/// repeat (e.g. one `column` line per table column); order is preserved.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  // Single-valued accessors throw ConfigError naming the missing field.
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  std::vector<std::string> get_all(const std::string& section,
                                   const std::string& key) const;

  i64 get_int(const std::string& section, const std::string& key) const;
  i64 get_int_or(const std::string& section, const std::string& key,
                 i64 fallback) const;
  double get_real(const std::string& section, const std::string& key) const;
  double get_real_or(const std::string& section, const std::string& key,
                     double fallback) const;

  const std::string& text() const { return text_; }
  u64 hash() const { return fnv1a(text_); }

 private:
  struct Item {
    std::string section, key, value;
  };
  std::vector<Item> items_;
  std::string text_;
};

std::vector<std::string> split_words(const std::string& s);

}  // namespace eel
