#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "vibra/model.hpp"

namespace vibra {

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// Keys are consumed as they are read so leftovers can be reported.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string source = "<text>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;
  std::optional<std::string> take(std::string_view key);
  std::optional<double> take_double(std::string_view key);
  std::optional<std::size_t> take_count(std::string_view key);

  /// Throws ConfigError listing keys nobody asked for.
  void expect_consumed() const;

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::string, std::less<>> entries_;
};

/// A string run as read from a configuration file: `preset = <name>`
/// selects a base, every other key overrides one field.
struct StringRun {
  StringConfig config;
  ListenerGeometry listener;
};

StringRun read_string_run(KeyValueFile& file, const StringConfig& base);
BellConfig read_bell_config(KeyValueFile& file, const BellConfig& base);

StringRun load_string_run(const std::filesystem::path& path);
BellConfig load_bell_config(const std::filesystem::path& path);

/// Serializes every field so that parse() reproduces the run exactly.
std::string to_config_text(const StringRun& run);

}  // namespace vibra
