#include "vibra/config_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vibra/errors.hpp"
#include "vibra/presets.hpp"

namespace vibra {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string shortest_repr(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source_ = std::move(source);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const auto where = file.source_ + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
    if (!file.entries_.emplace(std::string(key), std::string(value)).second) {
      throw ConfigError(where + ": duplicate key `" + std::string(key) + "`");
    }
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

bool KeyValueFile::contains(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

std::optional<std::string> KeyValueFile::take(std::string_view key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  std::string value = std::move(it->second);
  entries_.erase(it);
  return value;
}

std::optional<double> KeyValueFile::take_double(std::string_view key) {
  const auto raw = take(key);
  if (!raw) return std::nullopt;
  double v = 0.0;
  const auto* end = raw->data() + raw->size();
  const auto [ptr, ec] = std::from_chars(raw->data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(source_ + ": `" + std::string(key) + "` is not a number: " + *raw);
  }
  return v;
}

std::optional<std::size_t> KeyValueFile::take_count(std::string_view key) {
  const auto raw = take(key);
  if (!raw) return std::nullopt;
  std::size_t v = 0;
  const auto* end = raw->data() + raw->size();
  const auto [ptr, ec] = std::from_chars(raw->data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(source_ + ": `" + std::string(key) + "` is not a nonnegative integer: " + *raw);
  }
  return v;
}

void KeyValueFile::expect_consumed() const {
  if (entries_.empty()) return;
  std::string keys;
  for (const auto& [k, v] : entries_) {
    if (!keys.empty()) keys += ", ";
    keys += k;
  }
  throw ConfigError(source_ + ": unknown keys: " + keys);
}

StringRun read_string_run(KeyValueFile& file, const StringConfig& base) {
  StringRun run;
  run.config = base;
  if (auto preset = file.take("preset")) {
    try {
      run.config = presets::string_preset(*preset);
    } catch (const NotFoundError& e) {
      throw ConfigError(file.source() + ": " + e.what());
    }
  }
  auto& c = run.config;
  if (auto v = file.take_double("length_m")) c.length_m = *v;
  if (auto v = file.take_double("tension_n")) c.tension_n = *v;
  if (auto v = file.take_double("linear_density")) c.linear_density = *v;
  if (auto v = file.take_double("damping")) c.damping = *v;
  if (auto v = file.take_double("pluck_position_m")) c.pluck_position_m = *v;
  if (auto v = file.take_double("pluck_amplitude_m")) c.pluck_amplitude_m = *v;
  if (auto v = file.take_count("node_count")) c.node_count = *v;
  if (auto v = file.take_double("dt_s")) c.dt_s = *v;
  if (auto v = file.take_count("step_count")) c.step_count = *v;
  c.validate();

  run.listener = default_listener(c);
  auto& g = run.listener;
  if (auto v = file.take_double("standoff_m")) g.standoff_m = *v;
  if (auto v = file.take_count("reference_index")) g.reference_index = *v;
  if (auto v = file.take_double("air_density")) g.air_density = *v;
  if (auto v = file.take_double("sound_speed")) g.sound_speed = *v;
  g.validate(c.node_count);
  return run;
}

BellConfig read_bell_config(KeyValueFile& file, const BellConfig& base) {
  BellConfig b = base;
  if (auto preset = file.take("preset")) {
    try {
      b = presets::bell_preset(*preset);
    } catch (const NotFoundError& e) {
      throw ConfigError(file.source() + ": " + e.what());
    }
  }
  if (auto name = file.take("material")) {
    try {
      const auto& m = find_material(*name);
      b.density = m.density;
      b.youngs_modulus = m.youngs_modulus;
      b.poisson_ratio = m.poisson_ratio_range.midpoint();
    } catch (const NotFoundError& e) {
      throw ConfigError(file.source() + ": " + e.what());
    }
  }
  if (auto v = file.take_double("radius_m")) b.radius_m = *v;
  if (auto v = file.take_double("thickness_m")) b.thickness_m = *v;
  if (auto v = file.take_double("density")) b.density = *v;
  if (auto v = file.take_double("youngs_modulus")) b.youngs_modulus = *v;
  if (auto v = file.take_double("poisson_ratio")) b.poisson_ratio = *v;
  if (auto v = file.take_double("damping_sigma")) b.damping_sigma = *v;
  b.validate();
  return b;
}

StringRun load_string_run(const std::filesystem::path& path) {
  auto file = KeyValueFile::load(path);
  auto run = read_string_run(file, StringConfig{});
  file.expect_consumed();
  return run;
}

BellConfig load_bell_config(const std::filesystem::path& path) {
  auto file = KeyValueFile::load(path);
  auto bell = read_bell_config(file, BellConfig{});
  file.expect_consumed();
  return bell;
}

std::string to_config_text(const StringRun& run) {
  const auto& c = run.config;
  const auto& g = run.listener;
  std::ostringstream out;
  out << "length_m = " << shortest_repr(c.length_m) << '\n'
      << "tension_n = " << shortest_repr(c.tension_n) << '\n'
      << "linear_density = " << shortest_repr(c.linear_density) << '\n'
      << "damping = " << shortest_repr(c.damping) << '\n'
      << "pluck_position_m = " << shortest_repr(c.pluck_position_m) << '\n'
      << "pluck_amplitude_m = " << shortest_repr(c.pluck_amplitude_m) << '\n'
      << "node_count = " << c.node_count << '\n'
      << "dt_s = " << shortest_repr(c.dt_s) << '\n'
      << "step_count = " << c.step_count << '\n'
      << "standoff_m = " << shortest_repr(g.standoff_m) << '\n'
      << "reference_index = " << g.reference_index << '\n'
      << "air_density = " << shortest_repr(g.air_density) << '\n'
      << "sound_speed = " << shortest_repr(g.sound_speed) << '\n';
  return out.str();
}

}  // namespace vibra
