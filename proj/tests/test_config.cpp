#include <filesystem>

#include "doctest.h"
#include "vibra/config_file.hpp"
#include "vibra/errors.hpp"
#include "vibra/presets.hpp"

using namespace vibra;

TEST_CASE("key-value parsing with comments and blanks") {
  auto f = KeyValueFile::parse("# header\n\n tension_n = 50 # inline\nnode_count=41\n");
  CHECK(f.take_double("tension_n") == 50.0);
  CHECK(f.take_count("node_count") == 41u);
  CHECK_FALSE(f.take("absent").has_value());
  CHECK_NOTHROW(f.expect_consumed());
}

TEST_CASE("malformed config lines are rejected") {
  CHECK_THROWS_AS(KeyValueFile::parse("tension_n 50\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
  auto f = KeyValueFile::parse("tension_n = fifty\nnode_count = -3\n");
  CHECK_THROWS_AS(f.take_double("tension_n"), ConfigError);
  CHECK_THROWS_AS(f.take_count("node_count"), ConfigError);
}

TEST_CASE("unknown keys are reported") {
  auto f = KeyValueFile::parse("tension = 50\n");
  read_string_run(f, presets::b3_string());
  CHECK_THROWS_AS(f.expect_consumed(), ConfigError);
}

TEST_CASE("preset plus overrides") {
  auto f = KeyValueFile::parse("preset = reference\ntension_n = 50\nstandoff_m = 2\n");
  const auto run = read_string_run(f, presets::b3_string());
  CHECK(run.config.length_m == 0.655);
  CHECK(run.config.tension_n == 50.0);
  CHECK(run.listener.standoff_m == 2.0);
  CHECK(run.listener.reference_index == default_listener(run.config).reference_index);
}

TEST_CASE("invalid values fail validation") {
  auto f = KeyValueFile::parse("pluck_position_m = 2\n");
  CHECK_THROWS_AS(read_string_run(f, presets::b3_string()), ConfigError);
}

TEST_CASE("config text round trip") {
  StringRun run{presets::guitar_validation(), default_listener(presets::guitar_validation())};
  auto f = KeyValueFile::parse(to_config_text(run));
  const auto back = read_string_run(f, presets::b3_string());
  CHECK(back.config.tension_n == run.config.tension_n);
  CHECK(back.config.damping == run.config.damping);
  CHECK(back.config.dt_s == run.config.dt_s);
  CHECK(back.config.step_count == run.config.step_count);
  CHECK(back.listener.reference_index == run.listener.reference_index);
}

TEST_CASE("bell config by material") {
  auto f = KeyValueFile::parse("material = Copper\nradius_m = 0.05\n");
  const auto b = read_bell_config(f, presets::aluminum_bell());
  CHECK(b.density == 8920.0);
  CHECK(b.radius_m == 0.05);
  auto g = KeyValueFile::parse("material = Mithril\n");
  CHECK_THROWS_AS(read_bell_config(g, presets::aluminum_bell()), ConfigError);
}

TEST_CASE("missing config file raises an I/O error naming the path") {
  try {
    load_string_run("/nonexistent/run.cfg");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/run.cfg") != std::string::npos);
  }
}
