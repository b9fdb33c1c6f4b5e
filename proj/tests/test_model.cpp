#include <cmath>

#include "doctest.h"
#include "vibra/errors.hpp"
#include "vibra/model.hpp"
#include "vibra/presets.hpp"

using namespace vibra;

TEST_CASE("wave speed of the nylon B3 string") {
  CHECK(wave_speed(60.0, 5.82e-4) == doctest::Approx(321.08).epsilon(1e-4));
  CHECK(wave_speed(42.86, 4.30e-4) == doctest::Approx(315.71).epsilon(1e-4));
  CHECK(wave_speed(7.5, 7.5) == 1.0);
}

TEST_CASE("wave speed is positively homogeneous in sqrt(T)") {
  for (double k : {0.5, 2.0, 3.7}) {
    CHECK(wave_speed(k * k * 50.0, 4e-4) == doctest::Approx(k * wave_speed(50.0, 4e-4)));
  }
}

TEST_CASE("wave speed rejects nonpositive input") {
  CHECK_THROWS_AS(wave_speed(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(wave_speed(1.0, -1.0), DomainError);
}

TEST_CASE("fundamental frequency") {
  CHECK(fundamental_frequency(0.65, 60.0, 5.82e-4) == doctest::Approx(246.98).epsilon(1e-4));
  CHECK(fundamental_frequency(0.655, 45.02, 4.30e-4) == doctest::Approx(247.0).epsilon(1e-3));
  CHECK(fundamental_frequency(0.5, 1.0, 1.0) == 1.0);
  CHECK(fundamental_frequency(1.3, 60.0, 5.82e-4) ==
        doctest::Approx(0.5 * fundamental_frequency(0.65, 60.0, 5.82e-4)));
  CHECK_THROWS_AS(fundamental_frequency(-1.0, 60.0, 5.82e-4), DomainError);
}

TEST_CASE("bending rigidity") {
  CHECK(bending_rigidity(6.2e10, 8e-4, 0.3) == doctest::Approx(2.907).epsilon(1e-3));
  CHECK(bending_rigidity(3e9, 2e-3, 0.0) == doctest::Approx(3e9 * 8e-9 / 12.0));
  CHECK(bending_rigidity(12.0, 1.0, 0.0) == 1.0);
  CHECK(bending_rigidity(6.2e10, 9e-4, 0.3) > bending_rigidity(6.2e10, 8e-4, 0.3));
  CHECK(bending_rigidity(7e10, 8e-4, 0.3) > bending_rigidity(6.2e10, 8e-4, 0.3));
  CHECK_THROWS_AS(bending_rigidity(6.2e10, 8e-4, 1.0), DomainError);
}

TEST_CASE("material table") {
  REQUIRE(builtin_materials().size() == 4);
  const auto& al = find_material("Aluminum");
  CHECK(al.density == 2700.0);
  CHECK(al.youngs_modulus == 62e9);
  CHECK(al.poisson_ratio_range.lo == 0.24);
  CHECK(al.poisson_ratio_range.hi == 0.33);
  const auto& cu = find_material("Copper");
  CHECK(cu.density == 8920.0);
  CHECK(cu.youngs_modulus == 128e9);
  CHECK(cu.poisson_ratio_range.midpoint() == doctest::Approx(0.33));
  CHECK_NOTHROW(find_material("Steel"));
  CHECK_NOTHROW(find_material("Brass"));
  CHECK_THROWS_AS(find_material("Unobtainium"), NotFoundError);
  for (const auto& m : builtin_materials()) {
    CHECK(m.density > 0.0);
    CHECK(m.youngs_modulus > 0.0);
    CHECK(m.poisson_ratio_range.lo <= m.poisson_ratio_range.hi);
  }
}

TEST_CASE("bell from material uses the midpoint Poisson ratio") {
  const auto b = bell_from_material(find_material("Aluminum"), 0.04, 8e-4, 10.0);
  CHECK(b.poisson_ratio == doctest::Approx(0.285));
  CHECK_NOTHROW(b.validate());
}

TEST_CASE("string config validation") {
  auto c = presets::b3_string();
  CHECK_NOTHROW(c.validate());
  CHECK(c.dx() == doctest::Approx(0.65 / 80.0));
  CHECK(c.duration_s() == doctest::Approx(1.0));
  auto bad = c;
  bad.pluck_position_m = 0.65;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.node_count = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.tension_n = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = c;
  bad.damping = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("bell config validation") {
  auto b = presets::aluminum_bell();
  CHECK_NOTHROW(b.validate());
  b.thickness_m = 0.005;
  CHECK_THROWS_AS(b.validate(), ConfigError);
  b = presets::aluminum_bell();
  b.poisson_ratio = 0.5;
  CHECK_THROWS_AS(b.validate(), ConfigError);
}

TEST_CASE("default listener sits above the node nearest the pluck") {
  const auto c = presets::reference_string();
  const auto g = default_listener(c);
  CHECK(g.reference_index == 22);  // 0.18 / (0.655 / 79) = 21.7
  CHECK(g.standoff_m == 1.0);
  CHECK(g.air_density == 1.2);
  CHECK(g.sound_speed == 343.0);
  ListenerGeometry off = g;
  off.reference_index = c.node_count;
  CHECK_THROWS_AS(off.validate(c.node_count), ConfigError);
}

TEST_CASE("tension from hanging mass") {
  CHECK(tension_from_mass(1.0, 9.81) == doctest::Approx(9.81));
  CHECK_THROWS_AS(tension_from_mass(0.0), DomainError);
}

TEST_CASE("presets by name") {
  for (const auto& name : presets::string_preset_names()) {
    CHECK_NOTHROW(presets::string_preset(name).validate());
  }
  CHECK(presets::guitar_validation().duration_s() == doctest::Approx(3.0).epsilon(1e-4));
  CHECK_THROWS_AS(presets::string_preset("banjo"), NotFoundError);
  CHECK_THROWS_AS(presets::bell_preset("bronze"), NotFoundError);
}
