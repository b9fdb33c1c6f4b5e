#include "vibra/model.hpp"

#include <cmath>
#include <string>

#include "vibra/errors.hpp"

namespace vibra {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void StringConfig::validate() const {
  require(positive_finite(length_m), "length_m must be positive");
  require(positive_finite(tension_n), "tension_n must be positive");
  require(positive_finite(linear_density), "linear_density must be positive");
  require(std::isfinite(damping) && damping >= 0.0, "damping must be nonnegative");
  require(pluck_position_m > 0.0 && pluck_position_m < length_m,
          "pluck_position_m must lie strictly inside (0, length_m)");
  // A zero amplitude is accepted: it yields the rest state.
  require(std::isfinite(pluck_amplitude_m) && pluck_amplitude_m >= 0.0,
          "pluck_amplitude_m must be nonnegative");
  require(node_count >= 3, "node_count must be at least 3");
  require(positive_finite(dt_s), "dt_s must be positive");
  require(step_count >= 2, "step_count must be at least 2");
}

void BellConfig::validate() const {
  require(positive_finite(radius_m), "radius_m must be positive");
  require(positive_finite(thickness_m), "thickness_m must be positive");
  require(thickness_m / radius_m < 0.1, "thickness_m / radius_m must be below 0.1 (thin shell)");
  require(positive_finite(density), "density must be positive");
  require(positive_finite(youngs_modulus), "youngs_modulus must be positive");
  require(poisson_ratio >= 0.0 && poisson_ratio < 0.5, "poisson_ratio must lie in [0, 0.5)");
  require(std::isfinite(damping_sigma) && damping_sigma >= 0.0,
          "damping_sigma must be nonnegative");
}

void ListenerGeometry::validate(std::size_t node_count) const {
  require(positive_finite(standoff_m), "standoff_m must be positive");
  require(reference_index < node_count, "reference_index outside the grid");
  require(positive_finite(air_density), "air_density must be positive");
  require(positive_finite(sound_speed), "sound_speed must be positive");
}

ListenerGeometry default_listener(const StringConfig& config) {
  ListenerGeometry g;
  const double index = std::round(config.pluck_position_m / config.dx());
  g.reference_index = static_cast<std::size_t>(index);
  if (g.reference_index >= config.node_count) g.reference_index = config.node_count - 1;
  return g;
}

double wave_speed(double tension, double linear_density) {
  if (!(tension > 0.0) || !(linear_density > 0.0)) {
    throw DomainError("wave_speed: tension and linear density must be positive");
  }
  return std::sqrt(tension / linear_density);
}

double fundamental_frequency(double length, double tension, double linear_density) {
  if (!(length > 0.0)) throw DomainError("fundamental_frequency: length must be positive");
  return wave_speed(tension, linear_density) / (2.0 * length);
}

double bending_rigidity(double youngs_modulus, double thickness, double poisson_ratio) {
  if (!(youngs_modulus > 0.0) || !(thickness > 0.0)) {
    throw DomainError("bending_rigidity: E and h must be positive");
  }
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 1.0)) {
    throw DomainError("bending_rigidity: Poisson ratio must lie in [0, 1)");
  }
  return youngs_modulus * thickness * thickness * thickness /
         (12.0 * (1.0 - poisson_ratio * poisson_ratio));
}

const std::vector<Material>& builtin_materials() {
  static const std::vector<Material> table = {
      {"Steel", 7850.0, 210e9, {0.24, 0.30}},
      {"Aluminum", 2700.0, 62e9, {0.24, 0.33}},
      {"Copper", 8920.0, 128e9, {0.33, 0.33}},
      // E is quoted as 80-100 GPa; the midpoint is stored.
      {"Brass", 8470.0, 90e9, {0.37, 0.37}},
  };
  return table;
}

const Material& find_material(std::string_view name) {
  for (const auto& m : builtin_materials()) {
    if (m.name == name) return m;
  }
  throw NotFoundError("unknown material: " + std::string(name));
}

BellConfig bell_from_material(const Material& material, double radius_m, double thickness_m,
                              double damping_sigma) {
  BellConfig c;
  c.radius_m = radius_m;
  c.thickness_m = thickness_m;
  c.density = material.density;
  c.youngs_modulus = material.youngs_modulus;
  c.poisson_ratio = material.poisson_ratio_range.midpoint();
  c.damping_sigma = damping_sigma;
  return c;
}

double tension_from_mass(double mass_kg, double gravity) {
  if (!(mass_kg > 0.0) || !(gravity > 0.0)) {
    throw DomainError("tension_from_mass: mass and gravity must be positive");
  }
  return mass_kg * gravity;
}

}  // namespace vibra
