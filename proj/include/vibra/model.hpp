#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vibra {

/// Physical and discretization parameters for one plucked-string run.
/// All quantities are SI.
struct StringConfig {
  double length_m = 0.65;
  double tension_n = 60.0;
  double linear_density = 5.82e-4;  // kg/m
  double damping = 0.0;             // fluid damping sigma, kg/(m s)
  double pluck_position_m = 0.18;
  double pluck_amplitude_m = 3.0e-4;
  std::size_t node_count = 81;  // includes both fixed ends
  double dt_s = 1.0e-5;
  std::size_t step_count = 100000;

  /// Node spacing L / (node_count - 1).
  double dx() const { return length_m / static_cast<double>(node_count - 1); }
  double duration_s() const { return dt_s * static_cast<double>(step_count); }

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Thin hemispherical shell (bicycle bell).
struct BellConfig {
  double radius_m = 0.04;
  double thickness_m = 8.0e-4;
  double density = 2700.0;
  double youngs_modulus = 6.2e10;
  double poisson_ratio = 0.3;
  double damping_sigma = 10.0;  // kg/(m^2 s)

  void validate() const;
};

struct Interval {
  double lo;
  double hi;
  double midpoint() const { return 0.5 * (lo + hi); }
};

struct Material {
  std::string name;
  double density;         // kg/m^3
  double youngs_modulus;  // Pa
  Interval poisson_ratio_range;
};

/// Where the radiated pressure is observed: `standoff_m` above node
/// `reference_index`, perpendicular to the string.
struct ListenerGeometry {
  double standoff_m = 1.0;
  std::size_t reference_index = 0;
  double air_density = 1.2;    // rho0
  double sound_speed = 343.0;  // c0

  void validate(std::size_t node_count) const;
};

/// Listener 1 m above the grid node closest to the pluck point.
ListenerGeometry default_listener(const StringConfig& config);

double wave_speed(double tension, double linear_density);
double fundamental_frequency(double length, double tension, double linear_density);

/// Plate bending rigidity D = E h^3 / (12 (1 - nu^2)).
double bending_rigidity(double youngs_modulus, double thickness, double poisson_ratio);

const std::vector<Material>& builtin_materials();

/// Case-sensitive lookup; throws NotFoundError.
const Material& find_material(std::string_view name);

/// Bell config built from a table material, using the midpoint Poisson ratio.
BellConfig bell_from_material(const Material& material, double radius_m,
                              double thickness_m, double damping_sigma);

/// Tension produced by hanging mass `mass_kg` over a pulley.
double tension_from_mass(double mass_kg, double gravity = 9.81);

}  // namespace vibra
