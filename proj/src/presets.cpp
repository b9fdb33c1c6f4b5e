#include "vibra/presets.hpp"

#include <string>

#include "vibra/errors.hpp"

namespace vibra::presets {

StringConfig b3_string() {
  StringConfig c;
  c.length_m = 0.65;
  c.tension_n = 60.0;
  c.linear_density = 5.82e-4;
  c.damping = 0.0;
  c.pluck_position_m = 0.18;
  c.pluck_amplitude_m = 3.0e-4;
  c.node_count = 81;
  c.dt_s = 1.0e-5;
  c.step_count = 100000;
  return c;
}

StringConfig reference_string() {
  StringConfig c;
  c.length_m = 0.655;
  c.tension_n = 42.86;
  c.linear_density = 4.30e-4;
  c.damping = 0.0;
  c.pluck_position_m = 0.18;
  c.pluck_amplitude_m = 3.0e-4;
  c.node_count = 80;
  c.dt_s = 1.0e-5;
  c.step_count = 100000;
  return c;
}

StringConfig tension_sweep_base() {
  StringConfig c = reference_string();
  c.pluck_position_m = 0.3275;
  return c;
}

StringConfig guitar_validation() {
  StringConfig c = reference_string();
  c.tension_n = 45.02;
  c.damping = 0.0013;
  c.dt_s = 9.65e-6;
  c.step_count = 310881;  // 3 s
  return c;
}

BellConfig aluminum_bell() {
  BellConfig b;
  b.radius_m = 0.04;
  b.thickness_m = 8.0e-4;
  b.density = 2700.0;
  b.youngs_modulus = 6.2e10;
  b.poisson_ratio = 0.3;
  b.damping_sigma = 10.0;
  return b;
}

StringConfig string_preset(std::string_view name) {
  if (name == "b3") return b3_string();
  if (name == "reference") return reference_string();
  if (name == "tension-sweep") return tension_sweep_base();
  if (name == "guitar") return guitar_validation();
  throw NotFoundError("unknown string preset: " + std::string(name));
}

BellConfig bell_preset(std::string_view name) {
  if (name == "aluminum") return aluminum_bell();
  throw NotFoundError("unknown bell preset: " + std::string(name));
}

std::vector<std::string> string_preset_names() {
  return {"b3", "reference", "tension-sweep", "guitar"};
}

}  // namespace vibra::presets
