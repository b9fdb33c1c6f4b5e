#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vibra/model.hpp"

namespace vibra::presets {

/// Nylon B3 string: L = 0.65 m, T = 60 N, mu = 5.82e-4 kg/m, 81 nodes,
/// dt = 1e-5 s for one second.
StringConfig b3_string();

/// Bench configuration used for the time-step and node-count studies:
/// L = 0.655 m, T = 42.86 N, mu = 4.30e-4 kg/m, pluck at 0.18 m, 80 nodes.
StringConfig reference_string();

/// Base of the tension study: reference string plucked at its midpoint.
StringConfig tension_sweep_base();

/// Damped real-guitar comparison: T = 45.02 N, sigma = 0.0013, dt = 9.65e-6 s, 3 s.
StringConfig guitar_validation();

/// Aluminium bell: R = 4 cm, h = 0.8 mm, nu = 0.3, sigma = 10.
BellConfig aluminum_bell();

StringConfig string_preset(std::string_view name);
BellConfig bell_preset(std::string_view name);
std::vector<std::string> string_preset_names();

}  // namespace vibra::presets
