#include "vibra/string_analytic.hpp"

#include <cmath>
#include <numbers>

#include "vibra/errors.hpp"

namespace vibra {

ModalExpansion modal_coefficients(const StringConfig& config, std::size_t mode_count) {
  if (mode_count < 1) throw ContractViolation("modal_coefficients: mode_count must be >= 1");
  const double pi = std::numbers::pi;
  const double length = config.length_m;
  const double xp = config.pluck_position_m;
  const double h = config.pluck_amplitude_m;
  const double c = wave_speed(config.tension_n, config.linear_density);

  ModalExpansion out;
  out.mode_count = mode_count;
  out.length = length;
  out.coefficients.reserve(mode_count);
  out.omega.reserve(mode_count);
  for (std::size_t i = 1; i <= mode_count; ++i) {
    const double n = static_cast<double>(i);
    // exact zero for even modes of a midpoint pluck (sin(k pi) is not 0 in floating point)
    const bool node_at_pluck = std::abs(2.0 * xp - length) == 0.0 && i % 2 == 0;
    const double s = node_at_pluck ? 0.0 : std::sin(n * pi * xp / length);
    out.coefficients.push_back(2.0 * h * length * length / (pi * pi * n * n * xp * (length - xp)) * s);
    out.omega.push_back(n * pi * c / length);
  }
  return out;
}

double analytic_displacement(const ModalExpansion& expansion, double x, double t) {
  if (x <= 0.0 || x >= expansion.length) return 0.0;
  const double pi = std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < expansion.mode_count; ++i) {
    const double n = static_cast<double>(i + 1);
    sum += expansion.coefficients[i] * std::cos(expansion.omega[i] * t) *
           std::sin(n * pi * x / expansion.length);
  }
  return sum;
}

std::vector<double> harmonic_frequencies(double f1, std::size_t count) {
  if (!(f1 > 0.0)) throw DomainError("harmonic_frequencies: f1 must be positive");
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = f1 * static_cast<double>(n + 1);
  return out;
}

}  // namespace vibra
