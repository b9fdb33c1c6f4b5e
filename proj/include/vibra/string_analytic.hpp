#pragma once

#include <cstddef>
#include <vector>

#include "vibra/model.hpp"

namespace vibra {

/// Truncated modal series y(x, t) = sum A_n cos(omega_n t) sin(n pi x / L)
/// of the undamped plucked string.
struct ModalExpansion {
  std::size_t mode_count = 0;
  std::vector<double> coefficients;  // A_1 .. A_N (m)
  std::vector<double> omega;         // rad/s
  double length = 0.0;
};

/// Fourier sine coefficients of the triangular pluck:
///   A_n = 2 h L^2 / (pi^2 n^2 x_p (L - x_p)) sin(n pi x_p / L).
ModalExpansion modal_coefficients(const StringConfig& config, std::size_t mode_count = 50);

double analytic_displacement(const ModalExpansion& expansion, double x, double t);

/// [f1, 2 f1, ..., count f1].
std::vector<double> harmonic_frequencies(double f1, std::size_t count);

}  // namespace vibra
