#pragma once

#include <cstddef>
#include <vector>

namespace vibra {

/// Scalar field on a theta x phi grid of the unit hemisphere.
/// Row i sits at theta_start + i * dtheta; column j at j * dphi with
/// dphi = 2 pi / n_phi (periodic).
struct ShellGrid {
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  double theta_start = 0.0;
  double dtheta = 0.0;
  std::vector<double> values;  // row-major, n_theta * n_phi

  ShellGrid() = default;
  ShellGrid(std::size_t rows, std::size_t cols, double theta0, double dth)
      : n_theta(rows), n_phi(cols), theta_start(theta0), dtheta(dth), values(rows * cols, 0.0) {}

  double dphi() const;
  double theta(std::size_t i) const { return theta_start + dtheta * static_cast<double>(i); }
  double phi(std::size_t j) const { return dphi() * static_cast<double>(j); }
  double& at(std::size_t i, std::size_t j) { return values[i * n_phi + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * n_phi + j]; }

  /// True when the last row lies on the rim theta = pi/2.
  bool ends_at_rim() const;
};

/// Grid of `rows` theta rows ending exactly at pi/2, starting at theta_start.
ShellGrid rim_grid(double theta_start, std::size_t rows, std::size_t n_phi);

/// Finite-difference biharmonic on the unit sphere (multiply by 1/R^4 for
/// radius R). Uses the 9-term expansion
///   u_tttt + 2 cot u_ttt + (cos^2 - 2)/sin^2 u_tt + cot/sin^2 u_t
///   + u_pppp/sin^4 + 2 (1 + cos^2)/sin^4 u_pp
///   + 2/sin^2 u_ttpp - 2 cot/sin^2 u_tpp
/// with centred second-order stencils. phi wraps; at the rim the free edge
/// du/dtheta = 0 is imposed by mirror ghosts u[N-1+m] = u[N-1-m].
///
/// The result holds rows 2 .. n_theta-1 of the input (rows 2 .. n_theta-3
/// when the grid does not reach the rim), with matching theta_start.
/// Throws DomainError if theta_start < dtheta (pole inside the stencil).
ShellGrid biharmonic_apply(const ShellGrid& field);

}  // namespace vibra
