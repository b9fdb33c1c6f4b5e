#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "vibra/model.hpp"
#include "vibra/tridiagonal.hpp"
#include "vibra/wave_history.hpp"

namespace vibra {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Two-node linear element: consistent mass and stiffness.
struct ElementMatrices {
  Matrix2 mass_local;
  Matrix2 stiffness_local;
};

/// (rho dx / 6) [[2, 1], [1, 2]]
Matrix2 local_mass(double linear_density, double dx);
/// (T / dx) [[1, -1], [-1, 1]]
Matrix2 local_stiffness(double tension, double dx);
ElementMatrices element_matrices(double tension, double linear_density, double dx);

/// Global tridiagonal mass and stiffness of the string.
struct GlobalSystem {
  TridiagonalMatrix mass;
  TridiagonalMatrix stiffness;
  bool boundary_applied = false;

  std::size_t size() const { return mass.size(); }
};

/// Sums the element contributions over shared nodes; no boundary handling.
GlobalSystem assemble_unconstrained(const StringConfig& config);

/// Zeroes the first/last rows and columns of M and K and puts 1 on their
/// diagonals (fixed ends).
void apply_fixed_ends(GlobalSystem& system);

GlobalSystem assemble_global(const StringConfig& config);

/// Central-difference update 2 u - u_prev - dt^2 M^{-1} K u, with the mass
/// solve done by a tridiagonal factorization. Boundary entries of the result
/// are forced to zero after the solve.
std::vector<double> fem_step(std::span<const double> prev, std::span<const double> curr,
                             const GlobalSystem& system, double dt);

/// Reusable stepper: factorizes M once.
class FemIntegrator {
 public:
  FemIntegrator(const GlobalSystem& system, double dt);

  void step(std::span<const double> prev, std::span<const double> curr,
            std::span<double> next) const;

 private:
  const GlobalSystem* system_;
  TridiagonalFactorization mass_factor_;
  double dt2_;
  mutable std::vector<double> work_;
};

void run_fem(const StringConfig& config, const RowSink& sink);
WaveHistory simulate_fem(const StringConfig& config);

/// Discrete energy of the central-difference scheme at half steps:
///   E = 1/2 v^T M v + 1/2 u[k]^T K u[k+1],  v = (u[k+1] - u[k]) / dt.
std::vector<double> fem_energy(const WaveHistory& history, const GlobalSystem& system);

/// Time-step bound dx / (c sqrt(3)) of the consistent-mass scheme.
double fem_stability_estimate(double wave_speed, double dx);

}  // namespace vibra
