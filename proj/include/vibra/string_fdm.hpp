#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vibra/model.hpp"
#include "vibra/wave_history.hpp"

namespace vibra {

/// Coefficients of the damped explicit recursion
///   u[k+1] = gamma/alpha (u[n-1] + u[n+1]) + 2 (mu - gamma)/alpha u[n] + theta/alpha u[k-1]
/// with gamma = T dt^2 / dx^2, alpha = mu + sigma dt / 2, theta = -mu + sigma dt / 2
/// (all in kg/m).
struct FdmCoefficients {
  double gamma;
  double alpha;
  double theta;
};

FdmCoefficients fdm_coefficients(double tension, double linear_density, double damping,
                                 double dx, double dt);
FdmCoefficients fdm_coefficients(const StringConfig& config);

/// Courant number squared c^2 dt^2 / dx^2 of the undamped scheme.
double courant_gamma(const StringConfig& config);

/// Triangular pluck sampled at the grid nodes; both ends exactly zero.
std::vector<double> pluck_profile(const StringConfig& config);

/// Triangle value at position x (no grid involved).
double pluck_shape(double x, double length, double pluck_position, double amplitude);

/// One undamped leapfrog step. Boundary entries of the result are zero.
std::vector<double> fdm_step_undamped(std::span<const double> prev, std::span<const double> curr,
                                      double gamma);
void fdm_step_undamped(std::span<const double> prev, std::span<const double> curr, double gamma,
                       std::span<double> next);

/// One damped step. With sigma = 0 the result is bit-identical to
/// fdm_step_undamped(prev, curr, coeffs.gamma / mu).
std::vector<double> fdm_step_damped(std::span<const double> prev, std::span<const double> curr,
                                    const FdmCoefficients& coeffs, double tension, double dx,
                                    double dt, double linear_density);

/// Streams every row (starting with the two identical pluck rows) to `sink`.
/// Throws DivergedError on non-finite values or |u| > 1e6 * pluck amplitude.
void run_fdm(const StringConfig& config, const RowSink& sink);

WaveHistory simulate_fdm(const StringConfig& config);

/// Marginal time step dx / c of the undamped scheme.
double cfl_limit(double wave_speed, double dx);

/// Discrete energy of the leapfrog scheme at the half steps k + 1/2:
///   E = sum mu/2 ((u[k+1]-u[k])/dt)^2 dx + T/2 sum (D+u[k]) (D+u[k+1]) dx
/// where D+ is the forward spatial difference. It is exactly invariant
/// for the undamped recursion and non-increasing with damping.
std::vector<double> fdm_energy(const WaveHistory& history, double tension, double linear_density);

}  // namespace vibra
