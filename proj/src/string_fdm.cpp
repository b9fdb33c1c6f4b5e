#include "vibra/string_fdm.hpp"

#include <cmath>
#include <string>

#include "vibra/errors.hpp"

namespace vibra {

namespace {

void check_lengths(std::span<const double> prev, std::span<const double> curr,
                   std::span<const double> next) {
  if (prev.size() != curr.size() || next.size() != curr.size()) {
    throw ContractViolation("FDM step: prev, curr and next must have equal length");
  }
  if (curr.size() < 3) throw ContractViolation("FDM step: need at least 3 nodes");
}

// Multipliers of the damped recursion, arranged so that sigma = 0 gives
// exactly the undamped arithmetic: spring = gamma/alpha, centre = 2 (1 - spring)
// (mu/alpha is exactly 1 then) and past = theta/alpha = -1.
struct StepWeights {
  double spring;
  double centre;
  double past;
};

StepWeights weights_for(const FdmCoefficients& c, double linear_density) {
  if (!(c.alpha > 0.0)) throw DomainError("FDM: alpha must be positive");
  const double spring = c.gamma / c.alpha;
  return {spring, 2.0 * (linear_density / c.alpha - spring), c.theta / c.alpha};
}

void apply_weights(std::span<const double> prev, std::span<const double> curr,
                   const StepWeights& w, std::span<double> next) {
  const std::size_t n = curr.size();
  next[0] = 0.0;
  next[n - 1] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    next[i] = w.spring * (curr[i - 1] + curr[i + 1]) + w.centre * curr[i] + w.past * prev[i];
  }
}

}  // namespace

FdmCoefficients fdm_coefficients(double tension, double linear_density, double damping, double dx,
                                 double dt) {
  const double half_damp = damping * dt / 2.0;
  return {tension * dt * dt / (dx * dx), linear_density + half_damp, -linear_density + half_damp};
}

FdmCoefficients fdm_coefficients(const StringConfig& config) {
  return fdm_coefficients(config.tension_n, config.linear_density, config.damping, config.dx(),
                          config.dt_s);
}

double courant_gamma(const StringConfig& config) {
  const auto c = fdm_coefficients(config);
  return c.gamma / config.linear_density;
}

double pluck_shape(double x, double length, double pluck_position, double amplitude) {
  if (x <= 0.0 || x >= length) return 0.0;
  if (x <= pluck_position) return amplitude * x / pluck_position;
  return amplitude * (length - x) / (length - pluck_position);
}

std::vector<double> pluck_profile(const StringConfig& config) {
  config.validate();
  const std::size_t n = config.node_count;
  const double dx = config.dx();
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    u[i] = pluck_shape(static_cast<double>(i) * dx, config.length_m, config.pluck_position_m,
                       config.pluck_amplitude_m);
  }
  return u;
}

void fdm_step_undamped(std::span<const double> prev, std::span<const double> curr, double gamma,
                       std::span<double> next) {
  check_lengths(prev, curr, next);
  apply_weights(prev, curr, {gamma, 2.0 * (1.0 - gamma), -1.0}, next);
}

std::vector<double> fdm_step_undamped(std::span<const double> prev, std::span<const double> curr,
                                      double gamma) {
  std::vector<double> next(curr.size());
  fdm_step_undamped(prev, curr, gamma, next);
  return next;
}

std::vector<double> fdm_step_damped(std::span<const double> prev, std::span<const double> curr,
                                    const FdmCoefficients& coeffs, double tension, double dx,
                                    double dt, double linear_density) {
  const double expected_gamma = tension * dt * dt / (dx * dx);
  if (std::abs(coeffs.gamma - expected_gamma) > 1e-12 * std::abs(expected_gamma)) {
    throw ContractViolation("fdm_step_damped: gamma inconsistent with T, dx, dt");
  }
  std::vector<double> next(curr.size());
  check_lengths(prev, curr, next);
  apply_weights(prev, curr, weights_for(coeffs, linear_density), next);
  return next;
}

void run_fdm(const StringConfig& config, const RowSink& sink) {
  config.validate();
  const std::size_t n = config.node_count;
  const auto weights = weights_for(fdm_coefficients(config), config.linear_density);
  const double limit = 1e6 * config.pluck_amplitude_m;

  std::vector<double> prev = pluck_profile(config);
  std::vector<double> curr = prev;
  std::vector<double> next(n);
  sink(0, prev);
  sink(1, curr);
  for (std::size_t k = 2; k < config.step_count; ++k) {
    apply_weights(prev, curr, weights, next);
    for (double v : next) {
      if (!std::isfinite(v) || std::abs(v) > limit) {
        throw DivergedError(k, "FDM diverged at step " + std::to_string(k));
      }
    }
    sink(k, next);
    std::swap(prev, curr);
    std::swap(curr, next);
  }
}

WaveHistory simulate_fdm(const StringConfig& config) {
  config.validate();
  WaveHistory history(config.node_count, config.step_count, config.dt_s, config.dx());
  run_fdm(config, history.recorder());
  return history;
}

double cfl_limit(double wave_speed, double dx) {
  if (!(wave_speed > 0.0) || !(dx > 0.0)) throw DomainError("cfl_limit: inputs must be positive");
  return dx / wave_speed;
}

std::vector<double> fdm_energy(const WaveHistory& history, double tension, double linear_density) {
  const std::size_t steps = history.step_count();
  const std::size_t n = history.node_count();
  const double dt = history.dt_s();
  const double dx = history.dx_m();
  std::vector<double> energy;
  if (steps < 2) return energy;
  energy.reserve(steps - 1);
  for (std::size_t k = 0; k + 1 < steps; ++k) {
    const auto a = history.row(k);
    const auto b = history.row(k + 1);
    double kinetic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = (b[i] - a[i]) / dt;
      kinetic += v * v;
    }
    double potential = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      potential += ((a[i + 1] - a[i]) / dx) * ((b[i + 1] - b[i]) / dx);
    }
    energy.push_back(0.5 * linear_density * kinetic * dx + 0.5 * tension * potential * dx);
  }
  return energy;
}

}  // namespace vibra
