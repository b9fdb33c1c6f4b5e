#include "vibra/string_fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vibra/errors.hpp"
#include "vibra/string_fdm.hpp"

namespace vibra {

Matrix2 local_mass(double linear_density, double dx) {
  const double s = linear_density * dx / 6.0;
  return {{{2.0 * s, s}, {s, 2.0 * s}}};
}

Matrix2 local_stiffness(double tension, double dx) {
  const double s = tension / dx;
  return {{{s, -s}, {-s, s}}};
}

ElementMatrices element_matrices(double tension, double linear_density, double dx) {
  return {local_mass(linear_density, dx), local_stiffness(tension, dx)};
}

GlobalSystem assemble_unconstrained(const StringConfig& config) {
  config.validate();
  const std::size_t n = config.node_count;
  const auto element = element_matrices(config.tension_n, config.linear_density, config.dx());
  GlobalSystem system{TridiagonalMatrix(n), TridiagonalMatrix(n), false};
  for (std::size_t e = 0; e + 1 < n; ++e) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        system.mass.add(e + a, e + b, element.mass_local[a][b]);
        system.stiffness.add(e + a, e + b, element.stiffness_local[a][b]);
      }
    }
  }
  return system;
}

void apply_fixed_ends(GlobalSystem& system) {
  const std::size_t n = system.size();
  for (auto* m : {&system.mass, &system.stiffness}) {
    for (std::size_t end : {std::size_t{0}, n - 1}) {
      for (std::size_t j = (end ? end - 1 : 0); j < std::min(n, end + 2); ++j) {
        m->set(end, j, 0.0);
        m->set(j, end, 0.0);
      }
      m->set(end, end, 1.0);
    }
  }
  system.boundary_applied = true;
}

GlobalSystem assemble_global(const StringConfig& config) {
  auto system = assemble_unconstrained(config);
  apply_fixed_ends(system);
  return system;
}

FemIntegrator::FemIntegrator(const GlobalSystem& system, double dt)
    : system_(&system), mass_factor_(system.mass), dt2_(dt * dt), work_(system.size()) {}

void FemIntegrator::step(std::span<const double> prev, std::span<const double> curr,
                         std::span<double> next) const {
  const std::size_t n = system_->size();
  if (prev.size() != n || curr.size() != n || next.size() != n) {
    throw ContractViolation("fem_step: vector size does not match the system");
  }
  system_->stiffness.multiply(curr, work_);
  mass_factor_.solve_in_place(work_);
  for (std::size_t i = 0; i < n; ++i) next[i] = 2.0 * curr[i] - prev[i] - dt2_ * work_[i];
  next[0] = 0.0;
  next[n - 1] = 0.0;
}

std::vector<double> fem_step(std::span<const double> prev, std::span<const double> curr,
                             const GlobalSystem& system, double dt) {
  std::vector<double> next(curr.size());
  FemIntegrator(system, dt).step(prev, curr, next);
  return next;
}

void run_fem(const StringConfig& config, const RowSink& sink) {
  config.validate();
  const auto system = assemble_global(config);
  const FemIntegrator integrator(system, config.dt_s);
  const double limit = 1e6 * config.pluck_amplitude_m;

  std::vector<double> prev = pluck_profile(config);
  std::vector<double> curr = prev;
  std::vector<double> next(config.node_count);
  sink(0, prev);
  sink(1, curr);
  for (std::size_t k = 2; k < config.step_count; ++k) {
    integrator.step(prev, curr, next);
    for (double v : next) {
      if (!std::isfinite(v) || std::abs(v) > limit) {
        throw DivergedError(k, "FEM diverged at step " + std::to_string(k));
      }
    }
    sink(k, next);
    std::swap(prev, curr);
    std::swap(curr, next);
  }
}

WaveHistory simulate_fem(const StringConfig& config) {
  config.validate();
  WaveHistory history(config.node_count, config.step_count, config.dt_s, config.dx());
  run_fem(config, history.recorder());
  return history;
}

std::vector<double> fem_energy(const WaveHistory& history, const GlobalSystem& system) {
  const std::size_t steps = history.step_count();
  const std::size_t n = history.node_count();
  if (system.size() != n) throw ContractViolation("fem_energy: system size mismatch");
  const double dt = history.dt_s();
  std::vector<double> energy;
  if (steps < 2) return energy;
  energy.reserve(steps - 1);
  std::vector<double> v(n), mv(n), ku(n);
  for (std::size_t k = 0; k + 1 < steps; ++k) {
    const auto a = history.row(k);
    const auto b = history.row(k + 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = (b[i] - a[i]) / dt;
    system.mass.multiply(v, mv);
    system.stiffness.multiply(b, ku);
    double kinetic = 0.0;
    double potential = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kinetic += v[i] * mv[i];
      potential += a[i] * ku[i];
    }
    energy.push_back(0.5 * kinetic + 0.5 * potential);
  }
  return energy;
}

double fem_stability_estimate(double wave_speed, double dx) {
  return cfl_limit(wave_speed, dx) / std::sqrt(3.0);
}

}  // namespace vibra
