#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vibra/errors.hpp"
#include "vibra/presets.hpp"
#include "vibra/string_fdm.hpp"

using namespace vibra;

namespace {

StringConfig small_config() {
  StringConfig c;
  c.length_m = 1.0;
  c.tension_n = 1.0;
  c.linear_density = 1.0;
  c.pluck_position_m = 0.25;
  c.pluck_amplitude_m = 0.01;
  c.node_count = 41;
  c.dt_s = 0.5 * c.dx();
  c.step_count = 400;
  return c;
}

double smooth_bump(double x) {
  const double s = (x - 0.5) / 0.05;
  return std::exp(-s * s);
}

}  // namespace

TEST_CASE("pluck profile is the sampled triangle") {
  StringConfig c = small_config();
  c.node_count = 9;  // dx = 0.125, apex on node 2
  const auto u = pluck_profile(c);
  CHECK(u.front() == 0.0);
  CHECK(u.back() == 0.0);
  CHECK(u[2] == doctest::Approx(0.01));
  CHECK(u[1] == doctest::Approx(0.005));
  CHECK(pluck_shape(0.125, 1.0, 0.25, 0.01) == doctest::Approx(0.005));
  CHECK(pluck_shape(0.25, 1.0, 0.25, 0.01) == 0.01);
  CHECK(pluck_shape(0.0, 1.0, 0.25, 0.01) == 0.0);
  CHECK(pluck_shape(1.0, 1.0, 0.25, 0.01) == 0.0);
}

TEST_CASE("undamped step: rest state and hand-evaluated stencil") {
  const std::vector<double> zero(5, 0.0);
  CHECK(fdm_step_undamped(zero, zero, 0.5) == zero);
  const auto next = fdm_step_undamped(std::vector<double>{0, 0, 0}, std::vector<double>{0, 1, 0}, 0.5);
  CHECK(next == std::vector<double>{0, 1, 0});
  CHECK_THROWS_AS(fdm_step_undamped(std::vector<double>{0, 0}, std::vector<double>{0, 0, 0}, 0.5),
                  ContractViolation);
}

TEST_CASE("gamma = 1 reproduces d'Alembert translation exactly") {
  const std::size_t n = 101;
  const double dx = 1.0 / static_cast<double>(n - 1);
  auto exact = [&](std::size_t i, int k) {
    const double x = static_cast<double>(i) * dx;
    const double shift = static_cast<double>(k) * dx;  // c dt = dx
    return 0.5 * (smooth_bump(x - shift) + smooth_bump(x + shift));
  };
  std::vector<double> prev(n), curr(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    prev[i] = exact(i, 0);
    curr[i] = exact(i, 1);
  }
  for (int k = 2; k <= 20; ++k) {
    auto next = fdm_step_undamped(prev, curr, 1.0);
    for (std::size_t i = 1; i + 1 < n; ++i) CHECK(std::abs(next[i] - exact(i, k)) < 1e-14);
    prev = std::move(curr);
    curr = std::move(next);
  }
}

TEST_CASE("damped coefficients") {
  const auto c = fdm_coefficients(45.02, 4.3e-4, 0.0013, 0.655 / 79.0, 9.65e-6);
  CHECK(c.alpha == doctest::Approx(4.300063e-4).epsilon(1e-7));
  CHECK(c.theta == doctest::Approx(-4.299937e-4).epsilon(1e-7));
  CHECK(c.theta < c.alpha);
  const auto undamped = fdm_coefficients(45.02, 4.3e-4, 0.0, 0.01, 1e-5);
  CHECK(undamped.theta == -4.3e-4);
  CHECK(undamped.alpha == 4.3e-4);
  CHECK(undamped.gamma == doctest::Approx(45.02 * 1e-10 / 1e-4));
}

TEST_CASE("damped step with sigma = 0 is bit-identical to the undamped step") {
  const StringConfig c = presets::reference_string();
  const auto coeffs = fdm_coefficients(c);
  const auto u0 = pluck_profile(c);
  auto u1 = u0;
  u1[10] += 1e-6;
  const auto damped = fdm_step_damped(u0, u1, coeffs, c.tension_n, c.dx(), c.dt_s, c.linear_density);
  const auto plain = fdm_step_undamped(u0, u1, coeffs.gamma / c.linear_density);
  CHECK(damped == plain);
}

TEST_CASE("damped step rejects nonpositive alpha and inconsistent gamma") {
  const std::vector<double> z(4, 0.0);
  FdmCoefficients bad{1e-6, 0.0, -1e-4};
  CHECK_THROWS_AS(fdm_step_damped(z, z, bad, 1.0, 1.0, 1e-3, 1e-4), DomainError);
  FdmCoefficients off{2e-6, 1e-4, -1e-4};
  CHECK_THROWS_AS(fdm_step_damped(z, z, off, 1.0, 1.0, 1e-3, 1e-4), ContractViolation);
}

TEST_CASE("simulation contract: initial rows, fixed ends, determinism") {
  const StringConfig c = small_config();
  const auto h = simulate_fdm(c);
  const auto p = pluck_profile(c);
  REQUIRE(h.step_count() == c.step_count);
  for (std::size_t i = 0; i < c.node_count; ++i) {
    CHECK(h.at(0, i) == p[i]);
    CHECK(h.at(1, i) == p[i]);
  }
  for (std::size_t k = 0; k < h.step_count(); ++k) {
    CHECK(h.at(k, 0) == 0.0);
    CHECK(h.at(k, c.node_count - 1) == 0.0);
  }
  CHECK(simulate_fdm(c).data() == h.data());
}

TEST_CASE("zero pluck gives an identically zero history") {
  StringConfig c = small_config();
  c.pluck_amplitude_m = 0.0;
  const auto h = simulate_fdm(c);
  CHECK(std::all_of(h.data().begin(), h.data().end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("time step above dx/c diverges with the failing step index") {
  StringConfig c = small_config();
  c.dt_s = 1.05 * c.dx();
  c.step_count = 20000;
  try {
    simulate_fdm(c);
    FAIL("expected divergence");
  } catch (const DivergedError& e) {
    CHECK(e.step() > 1);
    CHECK(e.step() < c.step_count);
  }
}

TEST_CASE("marginal gamma = 1 stays bounded") {
  StringConfig c = presets::reference_string();
  c.dt_s = cfl_limit(wave_speed(c.tension_n, c.linear_density), c.dx());
  c.step_count = static_cast<std::size_t>(0.2 / c.dt_s);
  CHECK_NOTHROW(simulate_fdm(c));
}

TEST_CASE("midpoint pluck on an odd grid stays mirror symmetric") {
  StringConfig c = small_config();
  c.pluck_position_m = 0.5;
  const auto h = simulate_fdm(c);
  const std::size_t n = c.node_count;
  double worst = 0.0;
  for (std::size_t k = 0; k < h.step_count(); ++k) {
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(h.at(k, i) - h.at(k, n - 1 - i)));
  }
  CHECK(worst <= 1e-12 * c.pluck_amplitude_m);
}

TEST_CASE("the stencil commutes with reflection exactly") {
  const std::size_t n = 31;
  std::vector<double> prev(n), curr(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = static_cast<double>(std::min(i, n - 1 - i));
    prev[i] = 1e-3 * d;
    curr[i] = 1e-3 * d * (1.0 - 1e-3 * d);
  }
  for (int k = 0; k < 500; ++k) {
    auto next = fdm_step_undamped(prev, curr, 0.7);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(next[i] == next[n - 1 - i]);
    prev = std::move(curr);
    curr = std::move(next);
  }
}

TEST_CASE("discrete energy is conserved without damping and decays with it") {
  StringConfig c = presets::reference_string();
  c.dt_s = std::sqrt(0.5) * c.dx() / wave_speed(c.tension_n, c.linear_density);
  c.step_count = 10001;
  const auto e = fdm_energy(simulate_fdm(c), c.tension_n, c.linear_density);
  double drift = 0.0;
  for (double v : e) drift = std::max(drift, std::abs(v - e.front()) / e.front());
  CHECK(drift < 1e-3);

  c.damping = 0.05;
  const auto d = fdm_energy(simulate_fdm(c), c.tension_n, c.linear_density);
  for (std::size_t k = 2; k < d.size(); ++k) CHECK(d[k] <= d[k - 1] * (1.0 + 1e-12));
  CHECK(d.back() < 0.5 * d[1]);
}

TEST_CASE("CFL limit") {
  CHECK(cfl_limit(1.0, 1.0) == 1.0);
  CHECK(cfl_limit(315.69, 0.655 / 79.0) == doctest::Approx(2.63e-5).epsilon(2e-3));
  CHECK_THROWS_AS(cfl_limit(0.0, 1.0), DomainError);
}
