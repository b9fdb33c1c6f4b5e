#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vibra/biharmonic.hpp"
#include "vibra/errors.hpp"

using namespace vibra;

namespace {

// cos(2 phi) sin^2(theta) is a degree-2 spherical harmonic: its biharmonic
// on the unit sphere is (2 * 3)^2 = 36 times itself.
double test_field(double theta, double phi) {
  return std::cos(2.0 * phi) * std::sin(theta) * std::sin(theta);
}

double max_error(std::size_t rows, std::size_t n_phi, double theta_from) {
  auto g = rim_grid(std::numbers::pi / 8.0, rows, n_phi);
  for (std::size_t i = 0; i < g.n_theta; ++i) {
    for (std::size_t j = 0; j < g.n_phi; ++j) g.at(i, j) = test_field(g.theta(i), g.phi(j));
  }
  const auto out = biharmonic_apply(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < out.n_theta; ++i) {
    if (out.theta(i) < theta_from - 1e-12) continue;
    for (std::size_t j = 0; j < out.n_phi; ++j) {
      worst = std::max(worst, std::abs(out.at(i, j) - 36.0 * test_field(out.theta(i), out.phi(j))));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("constant field has zero biharmonic") {
  auto g = rim_grid(0.3, 20, 16);
  for (double& v : g.values) v = 2.5;
  const auto out = biharmonic_apply(g);
  CHECK(out.n_theta == 18);
  CHECK(out.theta_start == doctest::Approx(g.theta(2)));
  for (double v : out.values) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("second-order convergence to the continuous operator") {
  const double e1 = max_error(25, 32, std::numbers::pi / 4.0);
  const double e2 = max_error(49, 64, std::numbers::pi / 4.0);
  const double order = std::log2(e1 / e2);
  CHECK(e2 < e1);
  CHECK(order > 1.8);
  CHECK(order < 2.3);
}

TEST_CASE("grids touching the pole are rejected") {
  ShellGrid g(10, 16, 0.0, 0.1);
  CHECK_THROWS_AS(biharmonic_apply(g), DomainError);
  ShellGrid tiny(3, 16, 0.5, 0.1);
  CHECK_THROWS_AS(biharmonic_apply(tiny), ContractViolation);
}

TEST_CASE("interior-only grid drops two rows at each end") {
  ShellGrid g(12, 16, 0.4, 0.05);
  CHECK_FALSE(g.ends_at_rim());
  CHECK(biharmonic_apply(g).n_theta == 8);
}
