#include "vibra/biharmonic.hpp"

#include <cmath>
#include <numbers>

#include "vibra/errors.hpp"

namespace vibra {

double ShellGrid::dphi() const { return 2.0 * std::numbers::pi / static_cast<double>(n_phi); }

bool ShellGrid::ends_at_rim() const {
  return n_theta > 0 && std::abs(theta(n_theta - 1) - 0.5 * std::numbers::pi) <= 1e-9 * dtheta;
}

ShellGrid rim_grid(double theta_start, std::size_t rows, std::size_t n_phi) {
  if (rows < 2) throw ContractViolation("rim_grid: need at least two rows");
  const double dth = (0.5 * std::numbers::pi - theta_start) / static_cast<double>(rows - 1);
  return ShellGrid(rows, n_phi, theta_start, dth);
}

ShellGrid biharmonic_apply(const ShellGrid& field) {
  if (field.n_phi < 5 || field.n_theta < 5 || field.values.size() != field.n_theta * field.n_phi) {
    throw ContractViolation("biharmonic_apply: grid needs >= 5 rows and columns");
  }
  if (!(field.dtheta > 0.0)) throw ContractViolation("biharmonic_apply: dtheta must be positive");
  if (field.theta_start < field.dtheta * (1.0 - 1e-12)) {
    throw DomainError("biharmonic_apply: grid touches the pole");
  }
  const bool rim = field.ends_at_rim();
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(field.n_theta) - 1;
  const std::ptrdiff_t first_out = 2;
  const std::ptrdiff_t last_out = rim ? last : last - 2;
  const std::size_t n_phi = field.n_phi;

  auto u = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (i > last) i = 2 * last - i;  // mirror about the rim row
    const auto n = static_cast<std::ptrdiff_t>(n_phi);
    j = ((j % n) + n) % n;
    return field.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };

  const double h = field.dtheta;
  const double p = field.dphi();
  const double h2 = h * h, h3 = h2 * h, h4 = h2 * h2;
  const double p2 = p * p, p4 = p2 * p2;

  ShellGrid out(static_cast<std::size_t>(last_out - first_out + 1), n_phi, field.theta(2), h);
  for (std::ptrdiff_t i = first_out; i <= last_out; ++i) {
    const double th = field.theta(static_cast<std::size_t>(i));
    const double s = std::sin(th), c = std::cos(th);
    const double s2 = s * s, s4 = s2 * s2, cot = c / s;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n_phi); ++j) {
      const double u0 = u(i, j);
      const double d_t = (u(i + 1, j) - u(i - 1, j)) / (2.0 * h);
      const double d_tt = (u(i + 1, j) - 2.0 * u0 + u(i - 1, j)) / h2;
      const double d_pp = (u(i, j + 1) - 2.0 * u0 + u(i, j - 1)) / p2;
      const double d_ttt =
          (u(i + 2, j) - u(i - 2, j) - 2.0 * (u(i + 1, j) - u(i - 1, j))) / (2.0 * h3);
      const double d_tttt =
          (u(i + 2, j) + u(i - 2, j) - 4.0 * u(i + 1, j) - 4.0 * u(i - 1, j) + 6.0 * u0) / h4;
      const double d_pppp =
          (u(i, j + 2) + u(i, j - 2) - 4.0 * u(i, j + 1) - 4.0 * u(i, j - 1) + 6.0 * u0) / p4;
      const double d_tpp = (u(i + 1, j + 1) - 2.0 * u(i + 1, j) + u(i + 1, j - 1) -
                            u(i - 1, j + 1) + 2.0 * u(i - 1, j) - u(i - 1, j - 1)) /
                           (2.0 * p2 * h);
      const double d_ttpp = (u(i + 1, j + 1) - 2.0 * u(i, j + 1) + u(i - 1, j + 1) -
                             2.0 * (u(i + 1, j) - 2.0 * u0 + u(i - 1, j)) + u(i + 1, j - 1) -
                             2.0 * u(i, j - 1) + u(i - 1, j - 1)) /
                            (p2 * h2);
      out.at(static_cast<std::size_t>(i - first_out), static_cast<std::size_t>(j)) =
          d_tttt + 2.0 * cot * d_ttt + (c * c - 2.0) / s2 * d_tt + cot / s2 * d_t +
          d_pppp / s4 + 2.0 * (1.0 + c * c) / s4 * d_pp + 2.0 / s2 * d_ttpp -
          2.0 * cot / s2 * d_tpp;
    }
  }
  return out;
}

}  // namespace vibra
