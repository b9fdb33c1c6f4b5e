#include "vibra/bell_modal.hpp"

#include <cmath>
#include <numbers>

#include "vibra/csv.hpp"
#include "vibra/errors.hpp"

namespace vibra {

ShellCoefficients shell_coefficients(const BellConfig& config) {
  config.validate();
  const double d = bending_rigidity(config.youngs_modulus, config.thickness_m, config.poisson_ratio);
  const double rho_h = config.density * config.thickness_m;
  const double r2 = config.radius_m * config.radius_m;
  return {d / (rho_h * r2 * r2), config.damping_sigma / (2.0 * rho_h)};
}

double mode_frequency(const ShellCoefficients& coeffs, int k) {
  if (k < 1) throw DomainError("mode_frequency: k must be >= 1");
  const double kk = static_cast<double>(k) * static_cast<double>(k + 1);
  const double radicand = coeffs.alpha_stiff * kk * kk - coeffs.gamma_att * coeffs.gamma_att;
  if (!(radicand > 0.0)) {
    throw OverdampedModeError(k, "bell mode k=" + std::to_string(k) + " is overdamped");
  }
  return std::sqrt(radicand) / (2.0 * std::numbers::pi);
}

double legendre_next(int m0, double omega_sq, int n, double a_n) {
  const double nd = n;
  const double md = m0;
  const double num = nd * nd + nd * (2.0 * md + 1.0) + md * (md + 1.0) - omega_sq;
  return a_n * num / ((nd + 2.0) * (nd + 1.0));
}

std::vector<double> legendre_coefficients(int m0, int n0, double a0, double a1) {
  if (m0 < 0 || n0 < 0) throw ContractViolation("legendre_coefficients: indices must be >= 0");
  const bool even = n0 % 2 == 0;
  if (even ? (a0 == 0.0 || a1 != 0.0) : (a1 == 0.0 || a0 != 0.0)) {
    throw ContractViolation("legendre_coefficients: seed parity does not match n0 = " +
                            std::to_string(n0));
  }
  const int k = n0 + m0;
  const double omega_sq = static_cast<double>(k) * static_cast<double>(k + 1);
  std::vector<double> a(static_cast<std::size_t>(n0) + 1, 0.0);
  a[0] = a0;
  if (n0 >= 1) a[1] = a1;
  for (int n = 0; n + 2 <= n0; ++n) a[n + 2] = legendre_next(m0, omega_sq, n, a[n]);
  return a;
}

SeriesValue p_at_one(int m0, double omega, std::size_t truncation, SeriesParity parity) {
  if (truncation < 2) throw ContractViolation("p_at_one: truncation must be >= 2");
  const double omega_sq = omega * omega;
  int n = parity == SeriesParity::even ? 0 : 1;
  double a = 1.0;
  double sum = 0.0;
  bool divergent = false;
  for (; static_cast<std::size_t>(n) <= truncation; n += 2) {
    sum += a;
    if (std::abs(sum) > 1e6) divergent = true;
    a = legendre_next(m0, omega_sq, n, a);
    if (a == 0.0) break;
  }
  return {sum, divergent};
}

SeriesScan scan_p_at_one(int m0, double omega_lo, double omega_hi, std::size_t points,
                         std::size_t truncation, SeriesParity parity) {
  if (points < 2 || !(omega_hi > omega_lo)) throw ContractViolation("scan_p_at_one: bad range");
  SeriesScan scan;
  for (std::size_t i = 0; i < points; ++i) {
    const double w = omega_lo + (omega_hi - omega_lo) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
    const auto v = p_at_one(m0, w, truncation, parity);
    scan.omega.push_back(w);
    scan.value.push_back(v.value);
    scan.divergent.push_back(v.divergent);
  }
  for (std::size_t i = 1; i < points; ++i) {
    const double y0 = scan.value[i - 1];
    const double y1 = scan.value[i];
    if ((y0 < 0.0) != (y1 < 0.0)) {
      const double t = y0 / (y0 - y1);
      scan.crossings.push_back(scan.omega[i - 1] + t * (scan.omega[i] - scan.omega[i - 1]));
    }
  }
  return scan;
}

BellMode make_bell_mode(const ShellCoefficients& coeffs, int m0, int n0) {
  BellMode mode;
  mode.m0 = m0;
  mode.n0 = n0;
  mode.k = m0 + n0;
  mode.omega_cap = std::sqrt(static_cast<double>(mode.k) * static_cast<double>(mode.k + 1));
  mode.frequency_hz = mode_frequency(coeffs, mode.k);
  mode.attenuation = coeffs.gamma_att;
  const bool even = n0 % 2 == 0;
  mode.shape_coeffs = legendre_coefficients(m0, n0, even ? 1.0 : 0.0, even ? 0.0 : 1.0);
  return mode;
}

double mode_shape(const BellMode& mode, double theta, double phi) {
  const double x = std::cos(theta);
  double p = 0.0;
  for (auto it = mode.shape_coeffs.rbegin(); it != mode.shape_coeffs.rend(); ++it) p = p * x + *it;
  return std::pow(std::sin(theta), mode.m0) * p * std::cos(mode.m0 * phi);
}

std::vector<double> synthesize_bell(std::span<const ModeAmplitude> modes, double duration_s,
                                    double sample_rate) {
  if (!(sample_rate > 0.0) || !(duration_s >= 0.0)) {
    throw ContractViolation("synthesize_bell: duration and sample rate must be positive");
  }
  for (const auto& m : modes) {
    if (m.mode.frequency_hz >= 0.5 * sample_rate) {
      throw ContractViolation("synthesize_bell: mode k=" + std::to_string(m.mode.k) +
                              " at " + format_double(m.mode.frequency_hz) +
                              " Hz aliases at sample rate " + format_double(sample_rate));
    }
  }
  const auto count = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  std::vector<double> out(count, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (const auto& m : modes) {
    const double w = two_pi * m.mode.frequency_hz;
    for (std::size_t j = 0; j < count; ++j) {
      const double t = static_cast<double>(j) / sample_rate;
      out[j] += m.amplitude * std::exp(-m.mode.attenuation * t) * std::cos(w * t);
    }
  }
  return out;
}

std::string mode_table_csv(std::span<const BellMode> modes) {
  std::string out = "m0,n0,k,frequency_hz,attenuation\n";
  for (const auto& m : modes) {
    out += std::to_string(m.m0) + ',' + std::to_string(m.n0) + ',' + std::to_string(m.k) + ',' +
           format_double(m.frequency_hz) + ',' + format_double(m.attenuation) + '\n';
  }
  return out;
}

}  // namespace vibra
