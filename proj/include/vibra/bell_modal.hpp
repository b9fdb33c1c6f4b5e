#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vibra/model.hpp"

namespace vibra {

struct ShellCoefficients {
  double alpha_stiff;  // D / (rho h R^4), 1/s^2
  double gamma_att;    // sigma / (2 rho h), 1/s
};

ShellCoefficients shell_coefficients(const BellConfig& config);

/// f_k = sqrt(alpha k^2 (k+1)^2 - gamma^2) / (2 pi).
/// Throws OverdampedModeError when the radicand is not positive.
double mode_frequency(const ShellCoefficients& coeffs, int k);

/// a_{n+2} from a_n for the series p(x) = sum a_n x^n of the mode with
/// azimuthal order m0 and Omega^2 = omega_sq.
double legendre_next(int m0, double omega_sq, int n, double a_n);

/// a_0 .. a_{n0} of the terminating series with k = n0 + m0. Exactly one of
/// a0, a1 must be nonzero and it must share the parity of n0.
std::vector<double> legendre_coefficients(int m0, int n0, double a0, double a1);

enum class SeriesParity { even, odd };

struct SeriesValue {
  double value;
  bool divergent;  // |partial sum| > 1e6
};

/// Partial sum at x = 1 of the series for an arbitrary Omega, using terms
/// a_0 .. a_truncation, seeded with a_0 = 1 (even) or a_1 = 1 (odd).
SeriesValue p_at_one(int m0, double omega, std::size_t truncation,
                     SeriesParity parity = SeriesParity::even);

struct SeriesScan {
  std::vector<double> omega;
  std::vector<double> value;
  std::vector<bool> divergent;
  std::vector<double> crossings;  // sign changes, linearly interpolated
};

SeriesScan scan_p_at_one(int m0, double omega_lo, double omega_hi, std::size_t points,
                         std::size_t truncation, SeriesParity parity = SeriesParity::even);

struct BellMode {
  int m0 = 0;
  int n0 = 0;
  int k = 0;
  double omega_cap = 0.0;  // sqrt(k (k+1))
  double frequency_hz = 0.0;
  double attenuation = 0.0;  // 1/s
  std::vector<double> shape_coeffs;
};

/// Mode (m0, n0) seeded with a unit leading coefficient of the right parity.
BellMode make_bell_mode(const ShellCoefficients& coeffs, int m0, int n0);

/// (sin theta)^m0 p(cos theta) cos(m0 phi).
double mode_shape(const BellMode& mode, double theta, double phi);

struct ModeAmplitude {
  BellMode mode;
  double amplitude;
};

/// sum_i amplitude_i exp(-gamma t) cos(2 pi f_i t) at t = j / sample_rate.
/// Throws ContractViolation if any f_i >= sample_rate / 2.
std::vector<double> synthesize_bell(std::span<const ModeAmplitude> modes, double duration_s,
                                    double sample_rate);

/// Columns m0,n0,k,frequency_hz,attenuation.
std::string mode_table_csv(std::span<const BellMode> modes);

}  // namespace vibra
