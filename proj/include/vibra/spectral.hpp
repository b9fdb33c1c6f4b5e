#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vibra {

struct Spectrum {
  std::vector<double> magnitudes;  // window_size / 2 + 1 bins
  double bin_hz = 0.0;
  std::size_t window_size = 0;
  std::string window_kind = "rectangular";

  double frequency(std::size_t bin) const { return bin_hz * static_cast<double>(bin); }
};

/// |DFT| of samples[offset, offset + window_size) (rectangular window).
/// Throws ContractViolation if the window does not fit.
Spectrum fft_magnitude(std::span<const double> samples, double sample_rate,
                       std::size_t window_size = 4096, std::size_t offset = 0);

enum class PeakMode { interpolated, raw_bin };

struct Peak {
  double frequency_hz;
  double magnitude;
  std::size_t bin;
};

/// Largest local maximum in [lo_hz, hi_hz] above ten times the median magnitude.
std::optional<Peak> peak_in_band(const Spectrum& spec, double lo_hz, double hi_hz,
                                 PeakMode mode = PeakMode::interpolated);

/// For n = 1..count, the largest local maximum within n f1 +/- 0.35 f1 whose
/// magnitude exceeds ten times the median magnitude; nullopt otherwise.
std::vector<std::optional<Peak>> harmonic_peaks(const Spectrum& spec, double f1_expected,
                                                std::size_t count,
                                                PeakMode mode = PeakMode::interpolated);

/// |measured - expected| / expected, or 1.0 when nothing was measured.
double relative_error(const std::optional<double>& measured, double expected);

std::vector<double> zero_mean(std::span<const double> series);

/// Dominant period of an error series sampled on a uniform parameter grid.
/// Mean and linear trend are removed, then the series is transformed with
/// 64x zero padding and the strongest nonzero frequency is inverted.
/// Returns nullopt for a flat residual or when the peak is not above twice
/// the median spectral magnitude.
std::optional<double> period_estimate(std::span<const double> parameter_values,
                                      std::span<const double> error_values);

/// Columns frequency_hz,magnitude.
std::string spectrum_csv(const Spectrum& spec);

}  // namespace vibra
