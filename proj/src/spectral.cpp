#include "vibra/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "vibra/csv.hpp"
#include "vibra/errors.hpp"

namespace vibra {

namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> real_dft_magnitude(std::span<const double> input, std::size_t length) {
  double* in = fftw_alloc_real(length);
  fftw_complex* out = fftw_alloc_complex(length / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(length), in, out, FFTW_ESTIMATE);
  }
  std::fill(in, in + length, 0.0);
  std::copy(input.begin(), input.end(), in);
  fftw_execute(plan);
  std::vector<double> mag(length / 2 + 1);
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(out[i][0], out[i][1]);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return mag;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

Spectrum fft_magnitude(std::span<const double> samples, double sample_rate,
                       std::size_t window_size, std::size_t offset) {
  if (window_size < 2) throw ContractViolation("fft_magnitude: window must hold >= 2 samples");
  if (!(sample_rate > 0.0)) throw ContractViolation("fft_magnitude: sample rate must be > 0");
  if (offset > samples.size() || samples.size() - offset < window_size) {
    throw ContractViolation("fft_magnitude: window of " + std::to_string(window_size) +
                            " at offset " + std::to_string(offset) + " exceeds " +
                            std::to_string(samples.size()) + " samples");
  }
  Spectrum spec;
  spec.magnitudes = real_dft_magnitude(samples.subspan(offset, window_size), window_size);
  spec.bin_hz = sample_rate / static_cast<double>(window_size);
  spec.window_size = window_size;
  return spec;
}

std::optional<Peak> peak_in_band(const Spectrum& spec, double lo_hz, double hi_hz, PeakMode mode) {
  const auto& m = spec.magnitudes;
  if (m.size() < 3) return std::nullopt;
  const double floor_level = 10.0 * median(m);
  const auto lo = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::ceil(lo_hz / spec.bin_hz)));
  const auto hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(m.size()) - 2,
                                           static_cast<std::ptrdiff_t>(std::floor(hi_hz / spec.bin_hz)));
  std::optional<std::size_t> best;
  for (std::ptrdiff_t i = lo; i <= hi; ++i) {
    const auto b = static_cast<std::size_t>(i);
    if (m[b] >= m[b - 1] && m[b] >= m[b + 1] && m[b] > floor_level && (!best || m[b] > m[*best])) {
      best = b;
    }
  }
  if (!best) return std::nullopt;
  const std::size_t i = *best;
  Peak peak{spec.frequency(i), m[i], i};
  if (mode == PeakMode::interpolated) {
    const double a = m[i - 1], b = m[i], c = m[i + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) {
      const double d = 0.5 * (a - c) / denom;
      peak.frequency_hz = (static_cast<double>(i) + d) * spec.bin_hz;
      peak.magnitude = b - 0.25 * (a - c) * d;
    }
  }
  return peak;
}

std::vector<std::optional<Peak>> harmonic_peaks(const Spectrum& spec, double f1_expected,
                                                std::size_t count, PeakMode mode) {
  if (!(f1_expected > 0.0)) throw DomainError("harmonic_peaks: f1 must be positive");
  std::vector<std::optional<Peak>> peaks;
  peaks.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const double centre = f1_expected * static_cast<double>(n);
    peaks.push_back(peak_in_band(spec, centre - 0.35 * f1_expected, centre + 0.35 * f1_expected, mode));
  }
  return peaks;
}

double relative_error(const std::optional<double>& measured, double expected) {
  if (!(expected > 0.0)) throw DomainError("relative_error: expected must be positive");
  if (!measured) return 1.0;
  return std::abs(*measured - expected) / expected;
}

std::vector<double> zero_mean(std::span<const double> series) {
  if (series.empty()) throw ContractViolation("zero_mean: empty series");
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) /
                      static_cast<double>(series.size());
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = series[i] - mean;
  return out;
}

std::optional<double> period_estimate(std::span<const double> parameter_values,
                                      std::span<const double> error_values) {
  const std::size_t n = parameter_values.size();
  if (n != error_values.size()) throw ContractViolation("period_estimate: length mismatch");
  if (n < 8) throw ContractViolation("period_estimate: need at least 8 points");
  const double step = parameter_values[1] - parameter_values[0];
  if (!(step != 0.0)) throw ContractViolation("period_estimate: repeated parameter values");
  for (std::size_t i = 1; i < n; ++i) {
    const double d = parameter_values[i] - parameter_values[i - 1];
    if (std::abs(d - step) > 1e-6 * std::abs(step)) {
      throw ContractViolation("period_estimate: parameter values are not uniformly spaced");
    }
  }

  // least-squares line in the sample index
  const auto y = zero_mean(error_values);
  const double centre = 0.5 * static_cast<double>(n - 1);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - centre;
    sxy += x * y[i];
    sxx += x * x;
  }
  const double slope = sxy / sxx;
  std::vector<double> r(n);
  double scale = 0.0, residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = y[i] - slope * (static_cast<double>(i) - centre);
    scale = std::max(scale, std::abs(error_values[i]));
    residual = std::max(residual, std::abs(r[i]));
  }
  if (!(residual > 1e-12 * std::max(scale, 1e-300))) return std::nullopt;

  const std::size_t padded = 64 * n;
  const auto mag = real_dft_magnitude(r, padded);
  const std::vector<double> nonzero(mag.begin() + 1, mag.end());
  const auto peak = std::max_element(nonzero.begin(), nonzero.end());
  if (!(*peak > 2.0 * median(nonzero))) return std::nullopt;
  const auto bin = static_cast<double>(peak - nonzero.begin() + 1);
  const double frequency = bin / (static_cast<double>(padded) * std::abs(step));
  return 1.0 / frequency;
}

std::string spectrum_csv(const Spectrum& spec) {
  std::string out = "frequency_hz,magnitude\n";
  for (std::size_t i = 0; i < spec.magnitudes.size(); ++i) {
    out += format_double(spec.frequency(i)) + ',' + format_double(spec.magnitudes[i]) + '\n';
  }
  return out;
}

}  // namespace vibra
