#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "vibra/model.hpp"
#include "vibra/wave_history.hpp"

namespace vibra {

struct PressureTrace {
  std::vector<double> samples;  // Pa
  double dt_s = 0.0;
};

struct AudioBuffer {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 0;
};

/// Streaming form of radiated_pressure: feed rows in time order, then
/// call finish(). Node n contributes rho0 c0 / (4 pi R_n) times its
/// velocity delayed by R_n / c0, split linearly between the two
/// neighbouring output samples.
class PressureAccumulator {
 public:
  PressureAccumulator(std::size_t node_count, double dx, std::size_t step_count, double dt,
                      const ListenerGeometry& geometry);

  void push(std::span<const double> row);
  PressureTrace finish();

  RowSink sink() {
    return [this](std::size_t, std::span<const double> row) { push(row); };
  }

  /// Smallest propagation delay in samples.
  double min_delay_samples() const { return min_delay_; }

 private:
  void emit(std::span<const double> velocity);

  std::size_t node_count_;
  double dt_;
  std::vector<double> weight_;
  std::vector<std::size_t> whole_;
  std::vector<double> frac_;
  double min_delay_ = 0.0;
  std::vector<double> older_;
  std::vector<double> old_;
  std::vector<double> velocity_;
  std::size_t rows_seen_ = 0;
  std::size_t emitted_ = 0;
  std::vector<double> out_;
};

/// p(t) = sum_n rho0 c0 / (4 pi R_n) du_n/dt (t - R_n / c0) with
/// R_n = sqrt(standoff^2 + (x_n - x_ref)^2). Central differences in time,
/// one-sided at the first and last rows.
PressureTrace radiated_pressure(const WaveHistory& history, const ListenerGeometry& geometry);

/// Index of the first sample with nonzero magnitude, if any.
std::optional<std::size_t> onset_index(std::span<const double> samples);

/// Divides by max |p|. Throws SilentSignalError on an all-zero trace.
std::vector<double> normalize(std::span<const double> samples);

/// floor(A * 32767) clamped to the int16 range. Throws ContractViolation
/// for inputs outside [-1, 1].
std::vector<std::int16_t> quantize_pcm16(std::span<const double> normalized);

/// Block average over consecutive groups of `factor` samples; a trailing
/// partial block is dropped.
std::vector<double> decimate(std::span<const double> samples, std::size_t factor);

/// Largest integer factor keeping the rate at or above 44.1 kHz (1 below 88.2 kHz).
std::size_t decimation_factor(double sample_rate);

/// Canonical 44-byte header, mono PCM16 little endian.
void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path);
AudioBuffer read_wav(const std::filesystem::path& path);

}  // namespace vibra
