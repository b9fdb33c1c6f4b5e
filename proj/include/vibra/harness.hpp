#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vibra/bell_modal.hpp"
#include "vibra/model.hpp"
#include "vibra/spectral.hpp"
#include "vibra/string_solver.hpp"

namespace vibra {

enum class SweepParameter { tension, dt, node_count };

SweepParameter parse_sweep_parameter(std::string_view name);
std::string sweep_parameter_label(SweepParameter parameter);

/// Copy of `base` with one parameter replaced. A dt change keeps the
/// simulated duration (step_count is rescaled).
StringConfig apply_parameter(const StringConfig& base, SweepParameter parameter, double value);

struct AnalysisOptions {
  std::size_t window_size = 4096;
  /// Scale the window with the sample rate so the bin width stays that of
  /// `window_size` samples at `reference_dt_s`.
  bool scale_window = false;
  double reference_dt_s = 1e-5;
  std::size_t harmonics = 5;
  PeakMode peak_mode = PeakMode::interpolated;

  std::size_t window_for(double dt_s) const;
};

/// Spectral measurement of one simulated run.
struct PointMeasurement {
  bool diverged = false;
  double sample_rate = 0.0;
  double bin_hz = 0.0;
  std::size_t window_size = 0;
  std::size_t offset = 0;
  std::vector<double> expected_hz;
  std::vector<std::optional<double>> measured_hz;
  double wall_time_s = 0.0;

  double relative_error(std::size_t harmonic_index) const;
  /// (measured - expected) / expected, or nullopt when absent.
  std::optional<double> signed_error(std::size_t harmonic_index) const;
};

/// Normalized pressure -> rectangular FFT at the onset -> harmonic peaks
/// around n * f1_expected. The window is moved back if it would overrun
/// the trace; measurements are absent when the trace is shorter than it.
PointMeasurement analyze_pressure(std::span<const double> pressure, double dt_s,
                                  double f1_expected, const AnalysisOptions& options);

/// Full pipeline for one string run. Divergence is recorded, not thrown.
PointMeasurement measure_string(Solver solver, const StringConfig& config,
                                const ListenerGeometry& listener, const AnalysisOptions& options);

struct SweepSpec {
  StringConfig base;
  SweepParameter parameter = SweepParameter::tension;
  std::vector<double> values;
  std::size_t harmonics_tracked = 5;
  std::vector<Solver> solvers{Solver::fdm, Solver::fem};
  AnalysisOptions analysis;
  std::size_t workers = 0;  // 0: hardware concurrency

  /// Throws ConfigError on an empty or non-monotone value list.
  void validate() const;
};

struct SweepRow {
  double value;
  Solver solver;
  std::size_t harmonic;  // 1-based
  double expected_hz;
  std::optional<double> measured_hz;
  double relative_error;
  double wall_time_s;
  bool diverged;
  double bin_hz;
};

struct SweepReport {
  SweepParameter parameter = SweepParameter::tension;
  std::vector<SweepRow> rows;

  /// Columns parameter,value,solver,harmonic,expected_hz,measured_hz,
  /// relative_error,wall_time_s,diverged,bin_hz. Absent values are empty.
  std::string to_csv(bool include_timing = true) const;

  std::vector<double> values(Solver solver, std::size_t harmonic) const;
  std::vector<double> relative_errors(Solver solver, std::size_t harmonic) const;
  /// Signed errors; absent measurements count as +1.
  std::vector<double> signed_errors(Solver solver, std::size_t harmonic) const;
};

/// Every (value, solver) point runs independently on a worker pool; rows
/// come back in value-major, solver, harmonic order.
SweepReport run_sweep(const SweepSpec& spec);

/// Evenly spaced values lo, lo + step, ... up to hi (inclusive within step/1000).
std::vector<double> linear_values(double lo, double hi, double step);
/// `count` log-spaced values between lo and hi inclusive.
std::vector<double> log_values(double lo, double hi, std::size_t count);

/// Largest stable dt found by bisecting [stable_dt, unstable_dt] on the
/// divergence flag of a `probe_s` run. Throws BracketError if the ends do
/// not straddle the boundary.
double stability_search(const StringConfig& config, Solver solver, double stable_dt,
                        double unstable_dt, std::size_t iterations = 12, double probe_s = 0.2);

/// True if a `probe_s` run at `dt` stays bounded.
bool is_stable(const StringConfig& config, Solver solver, double dt, double probe_s = 0.2);

struct BenchmarkRow {
  double value;
  Solver solver;
  double median_s;
  std::vector<double> samples_s;
};

struct BenchmarkTable {
  SweepParameter parameter = SweepParameter::tension;
  std::string host;
  std::string build_profile;
  std::size_t repeats = 0;
  std::vector<BenchmarkRow> rows;

  std::string to_csv() const;
  std::vector<double> medians(Solver solver) const;
};

/// Median wall time of `repeats` sequential solver runs per (value, solver).
BenchmarkTable timing_benchmark(const SweepSpec& spec, std::size_t repeats);

struct LinearFit {
  double slope;
  double intercept;
  double slope_stderr;
};

/// Ordinary least squares y = intercept + slope x (needs >= 3 points).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct RenderOptions {
  AnalysisOptions analysis;
  bool decimate = false;
};

struct StringRender {
  std::filesystem::path wav_path;
  std::filesystem::path csv_path;
  PointMeasurement measurement;
  std::uint32_t wav_sample_rate = 0;
};

/// Simulate -> radiate -> normalize -> WAV (<stem>.wav) plus a metadata
/// CSV (<stem>.csv) with f1 and the following harmonics. Throws
/// DivergedError or SilentSignalError.
StringRender render_string(const StringConfig& config, const ListenerGeometry& listener,
                           Solver solver, const std::filesystem::path& out_dir,
                           const std::string& stem, const RenderOptions& options = {});

struct BellRender {
  std::filesystem::path wav_path;
  std::filesystem::path csv_path;
  std::vector<BellMode> modes;
};

/// Equal-amplitude axisymmetric modes (m0 = 0, n0 = k) for every k, written
/// as <stem>.wav and a mode table <stem>.csv.
BellRender render_bell(const BellConfig& config, std::span<const int> k_set, double duration_s,
                       std::uint32_t sample_rate, const std::filesystem::path& out_dir,
                       const std::string& stem);

/// Writes text to a file, throwing IoError with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace vibra
