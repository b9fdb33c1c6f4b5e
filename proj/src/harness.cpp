#include "vibra/harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "vibra/acoustics.hpp"
#include "vibra/csv.hpp"
#include "vibra/errors.hpp"
#include "vibra/parallel.hpp"
#include "vibra/string_analytic.hpp"

#ifndef VIBRA_BUILD_TYPE
#define VIBRA_BUILD_TYPE "unknown"
#endif

namespace vibra {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string host_label() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

}  // namespace

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "tension") return SweepParameter::tension;
  if (name == "dt") return SweepParameter::dt;
  if (name == "nodes" || name == "node_count") return SweepParameter::node_count;
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected tension, dt or nodes)");
}

std::string sweep_parameter_label(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::tension: return "tension";
    case SweepParameter::dt: return "dt";
    case SweepParameter::node_count: return "node_count";
  }
  return "unknown";
}

StringConfig apply_parameter(const StringConfig& base, SweepParameter parameter, double value) {
  StringConfig c = base;
  switch (parameter) {
    case SweepParameter::tension:
      c.tension_n = value;
      break;
    case SweepParameter::dt:
      c.dt_s = value;
      c.step_count = static_cast<std::size_t>(std::llround(base.duration_s() / value));
      break;
    case SweepParameter::node_count:
      if (!(value >= 3.0) || value != std::floor(value)) {
        throw ConfigError("node_count sweep value must be an integer >= 3");
      }
      c.node_count = static_cast<std::size_t>(value);
      break;
  }
  c.validate();
  return c;
}

std::size_t AnalysisOptions::window_for(double dt_s) const {
  if (!scale_window) return window_size;
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(window_size) * reference_dt_s / dt_s));
}

double PointMeasurement::relative_error(std::size_t i) const {
  return vibra::relative_error(measured_hz[i], expected_hz[i]);
}

std::optional<double> PointMeasurement::signed_error(std::size_t i) const {
  if (!measured_hz[i]) return std::nullopt;
  return (*measured_hz[i] - expected_hz[i]) / expected_hz[i];
}

PointMeasurement analyze_pressure(std::span<const double> pressure, double dt_s,
                                  double f1_expected, const AnalysisOptions& options) {
  PointMeasurement m;
  m.sample_rate = 1.0 / dt_s;
  m.window_size = options.window_for(dt_s);
  m.bin_hz = m.sample_rate / static_cast<double>(m.window_size);
  m.expected_hz = harmonic_frequencies(f1_expected, options.harmonics);
  m.measured_hz.assign(options.harmonics, std::nullopt);

  const auto onset = onset_index(pressure);
  if (!onset || pressure.size() < m.window_size) return m;
  const auto normalized = normalize(pressure);
  m.offset = std::min(*onset, pressure.size() - m.window_size);
  const auto spec = fft_magnitude(normalized, m.sample_rate, m.window_size, m.offset);
  const auto peaks = harmonic_peaks(spec, f1_expected, options.harmonics, options.peak_mode);
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    if (peaks[i]) m.measured_hz[i] = peaks[i]->frequency_hz;
  }
  return m;
}

PointMeasurement measure_string(Solver solver, const StringConfig& config,
                                const ListenerGeometry& listener, const AnalysisOptions& options) {
  const auto start = Clock::now();
  const double f1 = fundamental_frequency(config.length_m, config.tension_n, config.linear_density);
  PressureAccumulator acc(config.node_count, config.dx(), config.step_count, config.dt_s, listener);
  PointMeasurement m;
  try {
    run_string_solver(solver, config, acc.sink());
    const auto trace = acc.finish();
    m = analyze_pressure(trace.samples, config.dt_s, f1, options);
  } catch (const DivergedError&) {
    m.diverged = true;
    m.sample_rate = 1.0 / config.dt_s;
    m.window_size = options.window_for(config.dt_s);
    m.bin_hz = m.sample_rate / static_cast<double>(m.window_size);
    m.expected_hz = harmonic_frequencies(f1, options.harmonics);
    m.measured_hz.assign(options.harmonics, std::nullopt);
  }
  m.wall_time_s = seconds_since(start);
  return m;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (solvers.empty()) throw ConfigError("sweep needs at least one solver");
  if (harmonics_tracked < 1) throw ConfigError("sweep must track at least one harmonic");
  if (values.size() > 1) {
    const bool up = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
        throw ConfigError("sweep values must be strictly monotone");
      }
    }
  }
  for (double v : values) apply_parameter(base, parameter, v);
}

std::string SweepReport::to_csv(bool include_timing) const {
  std::string out =
      "parameter,value,solver,harmonic,expected_hz,measured_hz,relative_error,wall_time_s,"
      "diverged,bin_hz\n";
  const std::string label = sweep_parameter_label(parameter);
  for (const auto& r : rows) {
    out += label + ',' + format_double(r.value) + ',' + solver_label(r.solver) + ',' +
           std::to_string(r.harmonic) + ',' + format_double(r.expected_hz) + ',' +
           format_optional(r.measured_hz) + ',' + format_double(r.relative_error) + ',' +
           (include_timing ? format_double(r.wall_time_s) : std::string()) + ',' +
           (r.diverged ? "1" : "0") + ',' + format_double(r.bin_hz) + '\n';
  }
  return out;
}

std::vector<double> SweepReport::values(Solver solver, std::size_t harmonic) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.solver == solver && r.harmonic == harmonic) out.push_back(r.value);
  }
  return out;
}

std::vector<double> SweepReport::relative_errors(Solver solver, std::size_t harmonic) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.solver == solver && r.harmonic == harmonic) out.push_back(r.relative_error);
  }
  return out;
}

std::vector<double> SweepReport::signed_errors(Solver solver, std::size_t harmonic) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.solver != solver || r.harmonic != harmonic) continue;
    out.push_back(r.measured_hz ? (*r.measured_hz - r.expected_hz) / r.expected_hz : 1.0);
  }
  return out;
}

SweepReport run_sweep(const SweepSpec& spec) {
  spec.validate();
  AnalysisOptions analysis = spec.analysis;
  analysis.harmonics = spec.harmonics_tracked;
  const std::size_t n_solvers = spec.solvers.size();
  std::vector<PointMeasurement> results(spec.values.size() * n_solvers);

  parallel_for(results.size(), spec.workers, [&](std::size_t i) {
    const double value = spec.values[i / n_solvers];
    const auto config = apply_parameter(spec.base, spec.parameter, value);
    results[i] = measure_string(spec.solvers[i % n_solvers], config, default_listener(config),
                                analysis);
  });

  SweepReport report;
  report.parameter = spec.parameter;
  report.rows.reserve(results.size() * spec.harmonics_tracked);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& m = results[i];
    for (std::size_t h = 0; h < spec.harmonics_tracked; ++h) {
      report.rows.push_back({spec.values[i / n_solvers], spec.solvers[i % n_solvers], h + 1,
                             m.expected_hz[h], m.measured_hz[h], m.relative_error(h),
                             m.wall_time_s, m.diverged, m.bin_hz});
    }
  }
  return report;
}

std::vector<double> linear_values(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("linear_values: need step > 0 and hi >= lo");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = lo + step * static_cast<double>(i);
    if (v > hi + 1e-3 * step) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> log_values(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw ConfigError("log_values: need count >= 2 and 0 < lo < hi");
  }
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

bool is_stable(const StringConfig& config, Solver solver, double dt, double probe_s) {
  StringConfig c = config;
  c.dt_s = dt;
  c.step_count = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(probe_s / dt)));
  try {
    run_string_solver(solver, c, [](std::size_t, std::span<const double>) {});
  } catch (const DivergedError&) {
    return false;
  }
  return true;
}

double stability_search(const StringConfig& config, Solver solver, double stable_dt,
                        double unstable_dt, std::size_t iterations, double probe_s) {
  if (!(stable_dt > 0.0) || !(unstable_dt > stable_dt)) {
    throw BracketError("stability bracket must satisfy 0 < stable_dt < unstable_dt");
  }
  const bool lo_ok = is_stable(config, solver, stable_dt, probe_s);
  const bool hi_ok = is_stable(config, solver, unstable_dt, probe_s);
  if (!lo_ok || hi_ok) {
    throw BracketError(std::string("stability bracket [") + format_double(stable_dt) + ", " +
                       format_double(unstable_dt) + "] is entirely " +
                       (lo_ok ? "stable" : "unstable"));
  }
  double lo = stable_dt, hi = unstable_dt;
  for (std::size_t i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    (is_stable(config, solver, mid, probe_s) ? lo : hi) = mid;
  }
  return lo;
}

std::string BenchmarkTable::to_csv() const {
  std::string out = "# host=" + host + " build=" + build_profile +
                    " repeats=" + std::to_string(repeats) + "\n";
  out += "parameter,value,solver,median_s\n";
  const std::string label = sweep_parameter_label(parameter);
  for (const auto& r : rows) {
    out += label + ',' + format_double(r.value) + ',' + solver_label(r.solver) + ',' +
           format_double(r.median_s) + '\n';
  }
  return out;
}

std::vector<double> BenchmarkTable::medians(Solver solver) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.solver == solver) out.push_back(r.median_s);
  }
  return out;
}

BenchmarkTable timing_benchmark(const SweepSpec& spec, std::size_t repeats) {
  if (repeats < 3) throw ConfigError("timing_benchmark needs at least 3 repeats");
  spec.validate();
  BenchmarkTable table;
  table.parameter = spec.parameter;
  table.host = host_label();
  table.build_profile = VIBRA_BUILD_TYPE;
  table.repeats = repeats;
  for (double value : spec.values) {
    const auto config = apply_parameter(spec.base, spec.parameter, value);
    for (Solver solver : spec.solvers) {
      BenchmarkRow row{value, solver, 0.0, {}};
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        try {
          run_string_solver(solver, config, [](std::size_t, std::span<const double>) {});
        } catch (const DivergedError&) {
        }
        row.samples_s.push_back(seconds_since(start));
      }
      auto sorted = row.samples_s;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      row.median_s = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 3) throw ContractViolation("fit_line: need >= 3 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ContractViolation("fit_line: x values are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - intercept - slope * x[i];
    rss += r * r;
  }
  return {slope, intercept, std::sqrt(rss / static_cast<double>(n - 2) / sxx)};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

StringRender render_string(const StringConfig& config, const ListenerGeometry& listener,
                           Solver solver, const std::filesystem::path& out_dir,
                           const std::string& stem, const RenderOptions& options) {
  config.validate();
  PressureAccumulator acc(config.node_count, config.dx(), config.step_count, config.dt_s, listener);
  run_string_solver(solver, config, acc.sink());
  const auto trace = acc.finish();
  const auto normalized = normalize(trace.samples);

  const double f1 = fundamental_frequency(config.length_m, config.tension_n, config.linear_density);
  StringRender result;
  result.measurement = analyze_pressure(trace.samples, config.dt_s, f1, options.analysis);

  const double rate = 1.0 / config.dt_s;
  AudioBuffer audio;
  if (options.decimate) {
    const std::size_t factor = decimation_factor(rate);
    audio.samples = quantize_pcm16(normalize(decimate(normalized, factor)));
    audio.sample_rate = static_cast<std::uint32_t>(std::llround(rate / static_cast<double>(factor)));
  } else {
    audio.samples = quantize_pcm16(normalized);
    audio.sample_rate = static_cast<std::uint32_t>(std::llround(rate));
  }
  result.wav_sample_rate = audio.sample_rate;

  ensure_directory(out_dir);
  result.wav_path = out_dir / (stem + ".wav");
  result.csv_path = out_dir / (stem + ".csv");
  write_wav(audio, result.wav_path);

  const auto& m = result.measurement;
  std::string csv = "solver,harmonic,expected_hz,measured_hz,relative_error,bin_hz,window_size\n";
  for (std::size_t h = 0; h < m.expected_hz.size(); ++h) {
    csv += solver_label(solver) + ',' + std::to_string(h + 1) + ',' +
           format_double(m.expected_hz[h]) + ',' + format_optional(m.measured_hz[h]) + ',' +
           format_double(m.relative_error(h)) + ',' + format_double(m.bin_hz) + ',' +
           std::to_string(m.window_size) + '\n';
  }
  write_text_file(result.csv_path, csv);
  return result;
}

BellRender render_bell(const BellConfig& config, std::span<const int> k_set, double duration_s,
                       std::uint32_t sample_rate, const std::filesystem::path& out_dir,
                       const std::string& stem) {
  const auto coeffs = shell_coefficients(config);
  BellRender result;
  std::vector<ModeAmplitude> modes;
  for (int k : k_set) {
    auto mode = make_bell_mode(coeffs, 0, k);
    result.modes.push_back(mode);
    modes.push_back({std::move(mode), 1.0});
  }
  const auto samples = synthesize_bell(modes, duration_s, static_cast<double>(sample_rate));
  AudioBuffer audio{quantize_pcm16(normalize(samples)), sample_rate};

  ensure_directory(out_dir);
  result.wav_path = out_dir / (stem + ".wav");
  result.csv_path = out_dir / (stem + ".csv");
  write_wav(audio, result.wav_path);
  write_text_file(result.csv_path, mode_table_csv(result.modes));
  return result;
}

}  // namespace vibra
