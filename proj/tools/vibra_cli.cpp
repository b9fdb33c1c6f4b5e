// Command-line front end: string and bell renders, sweeps, stability
// searches, timing tables and spectra.
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vibra/acoustics.hpp"
#include "vibra/bell_modal.hpp"
#include "vibra/config_file.hpp"
#include "vibra/csv.hpp"
#include "vibra/errors.hpp"
#include "vibra/harness.hpp"
#include "vibra/presets.hpp"
#include "vibra/spectral.hpp"
#include "vibra/string_fdm.hpp"
#include "vibra/string_fem.hpp"

using namespace vibra;

namespace {

enum exit_code : int { ok = 0, failure = 1, config_error = 2, diverged = 3, io_error = 4 };

struct StringSource {
  std::string config_path;
  std::string preset = "reference";

  StringRun load() const {
    const StringConfig base = presets::string_preset(preset);
    if (config_path.empty()) return {base, default_listener(base)};
    auto file = KeyValueFile::load(config_path);
    auto run = read_string_run(file, base);
    file.expect_consumed();
    return run;
  }
};

struct Analysis {
  std::size_t window = 4096;
  bool scale_window = false;
  bool raw_bins = false;
  std::size_t harmonics = 5;

  AnalysisOptions options() const {
    AnalysisOptions o;
    o.window_size = window;
    o.scale_window = scale_window;
    o.harmonics = harmonics;
    o.peak_mode = raw_bins ? PeakMode::raw_bin : PeakMode::interpolated;
    return o;
  }
};

void add_string_source(CLI::App* cmd, StringSource& src) {
  cmd->add_option("--config", src.config_path, "key = value string configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", src.preset, "base configuration: b3, reference, tension-sweep, guitar")
      ->capture_default_str();
}

void add_analysis(CLI::App* cmd, Analysis& a) {
  cmd->add_option("--window", a.window, "FFT window length in samples")->capture_default_str();
  cmd->add_flag("--scale-window", a.scale_window, "scale the window with the sample rate");
  cmd->add_flag("--raw-bins", a.raw_bins, "report raw FFT bin centres instead of interpolated peaks");
  cmd->add_option("--harmonics", a.harmonics, "harmonics to track")->capture_default_str()->check(
      CLI::PositiveNumber);
}

void add_seedless(CLI::App* cmd) {
  // nothing in the pipeline draws random numbers; kept for script compatibility
  cmd->add_flag("--seedless", "accepted for compatibility; every run is already deterministic");
}

void emit(const std::string& text, const std::string& csv_path) {
  if (csv_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(csv_path, text);
    std::cerr << "wrote " << csv_path << '\n';
  }
}

void print_measurement(const PointMeasurement& m) {
  std::printf("window %zu samples at %.9g Hz, bin %.6g Hz, offset %zu\n", m.window_size, m.sample_rate,
              m.bin_hz, m.offset);
  for (std::size_t h = 0; h < m.expected_hz.size(); ++h) {
    if (m.measured_hz[h]) {
      std::printf("  harmonic %zu: expected %.3f Hz, measured %.3f Hz, error %.3f%%\n", h + 1, m.expected_hz[h],
                  *m.measured_hz[h], 100.0 * m.relative_error(h));
    } else {
      std::printf("  harmonic %zu: expected %.3f Hz, not detected\n", h + 1, m.expected_hz[h]);
    }
  }
}

std::vector<Solver> solver_set(const std::string& name) {
  if (name == "both") return {Solver::fdm, Solver::fem};
  return {parse_solver(name)};
}

struct SweepArgs {
  StringSource source;
  Analysis analysis;
  std::string parameter = "tension";
  std::string solvers = "both";
  std::vector<double> values;
  std::optional<double> from, to, step;
  std::optional<std::size_t> count;
  std::optional<std::size_t> steps;
  std::size_t workers = 0;

  void add_to(CLI::App* cmd) {
    add_string_source(cmd, source);
    add_analysis(cmd, analysis);
    cmd->add_option("--parameter", parameter, "swept field: tension, dt, nodes")->capture_default_str();
    cmd->add_option("--solver", solvers, "fdm, fem or both")->capture_default_str();
    cmd->add_option("--values", values, "explicit parameter values")->delimiter(',');
    cmd->add_option("--from", from, "first value of a generated range");
    cmd->add_option("--to", to, "last value of a generated range");
    cmd->add_option("--step", step, "linear spacing of a generated range");
    cmd->add_option("--count", count, "number of log-spaced values between --from and --to");
    cmd->add_option("--steps", steps, "override the step count of the base configuration");
    cmd->add_option("--workers", workers, "worker threads, 0 for one per core")->capture_default_str();
  }

  SweepSpec spec() const {
    SweepSpec s;
    s.base = source.load().config;
    if (steps) s.base.step_count = *steps;
    s.parameter = parse_sweep_parameter(parameter);
    s.solvers = solver_set(solvers);
    s.harmonics_tracked = analysis.harmonics;
    s.analysis = analysis.options();
    s.workers = workers;
    if (!values.empty()) {
      s.values = values;
    } else if (from && to && step) {
      s.values = linear_values(*from, *to, *step);
    } else if (from && to && count) {
      s.values = log_values(*from, *to, *count);
    } else if (s.parameter == SweepParameter::tension) {
      s.values = linear_values(42.0, 61.5, 0.5);
    } else if (s.parameter == SweepParameter::dt) {
      s.values = log_values(5e-6, 2.5e-5, 40);
    } else {
      s.values = linear_values(3.0, 113.0, 2.0);
    }
    s.validate();
    return s;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"String and bell vibration simulator"};
  app.require_subcommand(1);

  // simulate-string
  auto* sim = app.add_subcommand("simulate-string", "render a plucked string to WAV and metadata CSV");
  StringSource sim_src;
  Analysis sim_analysis;
  std::string sim_solver = "fdm", sim_out = ".", sim_stem = "string";
  bool sim_decimate = false;
  std::optional<std::size_t> sim_steps;
  add_string_source(sim, sim_src);
  add_analysis(sim, sim_analysis);
  add_seedless(sim);
  sim->add_option("--solver", sim_solver, "fdm or fem")->capture_default_str();
  sim->add_option("--out", sim_out, "output directory")->capture_default_str();
  sim->add_option("--stem", sim_stem, "file name stem for <stem>.wav and <stem>.csv")->capture_default_str();
  sim->add_option("--steps", sim_steps, "override the step count");
  sim->add_flag("--decimate", sim_decimate, "decimate the WAV towards 44.1 kHz");

  // simulate-bell
  auto* bell = app.add_subcommand("simulate-bell", "synthesize bell modes to WAV and a mode table");
  std::string bell_config, bell_preset = "aluminum", bell_out = ".", bell_stem = "bell";
  std::vector<int> bell_modes{2, 3, 4, 5};
  double bell_duration = 2.0;
  std::uint32_t bell_rate = 44100;
  bell->add_option("--config", bell_config, "key = value bell configuration file")->check(CLI::ExistingFile);
  bell->add_option("--preset", bell_preset, "base bell configuration")->capture_default_str();
  bell->add_option("--modes", bell_modes, "mode indices k")->delimiter(',')->capture_default_str();
  bell->add_option("--duration", bell_duration, "seconds")->capture_default_str()->check(CLI::PositiveNumber);
  bell->add_option("--rate", bell_rate, "sample rate in Hz")->capture_default_str()->check(CLI::PositiveNumber);
  bell->add_option("--out", bell_out, "output directory")->capture_default_str();
  bell->add_option("--stem", bell_stem, "file name stem")->capture_default_str();
  add_seedless(bell);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweep over both solvers as CSV");
  SweepArgs sweep_args;
  std::string sweep_csv;
  bool sweep_timing = false;
  sweep_args.add_to(sweep);
  add_seedless(sweep);
  sweep->add_option("--csv", sweep_csv, "write the CSV here instead of stdout");
  sweep->add_flag("--timing", sweep_timing, "fill the wall_time_s column");

  // stability
  auto* stab = app.add_subcommand("stability", "bisect the largest stable time step");
  StringSource stab_src;
  std::string stab_solver = "fem", stab_csv;
  double stab_lo = 5e-6, stab_hi = 4e-5, stab_probe = 0.2;
  std::size_t stab_iterations = 12;
  add_string_source(stab, stab_src);
  add_seedless(stab);
  stab->add_option("--solver", stab_solver, "fdm, fem or both")->capture_default_str();
  stab->add_option("--lo", stab_lo, "stable end of the bracket in s")->capture_default_str();
  stab->add_option("--hi", stab_hi, "unstable end of the bracket in s")->capture_default_str();
  stab->add_option("--iterations", stab_iterations, "bisection steps")->capture_default_str();
  stab->add_option("--probe", stab_probe, "simulated seconds per probe")->capture_default_str();
  stab->add_option("--csv", stab_csv, "write the result CSV here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "median wall time per sweep point");
  SweepArgs bench_args;
  std::size_t bench_repeats = 3;
  std::string bench_csv;
  bench_args.add_to(bench);
  add_seedless(bench);
  bench->add_option("--repeats", bench_repeats, "runs per point (>= 3)")->capture_default_str();
  bench->add_option("--csv", bench_csv, "write the CSV here instead of stdout");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "magnitude spectrum of a WAV file or a simulated string");
  StringSource spec_src;
  std::string spec_wav, spec_csv, spec_solver = "fdm";
  std::size_t spec_window = 4096, spec_harmonics = 5;
  std::optional<std::size_t> spec_offset;
  std::optional<double> spec_f1;
  bool spec_raw = false;
  add_string_source(spec_cmd, spec_src);
  add_seedless(spec_cmd);
  spec_cmd->add_option("--wav", spec_wav, "analyze this WAV file instead of simulating")->check(
      CLI::ExistingFile);
  spec_cmd->add_option("--solver", spec_solver, "fdm or fem when simulating")->capture_default_str();
  spec_cmd->add_option("--window", spec_window, "FFT window length")->capture_default_str();
  spec_cmd->add_option("--offset", spec_offset, "first sample of the window (default: onset)");
  spec_cmd->add_option("--f1", spec_f1, "expected fundamental for harmonic peak reporting");
  spec_cmd->add_option("--harmonics", spec_harmonics, "harmonics to report")->capture_default_str();
  spec_cmd->add_flag("--raw-bins", spec_raw, "report raw bin centres");
  spec_cmd->add_option("--csv", spec_csv, "write frequency_hz,magnitude CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  if (*sim) {
    auto run = sim_src.load();
    if (sim_steps) run.config.step_count = *sim_steps;
    RenderOptions opts{sim_analysis.options(), sim_decimate};
    const auto r = render_string(run.config, run.listener, parse_solver(sim_solver), sim_out, sim_stem, opts);
    std::printf("%s: %zu nodes, %zu steps, dt %.9g s, WAV at %u Hz\n", sim_solver.c_str(), run.config.node_count,
                run.config.step_count, run.config.dt_s, r.wav_sample_rate);
    print_measurement(r.measurement);
    std::printf("wrote %s and %s\n", r.wav_path.c_str(), r.csv_path.c_str());
  } else if (*bell) {
    BellConfig config = presets::bell_preset(bell_preset);
    if (!bell_config.empty()) {
      auto file = KeyValueFile::load(bell_config);
      config = read_bell_config(file, config);
      file.expect_consumed();
    }
    const auto r = render_bell(config, bell_modes, bell_duration, bell_rate, bell_out, bell_stem);
    for (const auto& m : r.modes) std::printf("k = %d: %.3f Hz\n", m.k, m.frequency_hz);
    std::printf("wrote %s and %s\n", r.wav_path.c_str(), r.csv_path.c_str());
  } else if (*sweep) {
    const auto report = run_sweep(sweep_args.spec());
    emit(report.to_csv(sweep_timing), sweep_csv);
  } else if (*stab) {
    const auto config = stab_src.load().config;
    const double speed = wave_speed(config.tension_n, config.linear_density);
    std::string csv = "solver,dt_s,cfl_limit_s,fem_estimate_s\n";
    for (Solver s : solver_set(stab_solver)) {
      const double dt = stability_search(config, s, stab_lo, stab_hi, stab_iterations, stab_probe);
      csv += solver_label(s) + ',' + format_double(dt) + ',' + format_double(cfl_limit(speed, config.dx())) + ',' +
             format_double(fem_stability_estimate(speed, config.dx())) + '\n';
    }
    emit(csv, stab_csv);
  } else if (*bench) {
    const auto spec = bench_args.spec();
    const auto table = timing_benchmark(spec, bench_repeats);
    emit(table.to_csv(), bench_csv);
    for (Solver s : spec.solvers) {
      const auto fit = fit_line(spec.values, table.medians(s));
      std::fprintf(stderr, "%s: slope %.3g s per unit, stderr %.2g\n", solver_label(s).c_str(), fit.slope,
                   fit.slope_stderr);
    }
  } else if (*spec_cmd) {
    std::vector<double> samples;
    double rate = 0.0;
    std::optional<double> f1 = spec_f1;
    if (!spec_wav.empty()) {
      const auto wav = read_wav(spec_wav);
      samples.assign(wav.samples.begin(), wav.samples.end());
      rate = wav.sample_rate;
    } else {
      const auto run = spec_src.load();
      const auto& c = run.config;
      PressureAccumulator acc(c.node_count, c.dx(), c.step_count, c.dt_s, run.listener);
      run_string_solver(parse_solver(spec_solver), c, acc.sink());
      samples = acc.finish().samples;
      rate = 1.0 / c.dt_s;
      if (!f1) f1 = fundamental_frequency(c.length_m, c.tension_n, c.linear_density);
    }
    const auto offset = spec_offset ? spec_offset : onset_index(samples);
    if (!offset) throw SilentSignalError("signal is silent");
    const auto spectrum = fft_magnitude(samples, rate, spec_window, *offset);
    std::fprintf(stderr, "window %zu at offset %zu, bin %.6g Hz\n", spec_window, *offset, spectrum.bin_hz);
    if (f1) {
      const auto peaks =
          harmonic_peaks(spectrum, *f1, spec_harmonics, spec_raw ? PeakMode::raw_bin : PeakMode::interpolated);
      for (std::size_t n = 0; n < peaks.size(); ++n) {
        if (peaks[n]) {
          std::fprintf(stderr, "  harmonic %zu: %.3f Hz\n", n + 1, peaks[n]->frequency_hz);
        } else {
          std::fprintf(stderr, "  harmonic %zu: not detected\n", n + 1);
        }
      }
    }
    emit(spectrum_csv(spectrum), spec_csv);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const NotFoundError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const BracketError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const OverdampedModeError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const DivergedError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return diverged;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
}
