// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include "vibra/acoustics.hpp"
#include "vibra/bell_modal.hpp"
#include "vibra/biharmonic.hpp"
#include "vibra/csv.hpp"
#include "vibra/harness.hpp"
#include "vibra/presets.hpp"
#include "vibra/spectral.hpp"
#include "vibra/string_fdm.hpp"
#include "vibra/string_fem.hpp"

using namespace vibra;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::filesystem::path scratch_dir() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("vibra_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::vector<char> file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

double db(double ratio) { return 20.0 * std::log10(ratio); }

Outcome analytic_constants() {
  const double c = wave_speed(60.0, 5.82e-4);
  const double f1 = fundamental_frequency(0.65, 60.0, 5.82e-4);
  return {std::abs(c - 321.1) <= 0.1 && std::abs(f1 - 247.0) <= 0.1,
          fmt("c = %.3f m/s, f1 = %.3f Hz", c, f1)};
}

Outcome solver_vs_oracle() {
  const auto b3 = presets::b3_string();
  const double f1 = fundamental_frequency(b3.length_m, b3.tension_n, b3.linear_density);
  const AnalysisOptions opts;
  const auto fdm = measure_string(Solver::fdm, b3, default_listener(b3), opts);
  const auto fem = measure_string(Solver::fem, b3, default_listener(b3), opts);
  if (!fdm.measured_hz[0] || !fem.measured_hz[0]) return {false, "fundamental not detected"};
  const double e_fdm = fdm.relative_error(0);
  const double e_fem = fem.relative_error(0);
  const double gap = std::abs(*fdm.measured_hz[0] - *fem.measured_hz[0]);

  const auto ref = presets::reference_string();
  const auto r_fdm = measure_string(Solver::fdm, ref, default_listener(ref), opts);
  const auto r_fem = measure_string(Solver::fem, ref, default_listener(ref), opts);

  const bool ok = e_fdm < 0.025 && e_fem < 0.025 && gap <= fdm.bin_hz;
  return {ok, "B3 analytic " + fmt("%.2f Hz: ", f1) +
                  fmt("fdm %.2f Hz (%.2f%%), ", *fdm.measured_hz[0], 100 * e_fdm) +
                  fmt("fem %.2f Hz (%.2f%%), ", *fem.measured_hz[0], 100 * e_fem) +
                  fmt("gap %.3f Hz <= bin %.2f Hz; ", gap, fdm.bin_hz) +
                  fmt("bench string vs its own f1: fdm %.2f%%, fem %.2f%%", 100 * r_fdm.relative_error(0),
                      100 * r_fem.relative_error(0))};
}

Outcome midpoint_selection() {
  const auto c = presets::tension_sweep_base();  // midpoint pluck, 1 s
  const double f1 = fundamental_frequency(c.length_m, c.tension_n, c.linear_density);
  std::string detail;
  bool ok = true;
  for (Solver s : {Solver::fdm, Solver::fem}) {
    PressureAccumulator acc(c.node_count, c.dx(), c.step_count, c.dt_s, default_listener(c));
    run_string_solver(s, c, acc.sink());
    const auto p = normalize(acc.finish().samples);
    const auto spec = fft_magnitude(p, 1.0 / c.dt_s, 65536, *onset_index(p));
    const auto peaks = harmonic_peaks(spec, f1, 5);
    // strongest bin anywhere in the search band, so an absent even peak is judged conservatively
    auto band_max = [&](int n) {
      const auto lo = static_cast<std::size_t>(std::ceil((n - 0.35) * f1 / spec.bin_hz));
      const auto hi = static_cast<std::size_t>(std::floor((n + 0.35) * f1 / spec.bin_hz));
      return *std::max_element(spec.magnitudes.begin() + lo, spec.magnitudes.begin() + hi + 1);
    };
    double worst = INFINITY;
    for (int even : {2, 4}) {
      for (int odd : {even - 1, even + 1}) {
        if (!peaks[odd - 1]) {
          ok = false;
          continue;
        }
        worst = std::min(worst, db(peaks[odd - 1]->magnitude / band_max(even)));
      }
    }
    ok = ok && worst >= 20.0;
    detail += solver_label(s) + fmt(" min odd/even margin %.1f dB; ", worst);
  }
  return {ok, detail + "window 65536"};
}

Outcome stability_thresholds() {
  const auto c = presets::reference_string();
  const double speed = wave_speed(c.tension_n, c.linear_density);
  const double fem_bound = fem_stability_estimate(speed, c.dx());
  const double fdm_bound = cfl_limit(speed, c.dx());
  const double fem_dt = stability_search(c, Solver::fem, 5e-6, 3e-5);
  const double fdm_dt = stability_search(c, Solver::fdm, 1e-5, 4e-5);
  const bool ok = std::abs(fem_dt / 1.52e-5 - 1) <= 0.05 && std::abs(fem_dt / fem_bound - 1) <= 0.05 &&
                  std::abs(fdm_dt / fdm_bound - 1) <= 0.05;
  return {ok, fmt("fem %.4g s (dx/(c sqrt3) %.4g s), ", fem_dt, fem_bound) +
                  fmt("fdm %.4g s (dx/c %.4g s), ", fdm_dt, fdm_bound) +
                  fmt("printed fdm figure 2.27e-5 s differs by %.1f%%", 100 * (fdm_dt / 2.27e-5 - 1))};
}

double drift(const std::vector<double>& e) {
  double worst = 0.0;
  for (double v : e) worst = std::max(worst, std::abs(v - e.front()) / e.front());
  return worst;
}

Outcome energy_conservation() {
  StringConfig c = presets::reference_string();
  const double speed = wave_speed(c.tension_n, c.linear_density);
  c.step_count = 10001;
  c.dt_s = std::sqrt(0.5) * cfl_limit(speed, c.dx());
  const double d_fdm = drift(fdm_energy(simulate_fdm(c), c.tension_n, c.linear_density));
  c.dt_s = std::sqrt(0.5) * fem_stability_estimate(speed, c.dx());
  const double d_fem = drift(fem_energy(simulate_fem(c), assemble_global(c)));
  return {d_fdm < 0.01 && d_fem < 0.01, fmt("max drift over 1e4 steps: fdm %.2e, fem %.2e", d_fdm, d_fem)};
}

Outcome damped_envelope() {
  const auto c = presets::guitar_validation();
  PressureAccumulator acc(c.node_count, c.dx(), c.step_count, c.dt_s, default_listener(c));
  run_fdm(c, acc.sink());
  const auto p = acc.finish().samples;
  const std::size_t start = *onset_index(p);
  const auto block = static_cast<std::size_t>(std::llround(0.01 / c.dt_s));
  std::vector<double> t, y;
  for (std::size_t b = start; b + block <= p.size(); b += block) {
    double m = 0.0;
    for (std::size_t i = b; i < b + block; ++i) m = std::max(m, std::abs(p[i]));
    t.push_back(c.dt_s * (double(b) + 0.5 * double(block)));
    y.push_back(m);
  }
  const double rate = c.damping / (2.0 * c.linear_density);
  double num = 0.0, den = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = std::exp(-rate * t[i]);
    num += y[i] * e;
    den += e * e;
    mean += y[i];
  }
  const double amp = num / den;
  mean /= double(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    ss_res += std::pow(y[i] - amp * std::exp(-rate * t[i]), 2);
    ss_tot += std::pow(y[i] - mean, 2);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  std::vector<double> logy;
  for (double v : y) logy.push_back(std::log(v));
  const double fitted = -fit_line(t, logy).slope;
  return {r2 > 0.95, fmt("R^2 = %.4f for exp(-%.4f t) over 3 s; ", r2, rate) +
                         fmt("free log-linear fit rate %.4f 1/s", fitted)};
}

Outcome bell_frequencies() {
  const auto s = shell_coefficients(presets::aluminum_bell());
  const double table[] = {692.0, 1385.0, 2308.0, 3462.0};
  bool ok = true;
  std::string detail = "f_k =";
  for (int k = 2; k <= 5; ++k) {
    const double f = mode_frequency(s, k);
    ok = ok && std::abs(f - table[k - 2]) <= 1.0;
    detail += fmt(" %.1f", f);
  }
  const std::vector<int> ks{2, 3, 4, 5};
  const auto render = render_bell(presets::aluminum_bell(), ks, 1.0, 44100, scratch_dir(), "bell");
  const auto wav = read_wav(render.wav_path);
  std::vector<double> samples(wav.samples.begin(), wav.samples.end());
  const auto spec = fft_magnitude(samples, wav.sample_rate, 4096, 0);
  detail += " Hz; WAV peaks";
  for (int k = 2; k <= 5; ++k) {
    const double f = mode_frequency(s, k);
    // neighbouring modes are at least 690 Hz apart
    const auto peak = peak_in_band(spec, f - 100.0, f + 100.0);
    ok = ok && peak && std::abs(peak->frequency_hz - f) <= spec.bin_hz;
    detail += peak ? fmt(" %.1f", peak->frequency_hz) : std::string(" absent");
  }
  return {ok, detail + fmt(" Hz (bin %.2f Hz)", spec.bin_hz)};
}

Outcome damping_insensitivity() {
  auto b = presets::aluminum_bell();
  const auto damped = shell_coefficients(b);
  b.damping_sigma = 0.0;
  const auto free = shell_coefficients(b);
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k) worst = std::max(worst, std::abs(mode_frequency(damped, k) - mode_frequency(free, k)));
  return {worst < 0.01, fmt("max |f_k(10) - f_k(0)| = %.2e Hz for k <= 5", worst)};
}

Outcome tension_periodicity() {
  SweepSpec spec;
  spec.base = presets::tension_sweep_base();
  spec.base.step_count = 5000;
  spec.parameter = SweepParameter::tension;
  spec.values = linear_values(42.0, 61.5, 0.5);
  spec.harmonics_tracked = 5;
  const auto report = run_sweep(spec);
  const double step = 0.5;
  bool ok = spec.values.size() == 40;
  std::string detail;
  double p1[2] = {0, 0};
  int idx = 0;
  for (Solver s : spec.solvers) {
    detail += solver_label(s) + " periods";
    for (std::size_t n : {1u, 3u, 5u}) {
      const auto p = period_estimate(report.values(s, n), report.signed_errors(s, n));
      const double target = 9.5 / double(n);
      ok = ok && p && std::abs(*p - target) <= step;
      detail += p ? fmt(" %.2f", *p) : std::string(" none");
      if (n == 1 && p) p1[idx] = *p;
    }
    detail += " N; ";
    ++idx;
  }
  ok = ok && std::abs(p1[0] - p1[1]) <= step;
  return {ok, detail + "targets 9.5, 3.17, 1.9 N +/- 0.5"};
}

double biharmonic_error(std::size_t rows, std::size_t n_phi) {
  auto g = rim_grid(std::numbers::pi / 8.0, rows, n_phi);
  auto field = [](double th, double ph) { return std::cos(2 * ph) * std::sin(th) * std::sin(th); };
  for (std::size_t i = 0; i < g.n_theta; ++i) {
    for (std::size_t j = 0; j < g.n_phi; ++j) g.at(i, j) = field(g.theta(i), g.phi(j));
  }
  const auto out = biharmonic_apply(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < out.n_theta; ++i) {
    if (out.theta(i) < std::numbers::pi / 4.0 - 1e-12) continue;
    for (std::size_t j = 0; j < out.n_phi; ++j) {
      worst = std::max(worst, std::abs(out.at(i, j) - 36.0 * field(out.theta(i), out.phi(j))));
    }
  }
  return worst;
}

Outcome biharmonic_order() {
  const double e1 = biharmonic_error(25, 32);
  const double e2 = biharmonic_error(49, 64);
  const double e3 = biharmonic_error(97, 128);
  const double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
  return {o1 >= 1.8 && o2 >= 1.8, fmt("observed order %.3f then %.3f", o1, o2) +
                                      fmt(" (max error %.3e -> %.3e)", e1, e3)};
}

Outcome io_bit_exactness() {
  const bool q = quantize_pcm16(std::vector<double>{1.0})[0] == 32767;

  AudioBuffer b;
  b.sample_rate = 44100;
  for (int i = 0; i < 1000; ++i) b.samples.push_back(std::int16_t((i * 7919) % 65536 - 32768));
  const auto wav = scratch_dir() / "roundtrip.wav";
  write_wav(b, wav);
  const auto back = read_wav(wav);
  const bool round_trip = back.samples == b.samples && back.sample_rate == b.sample_rate;

  StringConfig c = presets::reference_string();
  c.step_count = 20000;
  const auto l = default_listener(c);
  const auto r1 = render_string(c, l, Solver::fdm, scratch_dir() / "run1", "string");
  const auto r2 = render_string(c, l, Solver::fdm, scratch_dir() / "run2", "string");
  const bool wav_same = file_bytes(r1.wav_path) == file_bytes(r2.wav_path);
  const bool csv_same = file_bytes(r1.csv_path) == file_bytes(r2.csv_path);

  SweepSpec spec;
  spec.base = c;
  spec.base.step_count = 5000;
  spec.values = {42.0, 45.0, 48.0};
  const bool sweep_same = run_sweep(spec).to_csv(false) == run_sweep(spec).to_csv(false);

  return {q && round_trip && wav_same && csv_same && sweep_same,
          std::string("quantize(1.0) = 32767: ") + (q ? "yes" : "no") +
              "; WAV round trip: " + (round_trip ? "identical" : "differs") +
              "; repeated render WAV/CSV: " + (wav_same && csv_same ? "byte-identical" : "differ") +
              "; repeated sweep CSV: " + (sweep_same ? "byte-identical" : "differs")};
}

Outcome node_convergence() {
  SweepSpec spec;
  spec.base = presets::reference_string();
  spec.base.step_count = 5000;
  spec.parameter = SweepParameter::node_count;
  spec.values = linear_values(41.0, 113.0, 8.0);
  spec.harmonics_tracked = 1;
  const auto report = run_sweep(spec);
  const auto a = report.relative_errors(Solver::fdm, 1);
  const auto b = report.relative_errors(Solver::fem, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return {worst < 0.005, fmt("max |err_fdm - err_fem| over N = 41..113: %.3f pp", 100 * worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "analytic constants", analytic_constants},
      {2, "solver vs oracle", solver_vs_oracle},
      {3, "midpoint-pluck even harmonics", midpoint_selection},
      {4, "stability thresholds", stability_thresholds},
      {5, "energy conservation", energy_conservation},
      {6, "damped envelope", damped_envelope},
      {7, "bell frequencies", bell_frequencies},
      {8, "bell damping insensitivity", damping_insensitivity},
      {9, "tension-sweep periodicity", tension_periodicity},
      {10, "biharmonic stencil order", biharmonic_order},
      {11, "I/O bit-exactness", io_bit_exactness},
      {12, "node-count convergence", node_convergence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  // informational only: wall times depend on the host
  try {
    SweepSpec spec;
    spec.base = presets::reference_string();
    spec.base.step_count = 20000;
    spec.parameter = SweepParameter::node_count;
    spec.values = linear_values(41.0, 161.0, 40.0);
    const auto table = timing_benchmark(spec, 3);
    std::string line = "INFO timing (node sweep, 2e4 steps, median of 3):";
    for (Solver s : spec.solvers) {
      line += " " + solver_label(s) + fmt(" slope %.3g s/node,", fit_line(spec.values, table.medians(s)).slope);
    }
    std::printf("%s host %s, %s build\n", line.c_str(), table.host.c_str(), table.build_profile.c_str());
  } catch (const std::exception& e) {
    std::printf("INFO timing unavailable: %s\n", e.what());
  }
  std::error_code ec;
  std::filesystem::remove_all(scratch_dir(), ec);
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
