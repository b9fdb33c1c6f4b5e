#include "vibra/acoustics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include "vibra/errors.hpp"

namespace vibra {

PressureAccumulator::PressureAccumulator(std::size_t node_count, double dx,
                                         std::size_t step_count, double dt,
                                         const ListenerGeometry& geometry)
    : node_count_(node_count),
      dt_(dt),
      weight_(node_count),
      whole_(node_count),
      frac_(node_count),
      older_(node_count),
      old_(node_count),
      velocity_(node_count),
      out_(step_count, 0.0) {
  geometry.validate(node_count);
  if (!(dt > 0.0) || !(dx > 0.0)) throw ContractViolation("PressureAccumulator: dt, dx must be > 0");
  const double x_ref = dx * static_cast<double>(geometry.reference_index);
  const double rho_c = geometry.air_density * geometry.sound_speed;
  min_delay_ = INFINITY;
  for (std::size_t n = 0; n < node_count; ++n) {
    const double offset = dx * static_cast<double>(n) - x_ref;
    const double r = std::hypot(geometry.standoff_m, offset);
    const double delay = r / geometry.sound_speed / dt;
    weight_[n] = rho_c / (4.0 * std::numbers::pi * r);
    whole_[n] = static_cast<std::size_t>(std::floor(delay));
    frac_[n] = delay - std::floor(delay);
    min_delay_ = std::min(min_delay_, delay);
  }
}

void PressureAccumulator::emit(std::span<const double> velocity) {
  const std::size_t k = emitted_++;
  const std::size_t len = out_.size();
  for (std::size_t n = 0; n < node_count_; ++n) {
    const std::size_t j = k + whole_[n];
    if (j >= len) continue;
    const double w = weight_[n] * velocity[n];
    out_[j] += (1.0 - frac_[n]) * w;
    if (j + 1 < len) out_[j + 1] += frac_[n] * w;
  }
}

void PressureAccumulator::push(std::span<const double> row) {
  if (row.size() != node_count_) throw ContractViolation("PressureAccumulator: row size mismatch");
  if (rows_seen_ >= out_.size()) throw ContractViolation("PressureAccumulator: too many rows");
  if (rows_seen_ == 1) {
    for (std::size_t n = 0; n < node_count_; ++n) velocity_[n] = (row[n] - old_[n]) / dt_;
    emit(velocity_);
  } else if (rows_seen_ >= 2) {
    for (std::size_t n = 0; n < node_count_; ++n) {
      velocity_[n] = (row[n] - older_[n]) / (2.0 * dt_);
    }
    emit(velocity_);
  }
  std::swap(older_, old_);
  std::copy(row.begin(), row.end(), old_.begin());
  ++rows_seen_;
}

PressureTrace PressureAccumulator::finish() {
  if (rows_seen_ != out_.size()) {
    throw ContractViolation("PressureAccumulator: expected " + std::to_string(out_.size()) +
                            " rows, got " + std::to_string(rows_seen_));
  }
  if (rows_seen_ >= 2) {
    for (std::size_t n = 0; n < node_count_; ++n) velocity_[n] = (old_[n] - older_[n]) / dt_;
    emit(velocity_);
  } else if (rows_seen_ == 1) {
    std::fill(velocity_.begin(), velocity_.end(), 0.0);
    emit(velocity_);
  }
  return {std::move(out_), dt_};
}

PressureTrace radiated_pressure(const WaveHistory& history, const ListenerGeometry& geometry) {
  PressureAccumulator acc(history.node_count(), history.dx_m(), history.step_count(),
                          history.dt_s(), geometry);
  for (std::size_t k = 0; k < history.step_count(); ++k) acc.push(history.row(k));
  return acc.finish();
}

std::optional<std::size_t> onset_index(std::span<const double> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] != 0.0) return i;
  }
  return std::nullopt;
}

std::vector<double> normalize(std::span<const double> samples) {
  double peak = 0.0;
  for (double s : samples) peak = std::max(peak, std::abs(s));
  if (!(peak > 0.0)) throw SilentSignalError("cannot normalize a silent signal");
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i] / peak;
  return out;
}

std::vector<std::int16_t> quantize_pcm16(std::span<const double> normalized) {
  std::vector<std::int16_t> out(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    const double a = normalized[i];
    if (!(a >= -1.0 && a <= 1.0)) {
      throw ContractViolation("quantize_pcm16: sample " + std::to_string(i) + " outside [-1, 1]");
    }
    const double q = std::clamp(std::floor(a * 32767.0), -32768.0, 32767.0);
    out[i] = static_cast<std::int16_t>(q);
  }
  return out;
}

std::vector<double> decimate(std::span<const double> samples, std::size_t factor) {
  if (factor == 0) throw ContractViolation("decimate: factor must be >= 1");
  std::vector<double> out(samples.size() / factor);
  for (std::size_t b = 0; b < out.size(); ++b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < factor; ++i) sum += samples[b * factor + i];
    out[b] = sum / static_cast<double>(factor);
  }
  return out;
}

std::size_t decimation_factor(double sample_rate) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(sample_rate / 44100.0)));
}

namespace {

void put_u32(std::array<char, 44>& h, std::size_t at, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) h[at + i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}
void put_u16(std::array<char, 44>& h, std::size_t at, std::uint16_t v) {
  h[at] = static_cast<char>(v & 0xFF);
  h[at + 1] = static_cast<char>(v >> 8);
}
std::uint32_t get_u32(const unsigned char* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t get_u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

}  // namespace

void write_wav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  if (buffer.samples.empty()) throw ContractViolation("write_wav: empty buffer");
  const auto data_bytes = static_cast<std::uint32_t>(buffer.samples.size() * 2);
  std::array<char, 44> h{};
  std::memcpy(h.data(), "RIFF", 4);
  put_u32(h, 4, 36 + data_bytes);
  std::memcpy(h.data() + 8, "WAVEfmt ", 8);
  put_u32(h, 16, 16);
  put_u16(h, 20, 1);
  put_u16(h, 22, 1);
  put_u32(h, 24, buffer.sample_rate);
  put_u32(h, 28, buffer.sample_rate * 2);
  put_u16(h, 32, 2);
  put_u16(h, 34, 16);
  std::memcpy(h.data() + 36, "data", 4);
  put_u32(h, 40, data_bytes);

  std::vector<char> body(data_bytes);
  for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
    const auto v = static_cast<std::uint16_t>(buffer.samples[i]);
    body[2 * i] = static_cast<char>(v & 0xFF);
    body[2 * i + 1] = static_cast<char>(v >> 8);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(h.data(), h.size());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
  const auto bad = [&](const char* why) { return IoError(path.string() + ": " + why); };
  if (bytes.size() < 44) throw bad("truncated WAV header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw bad("not a RIFF/WAVE file");
  }
  if (std::memcmp(bytes.data() + 12, "fmt ", 4) != 0 || get_u16(&bytes[20]) != 1 ||
      get_u16(&bytes[22]) != 1 || get_u16(&bytes[34]) != 16) {
    throw bad("only mono 16-bit PCM is supported");
  }
  if (std::memcmp(bytes.data() + 36, "data", 4) != 0) throw bad("missing data chunk");
  const std::uint32_t data_bytes = get_u32(&bytes[40]);
  if (bytes.size() < 44 + static_cast<std::size_t>(data_bytes)) throw bad("truncated data chunk");
  AudioBuffer buffer;
  buffer.sample_rate = get_u32(&bytes[24]);
  buffer.samples.resize(data_bytes / 2);
  for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
    buffer.samples[i] = static_cast<std::int16_t>(get_u16(&bytes[44 + 2 * i]));
  }
  return buffer;
}

}  // namespace vibra
