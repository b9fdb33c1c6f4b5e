#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vibra {

/// Receives each time row as soon as it is final. `step` counts from 0.
using RowSink = std::function<void(std::size_t step, std::span<const double> row)>;

/// Time-major matrix of nodal displacements produced by a string solver.
class WaveHistory {
 public:
  WaveHistory() = default;
  WaveHistory(std::size_t node_count, std::size_t step_count, double dt_s, double dx_m)
      : node_count_(node_count),
        step_count_(step_count),
        dt_s_(dt_s),
        dx_m_(dx_m),
        data_(node_count * step_count, 0.0) {}

  std::size_t node_count() const { return node_count_; }
  std::size_t step_count() const { return step_count_; }
  double dt_s() const { return dt_s_; }
  double dx_m() const { return dx_m_; }

  std::span<const double> row(std::size_t step) const {
    return {data_.data() + step * node_count_, node_count_};
  }
  std::span<double> row(std::size_t step) {
    return {data_.data() + step * node_count_, node_count_};
  }
  double at(std::size_t step, std::size_t node) const { return data_[step * node_count_ + node]; }
  double& at(std::size_t step, std::size_t node) { return data_[step * node_count_ + node]; }

  /// Displacement time series of a single node.
  std::vector<double> node_series(std::size_t node) const {
    std::vector<double> out(step_count_);
    for (std::size_t k = 0; k < step_count_; ++k) out[k] = at(k, node);
    return out;
  }

  const std::vector<double>& data() const { return data_; }

  /// Sink that copies rows into this history.
  RowSink recorder() {
    return [this](std::size_t step, std::span<const double> r) {
      std::copy(r.begin(), r.end(), row(step).begin());
    };
  }

 private:
  std::size_t node_count_ = 0;
  std::size_t step_count_ = 0;
  double dt_s_ = 0.0;
  double dx_m_ = 0.0;
  std::vector<double> data_;
};

}  // namespace vibra
