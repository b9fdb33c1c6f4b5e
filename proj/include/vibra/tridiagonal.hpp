#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vibra {

/// Square tridiagonal matrix. `lower[i]` is entry (i+1, i), `upper[i]` is
/// entry (i, i+1); both have size n-1.
struct TridiagonalMatrix {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  TridiagonalMatrix() = default;
  explicit TridiagonalMatrix(std::size_t n) : lower(n ? n - 1 : 0), diag(n), upper(n ? n - 1 : 0) {}

  std::size_t size() const { return diag.size(); }

  /// Entry (i, j); zero outside the three bands.
  double at(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, double value);
  void set(std::size_t i, std::size_t j, double value);

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  std::vector<std::vector<double>> to_dense() const;
};

/// Thomas-algorithm LU factorization (no pivoting), computed once and
/// reused for any number of right-hand sides.
class TridiagonalFactorization {
 public:
  /// Throws NumericalError on a zero pivot.
  explicit TridiagonalFactorization(const TridiagonalMatrix& a);

  /// Solves A x = rhs in place.
  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

  std::size_t size() const { return inv_pivot_.size(); }

 private:
  std::vector<double> lower_;      // sub-diagonal of A
  std::vector<double> c_star_;     // modified super-diagonal
  std::vector<double> inv_pivot_;  // 1 / modified diagonal
};

}  // namespace vibra
