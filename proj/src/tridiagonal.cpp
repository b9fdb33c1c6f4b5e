#include "vibra/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "vibra/errors.hpp"

namespace vibra {

double TridiagonalMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j) return diag[i];
  if (i + 1 == j) return upper[i];
  if (j + 1 == i) return lower[j];
  return 0.0;
}

void TridiagonalMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    diag[i] += value;
  } else if (i + 1 == j) {
    upper[i] += value;
  } else if (j + 1 == i) {
    lower[j] += value;
  } else {
    throw ContractViolation("TridiagonalMatrix::add outside the bands");
  }
}

void TridiagonalMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    diag[i] = value;
  } else if (i + 1 == j) {
    upper[i] = value;
  } else if (j + 1 == i) {
    lower[j] = value;
  } else if (value != 0.0) {
    throw ContractViolation("TridiagonalMatrix::set outside the bands");
  }
}

void TridiagonalMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw ContractViolation("TridiagonalMatrix::multiply size");
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + upper[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = lower[i - 1] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
  }
  y[n - 1] = lower[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(size());
  multiply(x, y);
  return y;
}

std::vector<std::vector<double>> TridiagonalMatrix::to_dense() const {
  const std::size_t n = size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i ? i - 1 : 0); j < std::min(n, i + 2); ++j) d[i][j] = at(i, j);
  }
  return d;
}

TridiagonalFactorization::TridiagonalFactorization(const TridiagonalMatrix& a)
    : lower_(a.lower), c_star_(a.upper.size()), inv_pivot_(a.size()) {
  const std::size_t n = a.size();
  double pivot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pivot = a.diag[i];
    if (i > 0) pivot -= a.lower[i - 1] * c_star_[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("tridiagonal factorization: zero pivot at row " + std::to_string(i));
    }
    inv_pivot_[i] = 1.0 / pivot;
    if (i + 1 < n) c_star_[i] = a.upper[i] * inv_pivot_[i];
  }
}

void TridiagonalFactorization::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw ContractViolation("TridiagonalFactorization::solve size");
  if (n == 0) return;
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) {
    rhs[i] = (rhs[i] - lower_[i - 1] * rhs[i - 1]) * inv_pivot_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= c_star_[i] * rhs[i + 1];
  }
}

std::vector<double> TridiagonalFactorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

}  // namespace vibra
