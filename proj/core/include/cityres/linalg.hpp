#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cityres {

/// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<std::complex<double>>;
using RealMatrix = Matrix<double>;

/// Max absolute row sum.
template <typename T>
double norm_inf(const Matrix<T>& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (const auto& v : m.row(r)) s += std::abs(v);
    if (s > best) best = s;
  }
  return best;
}

/// LU factorization with partial pivoting of a square complex matrix.
///
/// Throws SingularSystemError when a pivot falls below 1e-14 * ||K||_inf.
class LuFactorization {
 public:
  explicit LuFactorization(ComplexMatrix k);

  std::size_t size() const noexcept { return lu_.rows(); }

  /// Solves K X = B in place; B is size() x nrhs.
  void solve_in_place(ComplexMatrix& b) const;

  std::vector<std::complex<double>> solve(std::span<const std::complex<double>> rhs) const;

  /// Smallest |pivot| relative to ||K||_inf.
  double min_relative_pivot() const noexcept { return min_relative_pivot_; }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  double min_relative_pivot_ = 0.0;
};

/// C = A * B for complex dense matrices.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cityres
