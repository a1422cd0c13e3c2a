#include "cityres/linalg.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "cityres/error.hpp"

namespace cityres {

using Complex = std::complex<double>;

LuFactorization::LuFactorization(ComplexMatrix k) : lu_(std::move(k)) {
  const std::size_t n = lu_.rows();
  if (n != lu_.cols()) throw ValidationError("LuFactorization: matrix must be square");
  const double scale = norm_inf(lu_);
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  min_relative_pivot_ = n == 0 ? 0.0 : 1e300;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu_(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lu_(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    const double rel = scale > 0.0 ? best / scale : 0.0;
    if (rel < min_relative_pivot_) min_relative_pivot_ = rel;
    if (rel < 1e-14) {
      std::ostringstream os;
      os << "collocation matrix is numerically singular (pivot " << rel
         << " of norm at column " << col << "); near-resonance of the field problem";
      throw SingularSystemError(os.str());
    }
    if (pivot != col) {
      auto a = lu_.row(col);
      auto b = lu_.row(pivot);
      for (std::size_t c = 0; c < n; ++c) std::swap(a[c], b[c]);
      std::swap(perm_[col], perm_[pivot]);
    }
    const Complex inv = 1.0 / lu_(col, col);
    const auto prow = lu_.row(col);
    for (std::size_t r = col + 1; r < n; ++r) {
      auto row = lu_.row(r);
      const Complex factor = row[col] * inv;
      row[col] = factor;
      if (factor == Complex(0.0, 0.0)) continue;
      for (std::size_t c = col + 1; c < n; ++c) row[c] -= factor * prow[c];
    }
  }
}

void LuFactorization::solve_in_place(ComplexMatrix& b) const {
  const std::size_t n = size();
  if (b.rows() != n) throw ValidationError("LuFactorization::solve: dimension mismatch");
  const std::size_t nrhs = b.cols();

  ComplexMatrix x(n, nrhs);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = b.row(perm_[i]);
    auto dst = x.row(i);
    for (std::size_t c = 0; c < nrhs; ++c) dst[c] = src[c];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto lrow = lu_.row(i);
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const Complex l = lrow[k];
      if (l == Complex(0.0, 0.0)) continue;
      const auto xk = x.row(k);
      for (std::size_t c = 0; c < nrhs; ++c) xi[c] -= l * xk[c];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const auto urow = lu_.row(ii);
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const Complex u = urow[k];
      const auto xk = x.row(k);
      for (std::size_t c = 0; c < nrhs; ++c) xi[c] -= u * xk[c];
    }
    const Complex inv = 1.0 / urow[ii];
    for (std::size_t c = 0; c < nrhs; ++c) xi[c] *= inv;
  }
  b = std::move(x);
}

std::vector<Complex> LuFactorization::solve(std::span<const Complex> rhs) const {
  ComplexMatrix b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  solve_in_place(b);
  std::vector<Complex> out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = b(i, 0);
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("multiply: dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    const auto ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex v = ai[k];
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += v * bk[j];
    }
  }
  return c;
}

}  // namespace cityres
