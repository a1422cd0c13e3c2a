#pragma once

// Coupling frequencies. With T(xi^2) the foundation-force matrix and alpha the
// foundation displacements, a coupling frequency solves
//   q_i(xi^2) alpha_i + p_i(xi^2) (T alpha)_i = 0,   i = 1..N,
// the soil pushing back with -T alpha. Identical buildings reduce this to
// p tau_i + q = 0 for an eigenvalue tau_i of T; heterogeneous cities pin one
// alpha_j = 1 and run Newton on (xi, alpha).

#include <cstdint>
#include <string>
#include <vector>

#include "cityres/citymodel.hpp"
#include "cityres/linalg.hpp"

namespace cityres::resonance {

/// Foundation forces at fixed xi: entry (k, l) is Re int_{Gamma_k} dPsi/dy ds
/// for the field with alpha = e_l.
struct TMatrix {
  double xi = 0.0;
  int M = 0;
  std::uint64_t geometry_hash = 0;
  RealMatrix entries;

  std::size_t size() const noexcept { return entries.rows(); }
  /// max |T_kl - T_lk|.
  double asymmetry() const;
};

/// Hash of the foundation layout, period and M.
std::uint64_t geometry_hash(const city::CityConfig& city, int M);

/// Finite cities use the free kernel, periodic cells the periodic one.
TMatrix t_matrix(const city::CityConfig& city, double xi, int M);

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  RealMatrix vectors;          ///< column i is the unit eigenvector of values[i]
};

/// Cyclic Jacobi on (T + T^t) / 2 until the off-diagonal Frobenius norm is
/// at most 1e-12 ||T||_F.
EigenDecomposition jacobi_eigen(const RealMatrix& t);

struct ResonanceResult {
  double xi = 0.0;
  std::vector<double> alpha;
  double residual = 0.0;  ///< ||F||_inf at the returned point
  int iterations = 0;
  enum class Branch { eigen, pinned } branch = Branch::eigen;
  int index = 0;  ///< 1-based eigen index or pinned building
  double xi0 = 0.0;
};

/// Identical buildings: secant on h(xi) = p tau_i + q from xi0 and xi0 + 1e-3
/// until |dxi| <= 1e-10 (at most 100 iterations); alpha is the eigenvector.
/// Works for finite cities and periodic cells alike. eig_index is 1-based.
ResonanceResult find_identical(const city::CityConfig& city, int eig_index, double xi0, int M);

/// find_identical on a finite city.
ResonanceResult find_identical_finite(const city::CityConfig& city, int eig_index, double xi0, int M);

/// find_identical on a periodic city with one building per cell.
ResonanceResult find_identical_periodic(const city::CityConfig& cell, double xi0, int M);

/// Damped Newton on (xi, alpha) with alpha_pin = 1. Forward-difference xi
/// derivative with relative step 1e-6, up to 20 step halvings, stops when
/// ||F||_inf <= 1e-10 (at most 100 iterations). pin is 1-based.
ResonanceResult find_hetero(const city::CityConfig& city, int pin, double xi0, int M);

ResonanceResult find_hetero_finite(const city::CityConfig& city, int pin, double xi0, int M);
ResonanceResult find_hetero_periodic(const city::CityConfig& cell, int pin, double xi0, int M);

/// ||q alpha + p T alpha||_inf with T alpha taken from one density solve with
/// boundary data alpha on a fresh assembly (no shared factorization or T
/// matrix with the solvers).
double certify(const city::CityConfig& city, const ResonanceResult& result, int M);

struct ConvergenceRow {
  int cells = 0;  ///< 0 marks the periodic limit
  int pin = 0;
  ResonanceResult result;
};

/// One finite solve per entry of cells (pattern.repeated(nc), pinned at
/// pins[k] or, when pins is empty, at building pin of the last cell), then
/// the periodic cell pinned at pin.
std::vector<ConvergenceRow> convergence_study(const city::CityConfig& pattern, const std::vector<int>& cells,
                                              const std::vector<int>& pins, int pin, double xi0, int M);

}  // namespace cityres::resonance
