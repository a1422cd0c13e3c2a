#include "cityres/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>
#include <sstream>

#include "cityres/bie.hpp"
#include "cityres/error.hpp"
#include "cityres/parallel.hpp"

namespace cityres::resonance {

using city::CityConfig;

namespace {

constexpr double kSecantSecondPoint = 1e-3;
constexpr double kSecantTol = 1e-10;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 20;
constexpr double kNewtonTol = 1e-10;
constexpr double kFdStep = 1e-6;

void mix(std::uint64_t& h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
}

void check_M(int M) {
  if (M < 1) throw ValidationError("M must be a positive integer");
}

// Solves a small dense real system in place; false if singular.
bool solve_small(RealMatrix a, std::vector<double>& b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (!(std::fabs(a(piv, col)) > 1e-14 * scale)) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * b[c];
    b[i] = s / a(i, i);
  }
  return true;
}

double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// F_i = q_i alpha_i + p_i (T alpha)_i.
std::vector<double> residual_vector(const CityConfig& city, const RealMatrix& t, double xi,
                                    const std::vector<double>& alpha) {
  const double xi2 = xi * xi;
  const auto& b = city.buildings();
  std::vector<double> f(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    double ta = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) ta += t(i, k) * alpha[k];
    f[i] = city::q_of(b[i], xi2) * alpha[i] + city::p_of(b[i], xi2) * ta;
  }
  return f;
}

// T at xi, or nullopt when xi sits on a Wood anomaly.
std::optional<TMatrix> try_t_matrix(const CityConfig& city, double xi, int M) {
  try {
    return t_matrix(city, xi, M);
  } catch (const WoodAnomalyError&) {
    return std::nullopt;
  }
}

}  // namespace

double TMatrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t k = 0; k < entries.rows(); ++k)
    for (std::size_t l = 0; l < k; ++l) m = std::max(m, std::fabs(entries(k, l) - entries(l, k)));
  return m;
}

std::uint64_t geometry_hash(const CityConfig& city, int M) {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& b : city.buildings()) {
    mix(h, b.a);
    mix(h, b.b);
  }
  mix(h, city.period());
  mix(h, static_cast<double>(M));
  return h;
}

TMatrix t_matrix(const CityConfig& city, double xi, int M) {
  check_M(M);
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("t_matrix: xi must be positive");
  bie::CollocationSystem sys(bie::FoundationGrid(city.foundations(), M), xi, city.kernel_mode());
  return TMatrix{xi, M, geometry_hash(city, M), sys.force_matrix()};
}

EigenDecomposition jacobi_eigen(const RealMatrix& t) {
  const std::size_t n = t.rows();
  if (n != t.cols()) throw ValidationError("jacobi_eigen: matrix must be square");
  RealMatrix a(n, n);
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (t(i, j) + t(j, i));
      frob += a(i, j) * a(i, j);
    }
  frob = std::sqrt(frob);
  RealMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off() > 1e-12 * frob; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double tt = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tt * tt + 1.0);
        const double s = tt * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  EigenDecomposition out{std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

ResonanceResult find_identical(const CityConfig& city, int eig_index, double xi0, int M) {
  check_M(M);
  if (!city.identical()) throw ValidationError("eigen method needs identical building parameters");
  const std::size_t n = city.size();
  if (eig_index < 1 || static_cast<std::size_t>(eig_index) > n) {
    std::ostringstream os;
    os << "eigen index " << eig_index << " outside 1.." << n;
    throw ValidationError(os.str());
  }
  if (!(xi0 > 0.0)) throw ValidationError("initial xi must be positive");
  const auto& spec = city.buildings().front();

  struct Point {
    double xi;
    double h;
  };
  auto eval = [&](double xi) -> std::optional<Point> {
    auto t = try_t_matrix(city, xi, M);
    if (!t) return std::nullopt;
    const auto eig = jacobi_eigen(t->entries);
    const double tau = eig.values[static_cast<std::size_t>(eig_index - 1)];
    return Point{xi, city::p_of(spec, xi * xi) * tau + city::q_of(spec, xi * xi)};
  };
  // A trial that lands on a Wood anomaly or at xi <= 0 is pulled back toward
  // the last good point.
  auto eval_toward = [&](double from, double to) -> Point {
    double step = to - from;
    for (int k = 0; k <= kMaxHalvings; ++k) {
      const double x = from + step;
      if (x > 0.0) {
        if (auto p = eval(x)) return *p;
      }
      step *= 0.5;
    }
    throw ConvergenceError("secant step could not avoid a Wood anomaly", 0, 0.0);
  };

  const auto first = eval(xi0);
  if (!first) throw ConvergenceError("initial xi sits on a Wood anomaly", 0, 0.0);
  Point p0 = *first;
  Point p1 = eval_toward(p0.xi, p0.xi + kSecantSecondPoint);
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    if (p1.h == p0.h) throw ConvergenceError("secant slope vanished", it, std::fabs(p1.h));
    const double next = p1.xi - p1.h * (p1.xi - p0.xi) / (p1.h - p0.h);
    if (!std::isfinite(next)) throw ConvergenceError("secant produced a non-finite iterate", it, std::fabs(p1.h));
    const Point p2 = eval_toward(p1.xi, next);
    p0 = p1;
    p1 = p2;
    if (std::fabs(p1.xi - p0.xi) <= kSecantTol) break;
  }
  if (it == kMaxIterations) throw ConvergenceError("secant did not converge", it, std::fabs(p1.h));

  const TMatrix t = t_matrix(city, p1.xi, M);
  const auto eig = jacobi_eigen(t.entries);
  ResonanceResult r;
  r.xi = p1.xi;
  r.alpha.resize(n);
  for (std::size_t k = 0; k < n; ++k) r.alpha[k] = eig.vectors(k, static_cast<std::size_t>(eig_index - 1));
  r.residual = norm_inf(residual_vector(city, t.entries, r.xi, r.alpha));
  r.iterations = it + 1;
  r.branch = ResonanceResult::Branch::eigen;
  r.index = eig_index;
  r.xi0 = xi0;
  return r;
}

ResonanceResult find_identical_finite(const CityConfig& city, int eig_index, double xi0, int M) {
  if (city.is_periodic()) throw ValidationError("find_identical_finite needs a finite city");
  return find_identical(city, eig_index, xi0, M);
}

ResonanceResult find_identical_periodic(const CityConfig& cell, double xi0, int M) {
  if (!cell.is_periodic()) throw ValidationError("find_identical_periodic needs a periodic cell");
  if (cell.size() != 1) throw ValidationError("find_identical_periodic needs one building per cell");
  return find_identical(cell, 1, xi0, M);
}

ResonanceResult find_hetero(const CityConfig& city, int pin, double xi0, int M) {
  check_M(M);
  const std::size_t n = city.size();
  if (pin < 1 || static_cast<std::size_t>(pin) > n) {
    std::ostringstream os;
    os << "pin " << pin << " outside 1.." << n;
    throw ValidationError(os.str());
  }
  if (!(xi0 > 0.0)) throw ValidationError("initial xi must be positive");
  const std::size_t jp = static_cast<std::size_t>(pin - 1);

  double xi = xi0;
  std::vector<double> alpha(n, 0.0);
  alpha[jp] = 1.0;
  auto t = try_t_matrix(city, xi, M);
  if (!t) throw ConvergenceError("initial xi sits on a Wood anomaly", 0, 0.0);
  auto f = residual_vector(city, t->entries, xi, alpha);
  double fnorm = norm_inf(f);

  int it = 0;
  while (fnorm > kNewtonTol) {
    if (it == kMaxIterations) throw ConvergenceError("Newton did not converge", it, fnorm);
    ++it;
    // Unknowns: column jp carries xi, the others alpha_k.
    const double h = kFdStep * std::max(std::fabs(xi), 1.0);
    auto th = try_t_matrix(city, xi + h, M);
    if (!th) th = try_t_matrix(city, xi - h, M);
    if (!th) throw ConvergenceError("finite-difference step hit a Wood anomaly", it, fnorm);
    const double dxi = th->xi - xi;
    const auto fh = residual_vector(city, th->entries, th->xi, alpha);
    const double xi2 = xi * xi;
    RealMatrix jac(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double pi_ = city::p_of(city.buildings()[i], xi2);
      const double qi = city::q_of(city.buildings()[i], xi2);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == jp) {
          jac(i, k) = (fh[i] - f[i]) / dxi;
        } else {
          // F is linear in alpha, so this column is exact.
          jac(i, k) = (i == k ? qi : 0.0) + pi_ * t->entries(i, k);
        }
      }
    }
    std::vector<double> step(f);
    for (auto& s : step) s = -s;
    if (!solve_small(jac, step)) throw ConvergenceError("Newton Jacobian is singular", it, fnorm);

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= kMaxHalvings; ++k, lambda *= 0.5) {
      const double xi_new = xi + lambda * step[jp];
      if (!(xi_new > 0.0)) continue;
      auto t_new = try_t_matrix(city, xi_new, M);
      if (!t_new) continue;
      std::vector<double> a_new(alpha);
      for (std::size_t i = 0; i < n; ++i)
        if (i != jp) a_new[i] += lambda * step[i];
      auto f_new = residual_vector(city, t_new->entries, xi_new, a_new);
      const double n_new = norm_inf(f_new);
      if (!std::isfinite(n_new) || n_new >= fnorm) continue;
      xi = xi_new;
      alpha = std::move(a_new);
      t = std::move(t_new);
      f = std::move(f_new);
      fnorm = n_new;
      accepted = true;
      break;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "Newton line search failed at xi = " << xi << " (||F|| = " << fnorm << ")";
      throw ConvergenceError(os.str(), it, fnorm);
    }
  }

  ResonanceResult r;
  r.xi = xi;
  r.alpha = std::move(alpha);
  r.residual = fnorm;
  r.iterations = it;
  r.branch = ResonanceResult::Branch::pinned;
  r.index = pin;
  r.xi0 = xi0;
  return r;
}

ResonanceResult find_hetero_finite(const CityConfig& city, int pin, double xi0, int M) {
  if (city.is_periodic()) throw ValidationError("find_hetero_finite needs a finite city");
  return find_hetero(city, pin, xi0, M);
}

ResonanceResult find_hetero_periodic(const CityConfig& cell, int pin, double xi0, int M) {
  if (!cell.is_periodic()) throw ValidationError("find_hetero_periodic needs a periodic cell");
  return find_hetero(cell, pin, xi0, M);
}

double certify(const CityConfig& city, const ResonanceResult& result, int M) {
  check_M(M);
  const std::size_t n = city.size();
  if (result.alpha.size() != n) throw ValidationError("certify: alpha length does not match the city");
  bie::FoundationGrid grid(city.foundations(), M);
  const auto mode = city.kernel_mode();
  const ComplexMatrix k = bie::assemble(grid, result.xi, mode);
  // T alpha is the force vector of the field with boundary data alpha.
  const auto sol = bie::solve_density(k, grid, result.xi, mode, result.alpha);
  const double xi2 = result.xi * result.xi;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = city.buildings()[i];
    const double f = city::q_of(b, xi2) * result.alpha[i] + city::p_of(b, xi2) * bie::foundation_force(sol, i);
    worst = std::max(worst, std::fabs(f));
  }
  return worst;
}

std::vector<ConvergenceRow> convergence_study(const CityConfig& pattern, const std::vector<int>& cells,
                                              const std::vector<int>& pins, int pin, double xi0, int M) {
  if (!pattern.is_periodic()) throw ValidationError("convergence study needs a periodic pattern");
  if (!pins.empty() && pins.size() != cells.size())
    throw ValidationError("convergence study: one pin per cell count required");
  const int b = static_cast<int>(pattern.size());
  std::vector<ConvergenceRow> rows(cells.size() + 1);
  parallel_for(0, rows.size(), [&](std::size_t k) {
    if (k == cells.size()) {
      rows[k] = {0, pin, find_hetero_periodic(pattern, pin, xi0, M)};
      return;
    }
    const int nc = cells[k];
    const int p = pins.empty() ? (nc - 1) * b + pin : pins[k];
    rows[k] = {nc, p, find_hetero_finite(pattern.repeated(nc), p, xi0, M)};
  });
  return rows;
}

}  // namespace cityres::resonance
