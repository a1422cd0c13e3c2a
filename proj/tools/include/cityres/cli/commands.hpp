#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cityres/cli/scenario.hpp"

namespace cityres::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Runs body and maps library exceptions to exit codes, printing the message
/// to err: ValidationError, DomainError and parse errors give 1, other
/// numerical failures 2.
int guarded(const std::function<void()>& body, std::ostream& err);

struct Fig10Options {
  int m_max = 100;
  int m_step = 5;
  double xi0 = 1.0;
};
/// Columns M, tau_root, xi_root for M = step, 2 step, ..., m_max on the
/// single foundation [-0.2, 0.2].
void run_fig10(const Fig10Options& opt, std::ostream& out);

struct Table1Options {
  int N = 51;
  int M = 5;
  double xi0 = 1.0;
  std::vector<double> spacings{0.5, 1.0, 1.3, 1.4, 1.5, 2.0, 3.0};
};
/// Columns spacing, xi_1, xi_per, xi_N, ordered (1 when xi_1 <= xi_per <= xi_N).
void run_table1(const Table1Options& opt, std::ostream& out);

struct SolveOptions {
  std::optional<int> pin;
  std::optional<int> eig;
  std::optional<double> xi0;
  std::optional<int> M;
};
/// One row: xi, alpha_1..alpha_N, residual, iters. The residual is the
/// independently re-assembled certificate.
void run_solve(const Scenario& sc, const SolveOptions& opt, std::ostream& out, std::ostream& err);

struct ConvergeOptions {
  std::vector<int> repeats;
  std::vector<int> pins;  ///< optional, one per repeat count
  std::optional<int> pin;
  std::optional<double> xi0;
  std::optional<int> M;
};
/// Columns cells, pin, xi, residual, iters; the periodic limit has cells = periodic.
void run_converge(const Scenario& sc, const ConvergeOptions& opt, std::ostream& out);

struct ProbeOptions {
  double xi = 1.0;
  double period = 5.0;
  std::optional<double> a;
  int grid = 8;
};
/// G_per and Btilde on a grid over x in (-P, P), y in [0, P].
void run_greens_probe(const ProbeOptions& opt, std::ostream& out);

struct TopOptions {
  double xi = 1.0;
  std::optional<int> M;
};
/// alpha (null vector of T + diag(q/p) at xi, scaled to the config pin or to
/// max |alpha| = 1) and eta per building. Columns building, alpha, eta.
void run_top_displacement(const Scenario& sc, const TopOptions& opt, std::ostream& out);

}  // namespace cityres::cli
