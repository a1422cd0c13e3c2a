#include "cityres/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cityres/cli/csv.hpp"
#include "cityres/error.hpp"
#include "cityres/greens.hpp"
#include "cityres/parallel.hpp"
#include "cityres/resonance.hpp"

namespace cityres::cli {

namespace {

using resonance::ResonanceResult;

std::vector<city::BuildingSpec> row_of(int n, double spacing) {
  std::vector<city::BuildingSpec> out;
  for (int j = 0; j < n; ++j) {
    city::BuildingSpec b;
    b.a = j * (2.0 + spacing);
    b.b = b.a + 2.0;
    out.push_back(b);
  }
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace

int guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (iterations " << e.iterations() << ", residual "
        << CsvWriter::number(e.residual()) << ")\n";
    return kExitNumerical;
  } catch (const WoodAnomalyError& e) {
    err << "numerical failure: " << e.what() << " (Rayleigh mode " << e.mode() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

void run_fig10(const Fig10Options& opt, std::ostream& out) {
  require(opt.m_step >= 1, "--Mstep must be positive");
  require(opt.m_max >= opt.m_step, "--Mmax must be at least --Mstep");
  city::BuildingSpec b;
  b.a = -0.2;
  b.b = 0.2;
  const auto city = city::CityConfig::finite({b});
  std::vector<int> ms;
  for (int m = opt.m_step; m <= opt.m_max; m += opt.m_step) ms.push_back(m);
  std::vector<ResonanceResult> roots(ms.size());
  std::vector<double> taus(ms.size());
  parallel_for(0, ms.size(), [&](std::size_t k) {
    roots[k] = resonance::find_identical(city, 1, opt.xi0, ms[k]);
    taus[k] = resonance::t_matrix(city, roots[k].xi, ms[k]).entries(0, 0);
  });
  CsvWriter csv(out);
  csv.row({"M", "tau_root", "xi_root"});
  for (std::size_t k = 0; k < ms.size(); ++k)
    csv.row({CsvWriter::number(ms[k]), CsvWriter::number(taus[k]), CsvWriter::number(roots[k].xi)});
}

void run_table1(const Table1Options& opt, std::ostream& out) {
  require(opt.N >= 1, "--N must be positive");
  require(!opt.spacings.empty(), "no spacings given");
  for (double s : opt.spacings) require(s > 0.0, "spacings must be positive");
  const std::size_t ns = opt.spacings.size();
  // Three independent solves per spacing: xi_1, xi_per, xi_N.
  std::vector<double> xi(3 * ns);
  parallel_for(0, xi.size(), [&](std::size_t k) {
    const double s = opt.spacings[k / 3];
    switch (k % 3) {
      case 0:
        xi[k] = resonance::find_identical(city::CityConfig::finite(row_of(opt.N, s)), 1, opt.xi0, opt.M).xi;
        break;
      case 1:
        xi[k] = resonance::find_identical_periodic(city::CityConfig::periodic(row_of(1, s), 2.0 + s), opt.xi0,
                                                   opt.M)
                    .xi;
        break;
      default:
        xi[k] = resonance::find_identical(city::CityConfig::finite(row_of(opt.N, s)), opt.N, opt.xi0, opt.M).xi;
    }
  });
  CsvWriter csv(out);
  csv.row({"spacing", "xi_1", "xi_per", "xi_N", "ordered"});
  for (std::size_t i = 0; i < ns; ++i) {
    const double x1 = xi[3 * i], xp = xi[3 * i + 1], xn = xi[3 * i + 2];
    csv.row({CsvWriter::number(opt.spacings[i]), CsvWriter::number(x1), CsvWriter::number(xp),
             CsvWriter::number(xn), x1 <= xp && xp <= xn ? "1" : "0"});
  }
}

void run_solve(const Scenario& sc, const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  const auto city = sc.city();
  const int M = opt.M.value_or(sc.M);
  const double xi0 = opt.xi0.value_or(sc.xi0);
  require(!(opt.pin && opt.eig), "give either --pin or --eig, not both");
  ResonanceResult r;
  if (opt.eig || (!opt.pin && sc.eig_index)) {
    r = resonance::find_identical(city, opt.eig ? *opt.eig : *sc.eig_index, xi0, M);
  } else {
    const int pin = opt.pin ? *opt.pin : sc.pin.value_or(1);
    try {
      r = resonance::find_hetero(city, pin, xi0, M);
    } catch (const ConvergenceError&) {
      err << "hint: Newton pinned at building " << pin
          << " did not converge; another --pin or --xi0 may reach a root\n";
      throw;
    }
  }
  const double cert = resonance::certify(city, r, M);
  if (cert > 1e-8) err << "warning: certified residual " << CsvWriter::number(cert) << " exceeds 1e-8\n";
  std::vector<std::string> header{"xi"};
  std::vector<std::string> values{CsvWriter::number(r.xi)};
  for (std::size_t j = 0; j < r.alpha.size(); ++j) {
    header.push_back("alpha_" + std::to_string(j + 1));
    values.push_back(CsvWriter::number(r.alpha[j]));
  }
  header.insert(header.end(), {"residual", "iters"});
  values.insert(values.end(), {CsvWriter::number(cert), CsvWriter::number(r.iterations)});
  CsvWriter csv(out);
  csv.row(header);
  csv.row(values);
}

void run_converge(const Scenario& sc, const ConvergeOptions& opt, std::ostream& out) {
  require(sc.period.has_value(), "converge needs a scenario with a period");
  require(!opt.repeats.empty(), "--repeats is empty");
  for (int nc : opt.repeats) require(nc >= 1, "repeat counts must be positive");
  const auto pattern = city::CityConfig::periodic(sc.buildings, *sc.period);
  const int pin = opt.pin.value_or(sc.pin.value_or(1));
  require(pin >= 1 && static_cast<std::size_t>(pin) <= pattern.size(), "pin outside the pattern");
  const auto rows = resonance::convergence_study(pattern, opt.repeats, opt.pins, pin, opt.xi0.value_or(sc.xi0),
                                                 opt.M.value_or(sc.M));
  CsvWriter csv(out);
  csv.row({"cells", "pin", "xi", "residual", "iters"});
  for (const auto& r : rows) {
    csv.row({r.cells == 0 ? std::string("periodic") : CsvWriter::number(r.cells), CsvWriter::number(r.pin),
             CsvWriter::number(r.result.xi), CsvWriter::number(r.result.residual),
             CsvWriter::number(r.result.iterations)});
  }
}

void run_greens_probe(const ProbeOptions& opt, std::ostream& out) {
  require(opt.grid >= 1, "--grid must be positive");
  const greens::PeriodicCell cell(0.5 * opt.period, opt.xi);
  auto cfg = greens::ewald_for(cell);
  if (opt.a) cfg.a = *opt.a;
  cfg.validate();
  const double P = cell.half_period();
  CsvWriter csv(out);
  csv.row({"x", "y", "re_gper", "im_gper", "re_btilde", "im_btilde"});
  const int n = opt.grid;
  for (int i = 0; i < 2 * n; ++i) {
    // Offset points avoid the lattice.
    const double x = -P + (i + 0.5) * P / n;
    for (int j = 0; j <= n; ++j) {
      const double y = j * P / n;
      const auto g = greens::gper_ewald(cell, x, y, cfg);
      const auto bt = greens::btilde(cell, x, y, cfg);
      csv.row({CsvWriter::number(x), CsvWriter::number(y), CsvWriter::number(g.real()), CsvWriter::number(g.imag()),
               CsvWriter::number(bt.real()), CsvWriter::number(bt.imag())});
    }
  }
}

void run_top_displacement(const Scenario& sc, const TopOptions& opt, std::ostream& out) {
  const auto city = sc.city();
  const int M = opt.M.value_or(sc.M);
  const auto t = resonance::t_matrix(city, opt.xi, M);
  const std::size_t n = city.size();
  const double xi2 = opt.xi * opt.xi;
  RealMatrix s = t.entries;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = city.buildings()[j];
    const double p = city::p_of(b, xi2);
    if (std::fabs(p) <= 1e-12) {
      std::ostringstream os;
      os << "p(xi^2) vanishes for building " << j + 1 << " at xi = " << opt.xi;
      throw BuildingResonanceError(os.str());
    }
    s(j, j) += city::q_of(b, xi2) / p;
  }
  const auto eig = resonance::jacobi_eigen(s);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::fabs(eig.values[i]) < std::fabs(eig.values[best])) best = i;
  std::vector<double> alpha(n);
  for (std::size_t j = 0; j < n; ++j) alpha[j] = eig.vectors(j, best);
  double scale = 0.0;
  if (sc.pin) {
    scale = alpha[static_cast<std::size_t>(*sc.pin - 1)];
    if (std::fabs(scale) < 1e-12) throw NumericalError("pinned building does not move in this mode");
  } else {
    for (double a : alpha)
      if (std::fabs(a) > std::fabs(scale)) scale = a;
  }
  CsvWriter csv(out);
  csv.row({"building", "alpha", "eta"});
  for (std::size_t j = 0; j < n; ++j) {
    const double a = alpha[j] / scale;
    csv.row({CsvWriter::number(j + 1), CsvWriter::number(a),
             CsvWriter::number(city::top_displacement(city.buildings()[j], opt.xi, a))});
  }
}

}  // namespace cityres::cli
