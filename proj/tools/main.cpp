#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cityres/cli/commands.hpp"
#include "cityres/cli/scenario.hpp"
#include "cityres/error.hpp"

using namespace cityres::cli;

namespace {

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw cityres::ValidationError("not a number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_doubles(text)) {
    if (v != static_cast<int>(v)) throw cityres::ValidationError("not an integer in list: " + std::to_string(v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupling frequencies of buildings on an elastic half-plane"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write CSV to this file instead of standard output");

  Fig10Options fig10;
  auto* c_fig10 = app.add_subcommand("fig10", "Single-building root against M");
  c_fig10->add_option("--Mmax", fig10.m_max, "Largest M")->capture_default_str();
  c_fig10->add_option("--Mstep", fig10.m_step, "M increment")->capture_default_str();
  c_fig10->add_option("--xi0", fig10.xi0, "Initial xi")->capture_default_str();

  Table1Options table1;
  std::string spacings;
  auto* c_table1 = app.add_subcommand("table1", "Identical equally spaced buildings: xi_1, xi_per, xi_N");
  c_table1->add_option("--N", table1.N, "Buildings in the finite row")->capture_default_str();
  c_table1->add_option("--M", table1.M, "Half the nodes per building")->capture_default_str();
  c_table1->add_option("--xi0", table1.xi0, "Initial xi")->capture_default_str();
  c_table1->add_option("--spacings", spacings, "Comma-separated spacings");

  std::string config;
  SolveOptions solve;
  auto* c_solve = app.add_subcommand("solve", "One coupling frequency for a scenario");
  c_solve->add_option("--config", config, "Scenario file")->required();
  c_solve->add_option("--pin", solve.pin, "Building with alpha = 1 (Newton)");
  c_solve->add_option("--eig", solve.eig, "Eigen index (identical buildings)");
  c_solve->add_option("--xi0", solve.xi0, "Initial xi");
  c_solve->add_option("--M", solve.M, "Half the nodes per building");

  ConvergeOptions converge;
  std::string repeats, pins;
  auto* c_converge = app.add_subcommand("converge", "Finite repetitions of a pattern against the periodic city");
  c_converge->add_option("--config", config, "Scenario file")->required();
  c_converge->add_option("--repeats", repeats, "Comma-separated cell counts")->required();
  c_converge->add_option("--pins", pins, "Comma-separated pins, one per cell count");
  c_converge->add_option("--pin", converge.pin, "Pin within the cell");
  c_converge->add_option("--xi0", converge.xi0, "Initial xi");
  c_converge->add_option("--M", converge.M, "Half the nodes per building");

  ProbeOptions probe;
  auto* c_probe = app.add_subcommand("greens-probe", "Samples of G_per and its smooth part");
  c_probe->add_option("--xi", probe.xi, "Wavenumber")->capture_default_str();
  c_probe->add_option("--period", probe.period, "Period 2P")->capture_default_str();
  c_probe->add_option("--a", probe.a, "Ewald splitting parameter");
  c_probe->add_option("--grid", probe.grid, "Points per half period")->capture_default_str();

  TopOptions top;
  auto* c_top = app.add_subcommand("top-displacement", "Foundation and top displacement per building");
  c_top->add_option("--config", config, "Scenario file")->required();
  c_top->add_option("--xi", top.xi, "Coupling frequency")->required();
  c_top->add_option("--M", top.M, "Half the nodes per building");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  std::ostringstream buffer;
  const int code = guarded(
      [&] {
        if (*c_fig10) {
          run_fig10(fig10, buffer);
        } else if (*c_table1) {
          if (!spacings.empty()) table1.spacings = parse_doubles(spacings);
          run_table1(table1, buffer);
        } else if (*c_solve) {
          run_solve(load_scenario(config), solve, buffer, std::cerr);
        } else if (*c_converge) {
          converge.repeats = parse_ints(repeats);
          if (!pins.empty()) converge.pins = parse_ints(pins);
          run_converge(load_scenario(config), converge, buffer);
        } else if (*c_probe) {
          run_greens_probe(probe, buffer);
        } else if (*c_top) {
          run_top_displacement(load_scenario(config), top, buffer);
        }
        if (out_path.empty()) {
          std::cout << buffer.str() << std::flush;
        } else {
          std::ofstream file(out_path, std::ios::binary);
          if (!file) throw cityres::ValidationError("cannot open output file '" + out_path + "'");
          file << buffer.str();
        }
      },
      std::cerr);
  return code;
}
