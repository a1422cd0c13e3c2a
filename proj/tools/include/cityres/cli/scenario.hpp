#pragma once

// Scenario files (YAML):
//
//   mode: finite            # or periodic
//   M: 10
//   xi0: 1.0
//   pin: 2                  # or eig_index: 1 (identical buildings only)
//   period: 7.5             # 2P; required for periodic, optional with repeat
//   repeat: 1               # finite mode: copies of the pattern, shifted by period
//   defaults: {gamma: 1.5, f: 0.5, r: 0.1, bshear: 1.5}
//   buildings:
//     - {a: 0, b: 1}
//     - {a: 1.3, b: 2.6, c: 0.65}
//
// Building fields gamma, f, r, bshear fall back to `defaults`, then to the
// standard values above; c falls back to `defaults`, then to (b - a) / 2.

#include <iosfwd>
#include <optional>
#include <string>

#include "cityres/citymodel.hpp"

namespace cityres::cli {

struct Scenario {
  city::Mode mode = city::Mode::finite;
  int M = 5;
  double xi0 = 1.0;
  std::optional<int> pin;
  std::optional<int> eig_index;
  std::optional<double> period;
  int repeat = 1;
  std::vector<city::BuildingSpec> buildings;

  /// Pattern as written: periodic cell, or finite list when no period is set.
  city::CityConfig pattern() const;
  /// The city to solve: the periodic cell, or the pattern repeated `repeat` times.
  city::CityConfig city() const;
};

/// Throws ValidationError naming the file, line and field on any problem.
Scenario parse_scenario(const std::string& text, const std::string& source = "<string>");
Scenario load_scenario(const std::string& path);

}  // namespace cityres::cli
