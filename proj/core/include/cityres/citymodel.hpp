#pragma once

// Building descriptions and the algebra linking foundation motion to the
// building response. Lengths are scaled by the characteristic length l and
// frequencies by beta / l, so xi = omega l / beta.

#include <optional>
#include <vector>

#include "cityres/bie.hpp"

namespace cityres::city {

/// Elastic half-plane under the buildings.
struct HalfSpaceSpec {
  double density;  ///< rho
  double shear;    ///< S
  double length;   ///< characteristic length l

  double beta() const;
  /// Throws ValidationError unless every field is positive and finite.
  void validate() const;
};

/// One building in physical units.
class DimensionalBuilding {
 public:
  /// Throws ValidationError if a field is not positive, or if
  /// m1 != 2 l h rho or k != 2 S l / h beyond 1e-12 relative.
  DimensionalBuilding(double half_width, double height, double density, double shear, double top_mass,
                      double foundation_mass, double modulus);

  /// Derives the top mass and the modulus from the geometry.
  static DimensionalBuilding from_geometry(double half_width, double height, double density, double shear,
                                           double foundation_mass);

  double half_width() const noexcept { return half_width_; }
  double height() const noexcept { return height_; }
  double density() const noexcept { return density_; }
  double shear() const noexcept { return shear_; }
  double top_mass() const noexcept { return top_mass_; }
  double foundation_mass() const noexcept { return foundation_mass_; }
  double modulus() const noexcept { return modulus_; }
  double beta() const;

 private:
  double half_width_;
  double height_;
  double density_;
  double shear_;
  double top_mass_;
  double foundation_mass_;
  double modulus_;
};

/// Nondimensional building: gamma = m1/m0, f = l_j/h_j, c = l_j/l,
/// r = rho_j/rho, bshear = beta_j/beta, foundation [a, b].
struct BuildingSpec {
  double gamma = 1.5;
  double f = 0.5;
  double c = 1.0;
  double r = 0.1;
  double bshear = 1.5;
  double a = -1.0;
  double b = 1.0;

  /// Throws ValidationError unless the parameters are positive and a < b.
  void validate() const;
  bool same_parameters(const BuildingSpec& other) const noexcept;
};

enum class Mode { finite, periodic };

/// Ordered buildings, either a finite row or one cell of a periodic city with
/// period 2P (building j + B sits at a_j + 2P).
class CityConfig {
 public:
  /// Throws ValidationError for an empty list or overlapping foundations.
  static CityConfig finite(std::vector<BuildingSpec> buildings);
  /// Also requires the cell to fit in one period with a gap of at least
  /// bie::kMinSeparation to the next copy.
  static CityConfig periodic(std::vector<BuildingSpec> buildings, double period);

  Mode mode() const noexcept { return mode_; }
  bool is_periodic() const noexcept { return mode_ == Mode::periodic; }
  const std::vector<BuildingSpec>& buildings() const noexcept { return buildings_; }
  std::size_t size() const noexcept { return buildings_.size(); }
  /// 2P; zero for a finite city.
  double period() const noexcept { return period_; }
  double half_period() const noexcept { return 0.5 * period_; }

  /// True if all buildings share (gamma, f, c, r, bshear).
  bool identical() const noexcept;

  std::vector<bie::Foundation> foundations() const;
  bie::KernelMode kernel_mode() const;

  /// Finite city of nc copies of this cell shifted by the period.
  CityConfig repeated(int nc) const;

 private:
  CityConfig(std::vector<BuildingSpec> buildings, Mode mode, double period);

  std::vector<BuildingSpec> buildings_;
  Mode mode_;
  double period_;
};

/// Finite city from physical buildings; positions are foundation intervals in
/// physical length.
CityConfig nondimensionalize(const std::vector<DimensionalBuilding>& buildings,
                             const std::vector<bie::Foundation>& positions, const HalfSpaceSpec& half_space);

/// Inverse of nondimensionalize for one building.
DimensionalBuilding reconstruct(const BuildingSpec& spec, const HalfSpaceSpec& half_space);

/// p(xi^2) = c^2 xi^2 - bshear^2 f^2.
double p_of(const BuildingSpec& b, double xi2);

/// q(xi^2) = (2 r c^2 xi^2 / f) (c^2 xi^2 - ((gamma + 1) / gamma) p(xi^2)).
double q_of(const BuildingSpec& b, double xi2);

/// Nondimensional top displacement eta = -bshear^2 f^2 alpha / p(xi^2).
/// Throws BuildingResonanceError when |p| <= 1e-12.
double top_displacement(const BuildingSpec& b, double xi, double alpha);

}  // namespace cityres::city
