#include "cityres/citymodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "cityres/error.hpp"

namespace cityres::city {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const char* name) {
  if (!positive(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite (got " << v << ")";
    throw ValidationError(os.str());
  }
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

double HalfSpaceSpec::beta() const { return std::sqrt(shear / density); }

void HalfSpaceSpec::validate() const {
  require_positive(density, "half-space density");
  require_positive(shear, "half-space shear modulus");
  require_positive(length, "characteristic length");
}

DimensionalBuilding::DimensionalBuilding(double half_width, double height, double density, double shear,
                                         double top_mass, double foundation_mass, double modulus)
    : half_width_(half_width),
      height_(height),
      density_(density),
      shear_(shear),
      top_mass_(top_mass),
      foundation_mass_(foundation_mass),
      modulus_(modulus) {
  require_positive(half_width, "building half-width");
  require_positive(height, "building height");
  require_positive(density, "building density");
  require_positive(shear, "building shear modulus");
  require_positive(top_mass, "top mass");
  require_positive(foundation_mass, "foundation mass");
  require_positive(modulus, "building modulus");
  const double m1 = 2.0 * half_width * height * density;
  if (!close(top_mass, m1)) {
    std::ostringstream os;
    os << "top mass " << top_mass << " inconsistent with 2 l h rho = " << m1;
    throw ValidationError(os.str());
  }
  const double k = 2.0 * shear * half_width / height;
  if (!close(modulus, k)) {
    std::ostringstream os;
    os << "modulus " << modulus << " inconsistent with 2 S l / h = " << k;
    throw ValidationError(os.str());
  }
}

DimensionalBuilding DimensionalBuilding::from_geometry(double half_width, double height, double density,
                                                       double shear, double foundation_mass) {
  return DimensionalBuilding(half_width, height, density, shear, 2.0 * half_width * height * density,
                             foundation_mass, 2.0 * shear * half_width / height);
}

double DimensionalBuilding::beta() const { return std::sqrt(shear_ / density_); }

void BuildingSpec::validate() const {
  require_positive(gamma, "gamma");
  require_positive(f, "f");
  require_positive(c, "c");
  require_positive(r, "r");
  require_positive(bshear, "bshear");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream os;
    os << "foundation needs a < b (got [" << a << ", " << b << "])";
    throw ValidationError(os.str());
  }
}

bool BuildingSpec::same_parameters(const BuildingSpec& o) const noexcept {
  return gamma == o.gamma && f == o.f && c == o.c && r == o.r && bshear == o.bshear;
}

CityConfig::CityConfig(std::vector<BuildingSpec> buildings, Mode mode, double period)
    : buildings_(std::move(buildings)), mode_(mode), period_(period) {
  if (buildings_.empty()) throw ValidationError("city has no buildings");
  for (std::size_t j = 0; j < buildings_.size(); ++j) {
    try {
      buildings_[j].validate();
    } catch (const ValidationError& e) {
      std::ostringstream os;
      os << "building " << j + 1 << ": " << e.what();
      throw ValidationError(os.str());
    }
  }
  // Grid construction checks disjointness.
  bie::FoundationGrid(foundations(), 1);
  if (mode_ == Mode::periodic) {
    require_positive(period_, "period");
    double lo = buildings_.front().a;
    double hi = buildings_.front().b;
    for (const auto& b : buildings_) {
      lo = std::min(lo, b.a);
      hi = std::max(hi, b.b);
    }
    if (hi - lo > period_ - bie::kMinSeparation) {
      std::ostringstream os;
      os << "cell spans " << hi - lo << " which does not fit in period " << period_;
      throw ValidationError(os.str());
    }
  }
}

CityConfig CityConfig::finite(std::vector<BuildingSpec> buildings) {
  return CityConfig(std::move(buildings), Mode::finite, 0.0);
}

CityConfig CityConfig::periodic(std::vector<BuildingSpec> buildings, double period) {
  return CityConfig(std::move(buildings), Mode::periodic, period);
}

bool CityConfig::identical() const noexcept {
  return std::all_of(buildings_.begin(), buildings_.end(),
                     [&](const BuildingSpec& b) { return b.same_parameters(buildings_.front()); });
}

std::vector<bie::Foundation> CityConfig::foundations() const {
  std::vector<bie::Foundation> out;
  out.reserve(buildings_.size());
  for (const auto& b : buildings_) out.push_back({b.a, b.b});
  return out;
}

bie::KernelMode CityConfig::kernel_mode() const {
  return is_periodic() ? bie::KernelMode::periodic(half_period()) : bie::KernelMode::free();
}

CityConfig CityConfig::repeated(int nc) const {
  if (nc < 1) throw ValidationError("repeat count must be at least 1");
  if (!is_periodic() && nc > 1) throw ValidationError("repeating a finite city needs a period");
  std::vector<BuildingSpec> out;
  out.reserve(buildings_.size() * static_cast<std::size_t>(nc));
  for (int k = 0; k < nc; ++k) {
    for (auto b : buildings_) {
      b.a += k * period_;
      b.b += k * period_;
      out.push_back(b);
    }
  }
  return finite(std::move(out));
}

CityConfig nondimensionalize(const std::vector<DimensionalBuilding>& buildings,
                             const std::vector<bie::Foundation>& positions, const HalfSpaceSpec& hs) {
  hs.validate();
  if (buildings.size() != positions.size())
    throw ValidationError("nondimensionalize: one foundation interval per building required");
  const double l = hs.length;
  const double beta = hs.beta();
  std::vector<BuildingSpec> specs;
  specs.reserve(buildings.size());
  for (std::size_t j = 0; j < buildings.size(); ++j) {
    const auto& d = buildings[j];
    BuildingSpec s;
    s.gamma = d.top_mass() / d.foundation_mass();
    s.f = d.half_width() / d.height();
    s.c = d.half_width() / l;
    s.r = d.density() / hs.density;
    s.bshear = d.beta() / beta;
    s.a = positions[j].a / l;
    s.b = positions[j].b / l;
    specs.push_back(s);
  }
  return CityConfig::finite(std::move(specs));
}

DimensionalBuilding reconstruct(const BuildingSpec& s, const HalfSpaceSpec& hs) {
  s.validate();
  hs.validate();
  const double half_width = s.c * hs.length;
  const double height = half_width / s.f;
  const double density = s.r * hs.density;
  const double beta_j = s.bshear * hs.beta();
  const double shear = beta_j * beta_j * density;
  const double top = 2.0 * half_width * height * density;
  return DimensionalBuilding(half_width, height, density, shear, top, top / s.gamma,
                             2.0 * shear * half_width / height);
}

double p_of(const BuildingSpec& b, double xi2) { return b.c * b.c * xi2 - b.bshear * b.bshear * b.f * b.f; }

double q_of(const BuildingSpec& b, double xi2) {
  const double c2x = b.c * b.c * xi2;
  return (2.0 * b.r * c2x / b.f) * (c2x - ((b.gamma + 1.0) / b.gamma) * p_of(b, xi2));
}

double top_displacement(const BuildingSpec& b, double xi, double alpha) {
  const double p = p_of(b, xi * xi);
  if (std::fabs(p) <= 1e-12) {
    std::ostringstream os;
    os << "p(xi^2) vanishes at xi = " << xi << "; the building resonates on its own";
    throw BuildingResonanceError(os.str());
  }
  return -b.bshear * b.bshear * b.f * b.f * alpha / p;
}

}  // namespace cityres::city
