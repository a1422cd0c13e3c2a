#include <gtest/gtest.h>

#include <cmath>

#include "cityres/citymodel.hpp"
#include "cityres/error.hpp"

using namespace cityres;
using namespace cityres::city;

namespace {

BuildingSpec at(double a, double b) {
  BuildingSpec s;
  s.a = a;
  s.b = b;
  return s;
}

double rel(double x, double ref) { return std::fabs(x - ref) / std::fabs(ref); }

}  // namespace

TEST(DimensionalBuilding, ConsistencyIsEnforced) {
  EXPECT_NO_THROW(DimensionalBuilding(1.0, 2.0, 200.0, 450.0, 800.0, 500.0, 450.0));
  EXPECT_THROW(DimensionalBuilding(1.0, 2.0, 200.0, 450.0, 799.0, 500.0, 450.0), ValidationError);
  EXPECT_THROW(DimensionalBuilding(1.0, 2.0, 200.0, 450.0, 800.0, 500.0, 451.0), ValidationError);
  EXPECT_THROW(DimensionalBuilding(1.0, 2.0, 200.0, 450.0, 800.0, -1.0, 450.0), ValidationError);
  const auto d = DimensionalBuilding::from_geometry(1.0, 2.0, 200.0, 450.0, 500.0);
  EXPECT_DOUBLE_EQ(d.top_mass(), 800.0);
  EXPECT_DOUBLE_EQ(d.modulus(), 450.0);
}

TEST(Nondimensionalize, Examples) {
  const HalfSpaceSpec hs{200.0, 200.0, 1.0};
  EXPECT_DOUBLE_EQ(hs.beta(), 1.0);
  const auto d = DimensionalBuilding::from_geometry(1.0, 2.0, 200.0, 2.25 * 200.0, 800.0 / 1.5);
  const auto city = nondimensionalize({d}, {{-1.0, 1.0}}, hs);
  const auto& s = city.buildings()[0];
  EXPECT_DOUBLE_EQ(s.f, 0.5);
  EXPECT_DOUBLE_EQ(s.c, 1.0);
  EXPECT_NEAR(s.bshear, 1.5, 1e-15);
  EXPECT_NEAR(s.gamma, 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(s.r, 1.0);
}

TEST(Nondimensionalize, ScalesPositionsByTheCharacteristicLength) {
  const HalfSpaceSpec hs{2000.0, 8e7, 10.0};
  const auto d = DimensionalBuilding::from_geometry(5.0, 30.0, 300.0, 2e7, 1e5);
  const auto city = nondimensionalize({d}, {{-20.0, -10.0}}, hs);
  EXPECT_DOUBLE_EQ(city.buildings()[0].a, -2.0);
  EXPECT_DOUBLE_EQ(city.buildings()[0].b, -1.0);
  EXPECT_THROW(nondimensionalize({d}, {}, hs), ValidationError);
  EXPECT_THROW(nondimensionalize({d}, {{0.0, 1.0}}, HalfSpaceSpec{0.0, 1.0, 1.0}), ValidationError);
}

TEST(Nondimensionalize, RoundTrip) {
  const HalfSpaceSpec hs{2000.0, 8e7, 10.0};
  const std::vector<DimensionalBuilding> in{DimensionalBuilding::from_geometry(5.0, 30.0, 300.0, 2e7, 1e5),
                                            DimensionalBuilding::from_geometry(7.5, 12.0, 450.0, 3.5e7, 4.2e4)};
  const auto city = nondimensionalize(in, {{0.0, 10.0}, {20.0, 35.0}}, hs);
  for (std::size_t j = 0; j < in.size(); ++j) {
    const auto out = reconstruct(city.buildings()[j], hs);
    EXPECT_LE(rel(out.half_width(), in[j].half_width()), 1e-12);
    EXPECT_LE(rel(out.height(), in[j].height()), 1e-12);
    EXPECT_LE(rel(out.density(), in[j].density()), 1e-12);
    EXPECT_LE(rel(out.shear(), in[j].shear()), 1e-12);
    EXPECT_LE(rel(out.top_mass(), in[j].top_mass()), 1e-12);
    EXPECT_LE(rel(out.foundation_mass(), in[j].foundation_mass()), 1e-12);
    EXPECT_LE(rel(out.modulus(), in[j].modulus()), 1e-12);
  }
}

TEST(Polynomials, StandardParameters) {
  const BuildingSpec s;
  EXPECT_NEAR(p_of(s, 1.0), 0.4375, 1e-15);
  EXPECT_NEAR(q_of(s, 1.0), 0.4 * (1.0 - (5.0 / 3.0) * 0.4375), 1e-15);
  EXPECT_NEAR(q_of(s, 1.0), 0.1083333, 1e-7);
  EXPECT_NEAR(p_of(s, 0.5625), 0.0, 1e-15);
  EXPECT_NEAR(q_of(s, 1e-14), 0.0, 1e-13);
  for (double x = 0.1; x < 5.0; x += 0.1) EXPECT_LT(p_of(s, x), p_of(s, x + 0.1));
}

TEST(TopDisplacement, Examples) {
  const BuildingSpec s;
  EXPECT_NEAR(top_displacement(s, 1.0, 1.0), -1.2857143, 1e-7);
  EXPECT_EQ(top_displacement(s, 1.0, 0.0), 0.0);
  EXPECT_THROW(top_displacement(s, 0.75, 1.0), BuildingResonanceError);
}

TEST(BuildingSpec, Validation) {
  EXPECT_NO_THROW(BuildingSpec{}.validate());
  auto s = BuildingSpec{};
  s.gamma = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s = at(1.0, 1.0);
  EXPECT_THROW(s.validate(), ValidationError);
  s = BuildingSpec{};
  s.bshear = std::nan("");
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(CityConfig, IdenticalDegeneracy) {
  const auto city = CityConfig::finite({at(0, 2), at(3, 5), at(6, 8)});
  EXPECT_TRUE(city.identical());
  for (const auto& b : city.buildings()) {
    EXPECT_EQ(p_of(b, 1.7), p_of(city.buildings()[0], 1.7));
    EXPECT_EQ(q_of(b, 1.7), q_of(city.buildings()[0], 1.7));
  }
  auto other = at(9, 10);
  other.c = 0.5;
  EXPECT_FALSE(CityConfig::finite({at(0, 2), other}).identical());
}

TEST(CityConfig, FiniteValidation) {
  EXPECT_THROW(CityConfig::finite({}), ValidationError);
  EXPECT_THROW(CityConfig::finite({at(0, 2), at(1, 3)}), ValidationError);
  EXPECT_NO_THROW(CityConfig::finite({at(3, 5), at(0, 2)}));
  EXPECT_EQ(CityConfig::finite({at(0, 2)}).period(), 0.0);
  EXPECT_FALSE(CityConfig::finite({at(0, 2)}).kernel_mode().is_periodic());
}

TEST(CityConfig, PeriodicCellMustFit) {
  EXPECT_NO_THROW(CityConfig::periodic({at(-2.5, -1.5), at(1.5, 3.0)}, 7.5));
  EXPECT_THROW(CityConfig::periodic({at(0.0, 2.0), at(3.0, 6.0)}, 6.0), ValidationError);
  EXPECT_THROW(CityConfig::periodic({at(0.0, 2.0)}, 1.5), ValidationError);
  EXPECT_THROW(CityConfig::periodic({at(0.0, 2.0)}, -3.0), ValidationError);
  const auto cell = CityConfig::periodic({at(0.0, 2.0)}, 5.0);
  EXPECT_DOUBLE_EQ(cell.half_period(), 2.5);
  EXPECT_TRUE(cell.kernel_mode().is_periodic());
}

TEST(CityConfig, Repeated) {
  const auto cell = CityConfig::periodic({at(0.0, 1.2), at(2.0, 3.0), at(5.0, 6.7)}, 7.0);
  const auto city = cell.repeated(3);
  ASSERT_EQ(city.size(), 9u);
  EXPECT_FALSE(city.is_periodic());
  EXPECT_DOUBLE_EQ(city.buildings()[4].a, 9.0);
  EXPECT_DOUBLE_EQ(city.buildings()[8].b, 20.7);
  EXPECT_EQ(cell.repeated(1).size(), 3u);
  EXPECT_THROW(cell.repeated(0), ValidationError);
  EXPECT_THROW(CityConfig::finite({at(0, 1)}).repeated(2), ValidationError);
}
