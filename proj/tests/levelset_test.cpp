#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "plap/errors.hpp"
#include "plap/levelset.hpp"
#include "plap/quadrature.hpp"
#include "random_fields.hpp"

namespace {

using plap::Cylinder;
using plap::Grid;
using plap::ShrinkSchedule;
using plap::SpaceTimeField;
using plap::StructureParams;

SpaceTimeField constant(const Grid& g, double c) {
  return SpaceTimeField::from_function(g, [c](const plap::Point&, double) { return c; });
}

TEST(Truncate, HandValues) {
  const Grid g(1, 1.0, 3, 1, 0.1);
  const SpaceTimeField u(g, {1.0, 3.0, 5.0});
  const auto t = plap::truncate(u, 2.0);
  EXPECT_EQ(t.values.values()[0], 0.0);
  EXPECT_EQ(t.values.values()[1], 1.0);
  EXPECT_EQ(t.values.values()[2], 3.0);
  const auto id = plap::truncate(u, 0.0);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(id.values.values()[k], u.values()[k]);
  EXPECT_EQ(plap::truncate(u, 5.0).values.max(), 0.0);
  EXPECT_THROW((void)plap::truncate(u, -1.0), std::invalid_argument);
}

TEST(Truncate, MonotoneInLevel) {
  const Grid g(2, 1.0, 9, 5, 0.1);
  const auto u = plap::testing::random_nonnegative_field(g, 5);
  const auto a = plap::truncate(u, 0.3);
  const auto b = plap::truncate(u, 0.9);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_GE(a.values.values()[k], b.values.values()[k]);
}

TEST(SuperlevelSet, StrictInequalityAndMeasure) {
  const Grid g(1, 1.0, 11, 11, 0.1);
  const auto u = constant(g, 1.0);
  const Cylinder c(0.5, 0.3);
  EXPECT_DOUBLE_EQ(plap::superlevel_set(u, c, 1.0).measure, 0.0);
  const auto all = plap::superlevel_set(u, c, 0.5);
  EXPECT_NEAR(all.measure, c.measure(1), 1e-14);
  const auto rnd = plap::testing::random_nonnegative_field(g, 9);
  const auto s = plap::superlevel_set(rnd, c, 0.5 * rnd.max());
  EXPECT_GE(s.measure, 0.0);
  EXPECT_LE(s.measure, c.measure(1) * (1 + 1e-14));
  const plap::CylinderQuadrature q(g, c);
  const double direct = q.integrate([&](std::size_t n, int j) {
    return s.indicator[static_cast<std::size_t>(j) * g.nodes_per_slice() + n] ? 1.0 : 0.0;
  });
  EXPECT_DOUBLE_EQ(s.measure, direct);
}

TEST(MeasureBound, ZeroAndConstantFields) {
  const Grid g(1, 1.0, 41, 41, 0.05);
  const ShrinkSchedule s(0.5, Cylinder(0.9, 0.9));
  const auto z = plap::measure_bound_check(constant(g, 0.0), s, 1.0, 2, 2.0);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);
  const double k = 3.0;
  for (int i = 0; i < 4; ++i) {
    for (double sp : {1.0, 2.0, 2.5}) {
      const auto side = plap::measure_bound_check(constant(g, k), s, k, i, sp);
      const plap::CylinderQuadrature qi(g, s.cylinder(i));
      const plap::CylinderQuadrature qn(g, s.cylinder(i + 1));
      const double qi_w = qi.integrate([](std::size_t, int) { return 1.0; });
      const double qn_w = qn.integrate([](std::size_t, int) { return 1.0; });
      EXPECT_NEAR(side.lhs, qn_w, 1e-13);
      EXPECT_NEAR(side.rhs, std::pow(2.0, sp) * qi_w, 1e-12);
      EXPECT_TRUE(side.holds());
    }
  }
}

TEST(MeasureBound, RandomFields) {
  const Grid g(2, 1.0, 15, 11, 0.1);
  const ShrinkSchedule s(0.4, Cylinder(0.9, 0.45));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto u = plap::testing::random_nonnegative_field(g, seed);
    for (int i = 0; i <= 10; ++i) {
      for (double sp : {1.0, 2.0, 2.7}) {
        EXPECT_TRUE(plap::measure_bound_check(u, s, 0.6 * u.max(), i, sp).holds(1e-12)) << seed << " " << i;
      }
    }
  }
  EXPECT_THROW((void)plap::measure_bound_check(constant(g, 1.0), s, 1.0, 0, 0.5), std::invalid_argument);
}

TEST(HolderChains, ConstantTwoK) {
  // u = 2k: on Q_i, (u - k_{i+1}) = k (1 + 2^{-(i+1)}) and (u - k_i) = k (1 + 2^{-i})
  const Grid g(1, 1.0, 41, 41, 0.05);
  const ShrinkSchedule s(0.5, Cylinder(0.9, 0.9));
  const auto params = StructureParams::first_bound(1, 2.0);
  const double k = 1.5;
  for (int i = 0; i < 4; ++i) {
    const plap::CylinderQuadrature q(g, s.cylinder(i));
    const double w = q.integrate([](std::size_t, int) { return 1.0; });
    const double a = k * (1.0 + std::ldexp(1.0, -(i + 1)));
    const double b = k * (1.0 + std::ldexp(1.0, -i));
    const double pe = params.p + params.eps0;
    const auto hp = plap::holder_p_chain(constant(g, 2 * k), s, k, i, params);
    EXPECT_NEAR(hp.lhs, std::pow(a, params.p) * w, 1e-12 * hp.lhs);
    EXPECT_NEAR(hp.rhs, std::pow(2.0, params.eps0 * (i + 1)) / std::pow(k, params.eps0) * std::pow(b, pe) * w,
                1e-12 * hp.rhs);
    EXPECT_TRUE(hp.holds());
    const auto h2 = plap::holder_2_chain(constant(g, 2 * k), s, k, i, params);
    EXPECT_NEAR(h2.lhs, a * a * w, 1e-12 * h2.lhs);
    EXPECT_TRUE(h2.holds());
  }
}

TEST(HolderChains, ZeroField) {
  const Grid g(1, 1.0, 21, 21, 0.05);
  const ShrinkSchedule s(0.5, Cylinder(0.9, 0.45));
  const auto params = StructureParams::first_bound(1, 2.5);
  const auto hp = plap::holder_p_chain(constant(g, 0.0), s, 1.0, 0, params);
  EXPECT_EQ(hp.lhs, 0.0);
  EXPECT_EQ(hp.rhs, 0.0);
  EXPECT_EQ(hp.ratio(), 0.0);
}

TEST(HolderChains, RejectInadmissibleExponents) {
  const Grid g(1, 1.0, 21, 21, 0.05);
  const ShrinkSchedule s(0.5, Cylinder(0.9, 0.45));
  const StructureParams bad(1, 1.5, 1.0, 1.0, 0.2);
  EXPECT_THROW((void)plap::holder_p_chain(constant(g, 1.0), s, 1.0, 0, bad), plap::AdmissibilityError);
  EXPECT_THROW((void)plap::holder_2_chain(constant(g, 1.0), s, 1.0, 0, bad), plap::AdmissibilityError);
}

TEST(HolderChains, RandomFields) {
  const Grid g(1, 1.0, 31, 21, 0.05);
  const ShrinkSchedule s(0.5, Cylinder(0.95, 0.5));
  for (double p : {1.9, 2.0, 2.5, 3.0}) {
    const auto params = StructureParams::first_bound(1, p);
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
      const auto u = plap::testing::random_nonnegative_field(g, seed);
      for (int i = 0; i <= 6; ++i) {
        EXPECT_TRUE(plap::holder_p_chain(u, s, 0.5 * u.max(), i, params).holds(1e-10));
        EXPECT_TRUE(plap::holder_2_chain(u, s, 0.5 * u.max(), i, params).holds(1e-10));
      }
    }
  }
}

TEST(InequalityCsv, Columns) {
  std::ostringstream out;
  plap::write_inequality_csv(out, {{0, {1.0, 2.0}}, {1, {0.0, 0.0}}});
  EXPECT_EQ(out.str().substr(0, 15), "i,lhs,rhs,ratio");
  EXPECT_NE(out.str().find("0,1,2,0.5"), std::string::npos);
}

}  // namespace
