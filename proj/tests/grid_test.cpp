#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <sstream>

#include "plap/errors.hpp"
#include "plap/field_io.hpp"
#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace {

using plap::Cylinder;
using plap::Grid;
using plap::ShrinkSchedule;
using plap::SpaceTimeField;
using plap::StructureParams;

TEST(Grid, OriginIsANode) {
  const Grid g(1, 1.0, 11, 5, 0.1);
  EXPECT_DOUBLE_EQ(g.h(), 0.2);
  EXPECT_DOUBLE_EQ(g.coord(5), 0.0);
  EXPECT_DOUBLE_EQ(g.time(2), 0.0);
  EXPECT_DOUBLE_EQ(g.half_time(), 0.2);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(Grid(3, 1.0, 11, 5, 0.1), plap::DimensionError);
  EXPECT_THROW(Grid(1, 1.0, 10, 5, 0.1), std::invalid_argument);
  EXPECT_THROW(Grid(1, 1.0, 1, 5, 0.1), std::invalid_argument);
  EXPECT_THROW(Grid(1, 1.0, 11, 5, 0.0), std::invalid_argument);
  EXPECT_THROW(Grid(1, -1.0, 11, 5, 0.1), std::invalid_argument);
}

TEST(Grid, NodeNumberingIsRowMajor) {
  const Grid g(2, 1.0, 5, 3, 0.1);
  EXPECT_EQ(g.nodes_per_slice(), 25u);
  EXPECT_EQ(g.node(3, 2), 13u);
  EXPECT_EQ(g.ix(13), 3);
  EXPECT_EQ(g.iy(13), 2);
  EXPECT_TRUE(g.on_boundary(g.node(0, 2)));
  EXPECT_TRUE(g.on_boundary(g.node(2, 4)));
  EXPECT_FALSE(g.on_boundary(g.node(2, 2)));
  EXPECT_DOUBLE_EQ(g.radius(g.node(4, 4)), std::sqrt(2.0));
}

TEST(Field, RejectsNonFinite) {
  const Grid g(1, 1.0, 3, 1, 0.1);
  EXPECT_THROW(SpaceTimeField(g, {0.0, NAN, 1.0}), std::invalid_argument);
  EXPECT_THROW(SpaceTimeField(g, {0.0, 1.0}), std::invalid_argument);
}

TEST(Field, MinMaxAndScale) {
  const Grid g(1, 1.0, 3, 2, 0.1);
  const SpaceTimeField f(g, {1.0, -2.0, 3.0, 0.5, 0.0, 4.0});
  EXPECT_DOUBLE_EQ(f.min(), -2.0);
  EXPECT_DOUBLE_EQ(f.max(), 4.0);
  EXPECT_FALSE(f.is_nonnegative());
  EXPECT_DOUBLE_EQ(f.scaled(2.0).at(2, 1), 8.0);
  EXPECT_DOUBLE_EQ(f.slice(1)[0], 0.5);
}

TEST(Cylinder, FitsAndMeasure) {
  const Grid g(2, 1.0, 11, 11, 0.1);
  EXPECT_TRUE(Cylinder(1.0, 0.5).fits(g));
  EXPECT_FALSE(Cylinder(1.1, 0.5).fits(g));
  EXPECT_FALSE(Cylinder(0.5, 0.6).fits(g));
  EXPECT_NEAR(Cylinder(0.5, 0.25).measure(2), M_PI * 0.25 * 0.5, 1e-15);
  EXPECT_NEAR(Cylinder(0.5, 0.25).measure(1), 0.5, 1e-15);
  EXPECT_THROW(Cylinder(0.0, 1.0), std::invalid_argument);
}

TEST(Gradient, ExactOnAffine) {
  const Grid g(2, 1.0, 7, 1, 0.1);
  auto f = SpaceTimeField::from_function(g, [](const plap::Point& x, double) { return 3.0 * x[0] - 2.0 * x[1] + 1.0; });
  for (std::size_t n = 0; n < g.nodes_per_slice(); ++n) {
    const auto grad = plap::spatial_gradient(g, f.slice(0), n);
    EXPECT_NEAR(grad[0], 3.0, 1e-12);
    EXPECT_NEAR(grad[1], -2.0, 1e-12);
  }
}

TEST(Params, ExponentsAndAdmissibility) {
  const auto a = StructureParams::first_bound(2, 2.0);
  EXPECT_DOUBLE_EQ(a.eps0, 1.0);
  EXPECT_DOUBLE_EQ(a.q(), 4.0);
  EXPECT_TRUE(a.admissible());
  EXPECT_NO_THROW(a.require_admissible());
  const StructureParams b(2, 1.5, 1.0, 1.0, 0.4);
  EXPECT_FALSE(b.admissible());
  EXPECT_THROW(b.require_admissible(), plap::AdmissibilityError);
  EXPECT_THROW(StructureParams(1, 1.0, 1.0, 1.0, 0.5), plap::RangeError);
  EXPECT_THROW(StructureParams(1, 2.0, 2.0, 1.0, 0.5), std::invalid_argument);
  EXPECT_DOUBLE_EQ(StructureParams::second_bound(2, 2.0).eps0, 2.0 / 3.0);
}

TEST(Params, FirstBoundEps0AdmissibleOnWholeRange) {
  for (int n = 1; n <= 5; ++n) {
    const double lo = 2.0 * n / (n + 2.0);
    for (int k = 1; k <= 400; ++k) {
      const double p = lo + 0.01 * k;
      if (p <= 1.0) continue;
      EXPECT_TRUE(StructureParams::first_bound(n, p).admissible()) << "N=" << n << " p=" << p;
    }
  }
}

TEST(ShrinkingRadii, HandValues) {
  const ShrinkSchedule s(0.5, Cylinder(1.0, 1.0));
  const auto r0 = plap::shrinking_radii(s, 0);
  EXPECT_DOUBLE_EQ(r0.rho, 1.0);
  EXPECT_DOUBLE_EQ(r0.theta, 1.0);
  const auto r1 = plap::shrinking_radii(s, 1);
  EXPECT_DOUBLE_EQ(r1.rho, 0.75);
  EXPECT_DOUBLE_EQ(r1.rho_tilde, 0.6875);
  EXPECT_NEAR(plap::shrinking_radii(s, 60).rho, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(s.limit().rho, 0.5);
}

TEST(ShrinkingRadii, NestedForRandomSigma) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    const double sigma = unit(rng);
    const double rho = 0.1 + unit(rng);
    const double theta = 0.1 + unit(rng);
    const ShrinkSchedule s(sigma, Cylinder(rho, theta));
    for (int i = 0; i <= 40; ++i) {
      const auto a = s.radii(i);
      const auto b = s.radii(i + 1);
      EXPECT_LE(sigma * rho, b.rho);
      EXPECT_LE(sigma * theta, b.theta);
      // strict until the radii reach the floating point floor
      if (a.rho - sigma * rho > 1e-13 * rho) {
        EXPECT_LT(b.rho, a.rho_tilde);
        EXPECT_LT(a.rho_tilde, a.rho);
        EXPECT_LT(b.theta, a.theta_tilde);
      }
      EXPECT_LE(a.rho, rho);
    }
  }
}

TEST(LevelSchedule, Values) {
  EXPECT_DOUBLE_EQ(plap::level_schedule(8.0, 0), 0.0);
  EXPECT_DOUBLE_EQ(plap::level_schedule(8.0, 3), 7.0);
  EXPECT_DOUBLE_EQ(plap::level_schedule(8.0, 80), 8.0);
  double prev = -1.0;
  for (int i = 0; i < 50; ++i) {
    const double k = plap::level_schedule(8.0, i);
    EXPECT_LE(k, 8.0);
    EXPECT_GT(k, prev);
    prev = k;
  }
}

TEST(ScaleFactor, HandValues) {
  EXPECT_DOUBLE_EQ(plap::scale_factor_A(1.0, 1.0, 2, 2.7), 2.0);
  EXPECT_DOUBLE_EQ(plap::scale_factor_A(1.0, 2.0, 2, 2.0), 2.5);
  EXPECT_NEAR(plap::scale_factor_A(2.0, 1.0, 1, 3.0), 2.125, 1e-14);
  EXPECT_THROW((void)plap::scale_factor_A(0.0, 1.0, 1, 2.0), std::invalid_argument);
}

TEST(FieldIo, BinaryRoundTrip) {
  const Grid g(2, 0.7, 5, 3, 0.05);
  auto f = SpaceTimeField::from_function(g, [](const plap::Point& x, double t) { return x[0] * x[1] + t; });
  std::stringstream buf;
  plap::write_field_binary(buf, f);
  EXPECT_EQ(buf.str().size(), 40u + 8u * g.size());
  const auto back = plap::read_field_binary(buf);
  EXPECT_TRUE(back.grid() == g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(back.values()[k], f.values()[k]);
}

TEST(FieldIo, TruncatedInputThrows) {
  std::stringstream buf("abc");
  EXPECT_THROW((void)plap::read_field_binary(buf), std::runtime_error);
}

TEST(FieldIo, CsvHeaderAndRows) {
  const Grid g(1, 1.0, 3, 2, 0.5);
  const SpaceTimeField f(g, {1, 2, 3, 4, 5, 6});
  std::ostringstream out;
  plap::write_field_csv(out, f);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("t,x,u\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
  std::ostringstream small;
  EXPECT_THROW(plap::write_field_csv(small, f, 3), std::length_error);
}

}  // namespace
