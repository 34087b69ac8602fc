#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "plap/errors.hpp"
#include "plap/scenarios.hpp"
#include "plap/solver.hpp"

namespace {

using plap::Grid;
using plap::SolverConfig;
using plap::SpaceTimeField;
using plap::StructureParams;

SolverConfig config_for(int n, double p, double tol = 1e-11) {
  SolverConfig c(StructureParams::first_bound(n, p));
  c.newton_tol = tol;
  return c;
}

double max_error(const SpaceTimeField& a, const SpaceTimeField& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) e = std::max(e, std::abs(a.values()[k] - b.values()[k]));
  return e;
}

TEST(StepImplicit, ZeroStaysZero) {
  const Grid g(2, 1.0, 9, 3, 0.01);
  const auto prob = plap::zero_problem(g);
  const auto step = plap::step_implicit(g, prob.initial, config_for(2, 1.7), prob.boundary, 1);
  for (double v : step.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(step.iterations, 0);
}

class AffineStationary : public ::testing::TestWithParam<double> {};

TEST_P(AffineStationary, HundredSteps) {
  const double p = GetParam();
  const Grid g(1, 1.0, 21, 101, 0.01);
  const auto prob = plap::affine_problem(g, 0.7, 2.0);
  SolverConfig c = config_for(1, p);
  c.delta = 0.0;
  const auto u = plap::solve(g, prob.initial, c, prob.boundary);
  EXPECT_LE(max_error(u, *prob.exact), 10.0 * c.newton_tol);
}

INSTANTIATE_TEST_SUITE_P(Exponents, AffineStationary, ::testing::Values(1.5, 1.8, 2.0, 2.5, 3.0, 4.0));

TEST(AffineStationary, TwoDimensionalSlope) {
  const Grid g(2, 1.0, 9, 11, 0.01);
  const auto prob = plap::affine_problem(g, -0.5, 3.0);
  const auto c = config_for(2, 2.5);
  const auto u = plap::solve(g, prob.initial, c, prob.boundary);
  EXPECT_LE(max_error(u, *prob.exact), 10.0 * c.newton_tol);
}

TEST(ExactPower, HeatCaseIsReproduced) {
  // p = 2, B = 1: u = 2 t + x^2 (shifted); the scheme is exact on it
  const Grid g(1, 1.0, 41, 21, 1e-3);
  const auto prob = plap::power_problem(g, 1.0, 2.0);
  const auto c = config_for(1, 2.0);
  const auto u = plap::solve(g, prob.initial, c, prob.boundary);
  EXPECT_LT(max_error(u, *prob.exact), 1e-9);
  EXPECT_LT(plap::residual(*prob.exact, c), 1e-9);
  const Grid g2(1, 1.0, 5, 3, 0.5);
  const auto ex = plap::exact_power(1.0, 2.0, g2);
  EXPECT_NEAR(ex.at(g2.node(4), 2) - ex.at(g2.node(2), 0), 2.0 * 1.0 + 1.0, 1e-14);
}

TEST(ExactPower, ResidualAwayFromOriginShrinksUnderRefinement) {
  for (double p : {3.0, 1.8}) {
    const double b = p == 3.0 ? 1.0 : 2.0;
    double prev = 0.0;
    for (int level = 0; level < 3; ++level) {
      const int nx = 41 * (1 << level) - ((1 << level) - 1);
      const double dt = 1e-3 / (1 << level);
      const Grid g(1, 1.0, nx, 11, dt);
      const SpaceTimeField ex = plap::exact_power(b, p, g);
      const double r = plap::residual(ex, config_for(1, p), 0.2);
      if (level > 0) {
        EXPECT_LT(r, prev / 1.8) << "p=" << p << " level " << level;
      }
      prev = r;
    }
  }
}

TEST(ExactPower, RejectsTwoDimensions) {
  EXPECT_THROW((void)plap::exact_power(1.0, 2.0, Grid(2, 1.0, 5, 3, 0.1)), plap::DimensionError);
  EXPECT_THROW((void)plap::exact_power(1.0, 1.0, Grid(1, 1.0, 5, 3, 0.1)), plap::RangeError);
}

TEST(Solve, PreservesNonNegativityAndComparison) {
  for (double p : {1.7, 2.0, 3.0}) {
    const Grid g(2, 1.0, 15, 11, 0.01);
    const auto prob = plap::random_problem(g, 42, 3, 2.0);
    const auto c = config_for(2, p);
    const auto u = plap::solve(g, prob.initial, c, prob.boundary);
    EXPECT_GE(u.min(), -10.0 * c.newton_tol) << p;
    EXPECT_GE(plap::comparison_gap(u), -c.newton_tol) << p;
  }
}

TEST(Solve, CoefficientIsHonoured) {
  const Grid g(1, 1.0, 21, 11, 0.01);
  auto c = config_for(1, 2.0);
  c.params = StructureParams(1, 2.0, 1.0, 2.0, 4.0 / 3.0);
  c.coefficient = plap::oscillating_coefficient(g, 1.0, 2.0);
  EXPECT_GE(c.coefficient->min(), 1.0 - 1e-12);
  EXPECT_LE(c.coefficient->max(), 2.0 + 1e-12);
  const auto prob = plap::bump_problem(g, 1.0, 0.6);
  const auto u = plap::solve(g, prob.initial, c, prob.boundary);
  auto plain = config_for(1, 2.0);
  const auto v = plap::solve(g, prob.initial, plain, prob.boundary);
  EXPECT_LT(u.max(), 1.0 + 1e-9);
  // faster diffusion somewhere, so the peak at the last level drops below the c = 1 run
  EXPECT_LT(*std::max_element(u.slice(10).begin(), u.slice(10).end()),
            *std::max_element(v.slice(10).begin(), v.slice(10).end()));
}

TEST(SolverConfig, ValidationErrors) {
  const Grid g(1, 1.0, 11, 3, 0.1);
  auto c = config_for(1, 2.0);
  c.newton_tol = 0.0;
  EXPECT_THROW(c.validate(g), plap::ConfigError);
  c = config_for(2, 2.0);
  EXPECT_THROW(c.validate(g), plap::ConfigError);
  c = config_for(1, 2.0);
  c.coefficient = SpaceTimeField::from_function(g, [](const plap::Point&, double) { return 5.0; });
  EXPECT_THROW(c.validate(g), plap::ConfigError);
}

TEST(StepImplicit, ReportsNonConvergence) {
  const Grid g(1, 1.0, 41, 3, 1.0);
  const auto prob = plap::bump_problem(g, 50.0, 0.3);
  auto c = config_for(1, 4.0, 1e-14);
  c.newton_max = 1;
  try {
    (void)plap::solve(g, prob.initial, c, prob.boundary);
    FAIL() << "expected NonConvergence";
  } catch (const plap::NonConvergence& e) {
    EXPECT_EQ(e.time_index(), 1u);
    EXPECT_GT(e.last_residual(), 0.0);
  }
}

TEST(ModelFlux, StructureConditions) {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double delta : {1e-2, 1e-4, 1e-8}) {
      for (double gx : {-3.0, -0.1, 0.0, 1e-3, 0.5, 2.0}) {
        const std::array<double, 2> grad{gx, 0.5 * gx};
        const double c = 1.3;
        const auto f = plap::model_flux(grad, c, p, delta);
        const double g2 = grad[0] * grad[0] + grad[1] * grad[1];
        const double fn = std::hypot(f[0], f[1]);
        EXPECT_LE(fn, c * std::pow(g2 + delta * delta, 0.5 * (p - 1.0)) * (1 + 1e-12));
        const double coerc = f[0] * grad[0] + f[1] * grad[1];
        // defect vanishes with delta
        const double defect = c * std::pow(g2, 0.5 * p) - coerc;
        EXPECT_LE(defect, c * std::pow(delta, p) + 1e-14);
      }
    }
  }
}

TEST(Steklov, ConstantLinearAndOneStep) {
  const Grid g(1, 1.0, 3, 11, 0.1);
  const auto one = SpaceTimeField::from_function(g, [](const plap::Point&, double) { return 2.0; });
  const auto avg = plap::steklov_average(one, 0.3);
  EXPECT_NEAR(avg.at(1, 0), 2.0, 1e-14);
  EXPECT_NEAR(avg.at(1, 7), 2.0, 1e-14);
  EXPECT_EQ(avg.at(1, 8), 0.0);
  const auto lin = SpaceTimeField::from_function(g, [](const plap::Point&, double t) { return t; });
  const auto la = plap::steklov_average(lin, 0.25);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(la.at(0, j), g.time(j) + 0.125, 1e-13);
  const auto step = plap::steklov_average(lin, 0.1);
  EXPECT_NEAR(step.at(2, 3), 0.5 * (g.time(3) + g.time(4)), 1e-14);
  EXPECT_THROW((void)plap::steklov_average(lin, 1.0), std::invalid_argument);
}

}  // namespace
