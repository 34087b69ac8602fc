// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plap/degiorgi.hpp"
#include "plap/energy.hpp"
#include "plap/errors.hpp"
#include "plap/iteration2.hpp"
#include "plap/levelset.hpp"
#include "plap/scenarios.hpp"
#include "plap/solver.hpp"
#include "plapcli/scenario.hpp"
#include "plapcli/sweep.hpp"
#include "random_fields.hpp"

namespace {

using plap::Cylinder;
using plap::Grid;
using plap::ShrinkSchedule;
using plap::SpaceTimeField;
using plap::StructureParams;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Random suite shared by the Chebyshev and Hoelder criteria.
struct SuiteCase {
  SpaceTimeField field;
  ShrinkSchedule schedule;
  double k;
  double p;
};

SuiteCase suite_case(std::uint64_t seed) {
  static constexpr double kP[] = {1.9, 2.0, 2.5, 3.0};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool two_d = seed % 2 == 1;
  const Grid g = two_d ? Grid(2, 1.0, 15, 9, 0.1) : Grid(1, 1.0, 41, 21, 0.05);
  SpaceTimeField u = plap::testing::random_nonnegative_field(g, seed);
  const double sigma = 0.2 + 0.6 * unit(rng);
  const double rho = 0.3 + 0.7 * unit(rng);
  const double theta = (0.2 + 0.8 * unit(rng)) * g.half_time();
  const double k = std::max(u.max(), 1e-3) * (0.3 + 0.9 * unit(rng));
  return {std::move(u), ShrinkSchedule(sigma, Cylinder(rho, theta)), k, kP[(seed / 2) % 4]};
}

Outcome exact_solution_regression() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (double p : {1.8, 2.0, 3.0}) {
    double err[2] = {0.0, 0.0};
    for (int level = 0; level < 2; ++level) {
      const int nx = level == 0 ? 201 : 401;
      const double dt = level == 0 ? 1e-4 : 5e-5;
      const int nt = static_cast<int>(std::lround(0.1 / dt)) + 1;
      const Grid g(1, 1.0, nx, nt, dt);
      const plap::Problem prob = plap::power_problem(g, 1.0, p);
      plap::SolverConfig cfg(StructureParams::first_bound(1, p));
      cfg.newton_tol = 1e-11;
      const SpaceTimeField u = plap::solve(g, prob.initial, cfg, prob.boundary);
      for (std::size_t k = 0; k < g.size(); ++k) {
        err[level] = std::max(err[level], std::abs(u.values()[k] - prob.exact->values()[k]));
      }
    }
    // below this floor the scheme reproduces the solution up to the Newton tolerance
    const bool exact = err[0] <= 1e-9;
    const double ratio = err[0] / std::max(err[1], 1e-300);
    const bool p_ok = err[0] <= 1e-2 && (exact || ratio >= 1.3);
    ok = ok && p_ok;
    d << "p=" << p << " err=" << fmt(err[0]) << " refined=" << fmt(err[1])
      << (exact ? " (exact to tolerance)" : " ratio=" + fmt(ratio)) << "; ";
  }
  const double secs = seconds_since(t0);
  d << "time " << fmt(secs) << "s";
  return {ok && secs <= 60.0, d.str()};
}

Outcome discrete_chebyshev() {
  const auto t0 = Clock::now();
  long checks = 0;
  long violations = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SuiteCase c = suite_case(seed);
    for (int i = 0; i <= 10; ++i) {
      for (double s : {1.0, 2.0, c.p}) {
        const auto side = plap::measure_bound_check(c.field, c.schedule, c.k, i, s);
        ++checks;
        worst = std::max(worst, side.ratio());
        if (!side.holds(1e-12)) ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs <= 30.0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                                              " violations, max lhs/rhs " + fmt(worst) + ", time " + fmt(secs) + "s"};
}

Outcome holder_chains() {
  const auto t0 = Clock::now();
  long checks = 0;
  long violations = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SuiteCase c = suite_case(seed);
    const auto params = StructureParams::first_bound(c.field.grid().dim(), c.p);
    for (int i = 0; i <= 10; ++i) {
      for (const auto& side : {plap::holder_p_chain(c.field, c.schedule, c.k, i, params),
                               plap::holder_2_chain(c.field, c.schedule, c.k, i, params)}) {
        ++checks;
        worst = std::max(worst, side.ratio());
        if (!side.holds(1e-10)) ++violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs <= 60.0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                                              " violations, max lhs/rhs " + fmt(worst) + ", time " + fmt(secs) + "s"};
}

Outcome geometric_lemma() {
  const auto r = plap::geometric_lemma(0.25, 2.0, 2.0, 1.0, 10);
  const bool ok = r.threshold == 0.25 && r.trace[10] <= 2.5e-4 && std::abs(r.trace[10] - std::ldexp(1.0, -12)) < 1e-12 * std::ldexp(1.0, -12);
  return {ok, "threshold " + fmt(r.threshold) + ", Y_10 " + fmt(r.trace[10])};
}

Outcome choose_k_round_trip() {
  std::mt19937_64 rng(20240517);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 2;
    const double p = std::max(2.0 * n / (n + 2.0), 1.0) + 0.02 + 4.0 * unit(rng);
    const auto params = StructureParams::first_bound(n, p);
    const double y0 = std::pow(10.0, -8.0 + 12.0 * unit(rng));
    const double sigma = 0.02 + 0.96 * unit(rng);
    const double rho = 0.05 + 2.0 * unit(rng);
    const double theta = 0.05 + 2.0 * unit(rng);
    const double c0 = std::pow(10.0, -2.0 + 4.0 * unit(rng));
    const auto k = plap::choose_k(y0, params, sigma, rho, theta, c0);
    const double back = plap::level_equation_rhs(k.k_unclamped, params, sigma, rho, theta, c0);
    worst = std::max(worst, std::abs(back - y0) / y0);
  }
  return {worst <= 1e-10, "max relative residual " + fmt(worst) + " over 1000 draws"};
}

Outcome end_to_end_degiorgi() {
  const auto t0 = Clock::now();
  int runs = 0;
  int satisfied = 0;
  int decayed = 0;
  int agree = 0;
  double max_ratio = 0.0;
  std::uint64_t seed = 500;
  for (int n : {1, 2}) {
    for (double p : {1.9, 2.0, 2.5, 3.0}) {
      const Grid g = n == 1 ? Grid(1, 1.0, 101, 41, 2.5e-3) : Grid(2, 1.0, 31, 21, 2.5e-3);
      const plap::Problem prob = plap::random_problem(g, ++seed, 3, 2.0);
      plap::SolverConfig cfg(StructureParams::first_bound(n, p));
      const SpaceTimeField u = plap::solve(g, prob.initial, cfg, prob.boundary);
      const auto rep = plap::verify_degiorgi(u, p, n, 0.5, 0.9, 0.9 * g.half_time());
      ++runs;
      satisfied += rep.satisfied ? 1 : 0;
      decayed += rep.decayed ? 1 : 0;
      agree += rep.lemma_predicts == rep.decayed ? 1 : 0;
      max_ratio = std::max(max_ratio, rep.sup_inner / rep.k);
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = satisfied == runs && decayed * 10 >= 9 * runs && secs <= 600.0;
  return {ok, std::to_string(satisfied) + "/" + std::to_string(runs) + " satisfied, " + std::to_string(decayed) + "/" +
                  std::to_string(runs) + " decayed by i=25, lemma agrees in " + std::to_string(agree) + "/" +
                  std::to_string(runs) + ", max sup/k " + fmt(max_ratio) + ", time " + fmt(secs) + "s"};
}

Outcome exponent_arithmetic() {
  const double e1 = plap::thm1_exponent(2.0, 2);
  const double e2 = plap::thm1_exponent(1.9, 2);
  const double e3 = plap::thm1_exponent(2.1, 2);
  const double e4 = plap::thm2_exponent(2.0, 2);
  const double l = plap::lambda_r(2, 1.5, 2.0);
  const bool ok = std::abs(e1 - 1.0) <= 1e-12 && std::abs(e2 - 7.6 / 7.2) <= 1e-12 && std::abs(e3 - 8.4 / 8.8) <= 1e-12 &&
                  std::abs(e2 - 1.0556) < 5e-5 && std::abs(e3 - 0.9545) < 5e-5 && std::abs(e4 - 1.5) <= 1e-12 &&
                  std::abs(l - 2.0) <= 1e-12;
  return {ok, "e1(2,2)=" + fmt(e1) + " e1(1.9,2)=" + fmt(e2) + " e1(2.1,2)=" + fmt(e3) + " e2(2,2)=" + fmt(e4) +
                  " lambda_2=" + fmt(l)};
}

Outcome p_stability() {
  const auto t0 = Clock::now();
  const auto base = plap::cli::load_scenario(std::string(PLAP_SCENARIO_DIR) + "/sweep_p.json");
  const auto rows = plap::cli::run_sweep(base, plap::cli::SweepAxis::p, base.seed, 1);
  const auto v = plap::cli::stability_report(rows);
  std::ostringstream d;
  d << "max jumps thm1_exp " << fmt(v.thm1_exp_jump) << " thm2_exp " << fmt(v.thm2_exp_jump) << " thm1_C "
    << fmt(v.thm1_c_jump) << " thm2_C " << fmt(v.thm2_c_jump) << ", classical |exp| near 2 "
    << fmt(v.classical_min_near_two) << ", undefined at 2: " << (v.undefined_at_two ? "yes" : "no") << ", time "
    << fmt(seconds_since(t0)) << "s";
  for (const auto& r : v.reasons) d << "; " << r;
  return {v.passed, d.str()};
}

Outcome delta0_remark() {
  bool ok = std::abs(plap::delta0_root(2).root - (3.0 - std::sqrt(5.0))) <= 1e-12;
  double worst_anchor = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double nn = n;
    worst_anchor = std::max(worst_anchor, std::abs(plap::delta0_polynomial(2.0 / (nn + 1), n) -
                                                   2 * nn * (nn - 1) / ((nn + 1) * (nn + 1))));
    worst_anchor = std::max(worst_anchor,
                            std::abs(plap::delta0_polynomial(4.0 / (nn + 2), n) + 8 * nn / ((nn + 2) * (nn + 2))));
    if (n >= 2) {
      const double x = 2.0 - plap::delta0_root(n).root;
      ok = ok && 2.0 * nn / (nn + 2) < x && x < 2.0 * nn / (nn + 1);
    }
  }
  ok = ok && worst_anchor <= 1e-12;
  return {ok, "delta0(2)=" + fmt(plap::delta0_root(2).root) + ", bracket holds for N=2..6: " + (ok ? "yes" : "no") +
                  ", max anchor error " + fmt(worst_anchor)};
}

Outcome sobolev_embedding() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  struct Case {
    int n;
    double p;
  };
  for (const Case c : {Case{1, 2.0}, Case{1, 3.0}, Case{2, 2.0}}) {
    double fit[2] = {0.0, 0.0};
    for (int level = 0; level < 2; ++level) {
      const int nx = c.n == 1 ? (level == 0 ? 41 : 81) : (level == 0 ? 21 : 41);
      const int nt = level == 0 ? 11 : 21;
      const Grid g(c.n, 1.0, nx, nt, 1.0 / (nt - 1));
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto u = plap::testing::sample(g, plap::testing::ZeroBoundaryFunction(seed + 1000));
        const auto s = plap::sobolev_sides(u, c.p, c.n);
        if (s.rhs > 0.0) fit[level] = std::max(fit[level], s.lhs / s.rhs);
      }
    }
    const double change = std::abs(fit[1] - fit[0]) / fit[0];
    const bool c_ok = std::isfinite(fit[0]) && std::isfinite(fit[1]) && fit[0] > 0.0 && change < 0.25;
    ok = ok && c_ok;
    d << "(N=" << c.n << ",p=" << c.p << ") C_fit " << fmt(fit[0]) << " -> " << fmt(fit[1]) << " change "
      << fmt(100.0 * change) << "%; ";
  }
  const double secs = seconds_since(t0);
  d << "time " << fmt(secs) << "s";
  return {ok && secs <= 300.0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact-solution regression", exact_solution_regression},
      {2, "discrete Chebyshev bound", discrete_chebyshev},
      {3, "Hoelder chains", holder_chains},
      {4, "geometric convergence lemma", geometric_lemma},
      {5, "level round-trip", choose_k_round_trip},
      {6, "end-to-end De Giorgi", end_to_end_degiorgi},
      {7, "exponent arithmetic", exponent_arithmetic},
      {8, "p -> 2 stability", p_stability},
      {9, "delta0 root and bracket", delta0_remark},
      {10, "parabolic Sobolev embedding", sobolev_embedding},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
