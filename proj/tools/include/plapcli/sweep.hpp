#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "plapcli/scenario.hpp"

namespace plap::cli {

enum class SweepAxis { p, sigma, grid };

/// Throws ConfigError on anything but p, sigma, grid.
[[nodiscard]] SweepAxis parse_axis(const std::string& name);
[[nodiscard]] std::string to_string(SweepAxis axis);

struct SweepPoint {
  double value;
  double p;
  int n_dim;
  double sigma;
  int nx;
  double thm1_exp;
  double thm2_exp;
  double deg_exp;
  double sing_exp;
  double delta0;
  double c0_fit;
  double thm1_c_fit;
  double thm2_c_fit;
  double sup;
  double bound;
  double ratio;
};

/// Scenario with the axis value substituted.
[[nodiscard]] Scenario sweep_scenario(const Scenario& base, SweepAxis axis, double value);

/// One point: solve, De Giorgi and second iteration. Throws as run().
[[nodiscard]] SweepPoint sweep_point(const Scenario& base, SweepAxis axis, double value, std::uint64_t seed);

/// Evaluates every axis value on up to `jobs` threads; rows come back in axis order.
/// The first failure (in axis order) is rethrown after all workers finish.
[[nodiscard]] std::vector<SweepPoint> run_sweep(const Scenario& base, SweepAxis axis, std::uint64_t seed, int jobs);

/// Columns: axis,value,p,N,sigma,nx,thm1_exp,thm2_exp,deg_exp,sing_exp,delta0,c0_fit,thm1_C_fit,thm2_C_fit,sup,bound,ratio.
void write_sweep_points_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepPoint>& rows);

/// Reads the CSV written above; `#` lines are skipped. Throws ConfigError on malformed input.
[[nodiscard]] std::vector<SweepPoint> read_sweep_points_csv(std::istream& in);

struct StabilityOptions {
  double max_jump = 0.25;
  double classical_threshold = 100.0;
  /// Points within this distance of p = 2 must show the classical blow-up.
  double window = 0.01;
  int min_per_side = 3;
};

struct StabilityVerdict {
  bool passed = false;
  double thm1_exp_jump = 0.0;
  double thm2_exp_jump = 0.0;
  double thm1_c_jump = 0.0;
  double thm2_c_jump = 0.0;
  double classical_min_near_two = 0.0;
  bool undefined_at_two = true;
  std::vector<std::string> reasons;
};

/// Throws InsufficientData if fewer than `min_per_side` p-values lie on either side of 2.
[[nodiscard]] StabilityVerdict stability_report(std::vector<SweepPoint> rows, const StabilityOptions& options = {});

void print_verdict(std::ostream& out, const StabilityVerdict& verdict);

}  // namespace plap::cli
