#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "plap/grid.hpp"
#include "plap/scenarios.hpp"
#include "plap/solver.hpp"

namespace plap::cli {

enum class InitialKind { zero, power, affine, bump, random };

struct CoefficientSpec {
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  double wavenumber = 2.0;
};

struct SolverSpec {
  double p = 2.0;
  int n_dim = 1;
  int nx = 101;
  int nt = 41;
  double dt = 0.01;
  double extent = 1.0;
  double delta = 1e-8;
  double newton_tol = 1e-10;
  int newton_max = 50;
  InitialKind kind = InitialKind::zero;
  double amplitude = 1.0;
  double width = 0.5;
  double slope = 0.0;
  double offset = 0.0;
  int modes = 3;
  std::optional<CoefficientSpec> coefficient;

  [[nodiscard]] Grid grid() const;
  [[nodiscard]] SolverConfig config(const Grid& grid) const;
  [[nodiscard]] Problem problem(const Grid& grid, std::uint64_t seed) const;
};

struct Toggles {
  bool energy = true;
  bool degiorgi = true;
  bool thm1 = true;
  bool thm2 = true;
  bool classical = true;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  SolverSpec solver;
  double rho = 0.8;
  /// Half-height of the base cylinder; defaults to 0.9 of the grid half-time.
  std::optional<double> theta;
  double sigma = 0.5;
  Toggles checks;
  double c0 = 1.0;
  std::optional<double> k_override;
  int max_depth = 25;
  /// Truncation level of the energy check, as a fraction of sup u on the base cylinder.
  double energy_level = 0.5;
  int energy_depth = 4;
  std::vector<double> sweep_p;
  std::vector<double> sweep_sigma;
  std::vector<int> sweep_grid;

  [[nodiscard]] double theta_value() const;
  [[nodiscard]] Cylinder cylinder() const { return Cylinder(rho, theta_value()); }
  /// Cylinder fits the grid, sweep lists that are present are non-empty. Throws ConfigError.
  void validate() const;
};

/// Throws ConfigError with the offending key on malformed input.
[[nodiscard]] Scenario parse_scenario(const nlohmann::json& doc);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

[[nodiscard]] std::string to_string(InitialKind kind);

}  // namespace plap::cli
