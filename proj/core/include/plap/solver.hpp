#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap {

/// Dirichlet data g(x, t) sampled on the spatial boundary.
using BoundaryData = std::function<double(const Point&, double)>;

struct SolverConfig {
  StructureParams params;
  /// Regularisation of the diffusivity (|grad u|^2 + delta^2)^{(p-2)/2}.
  double delta = 1e-8;
  /// Max-norm tolerance on the dt-scaled backward Euler residual.
  double newton_tol = 1e-10;
  int newton_max = 50;
  /// Optional c(x, t) on the solve grid, Lambda0 <= c <= Lambda1; c = 1 if absent.
  std::optional<SpaceTimeField> coefficient;

  explicit SolverConfig(StructureParams params_) : params(params_) {}

  /// Throws ConfigError on bad tolerances or coefficient bounds/grid mismatch.
  void validate(const Grid& grid) const;
  [[nodiscard]] double coefficient_at(std::size_t node, int j) const noexcept {
    return coefficient ? coefficient->at(node, j) : 1.0;
  }
};

/// Regularised model flux c (|g|^2 + delta^2)^{(p-2)/2} g.
[[nodiscard]] std::array<double, 2> model_flux(const std::array<double, 2>& grad, double c, double p, double delta) noexcept;

struct StepResult {
  std::vector<double> values;
  int iterations = 0;
  int fixed_point_steps = 0;
  double residual = 0.0;
};

/// One backward Euler step to time level `next_index`:
///   u - u_prev - dt * div_h F(u) = 0 at interior nodes, u = g on the boundary,
/// with F evaluated on staggered faces. Damped Newton; after three failed
/// dampings a lagged-diffusivity step is taken instead.
/// Throws NonConvergence when newton_max iterations do not reach newton_tol.
[[nodiscard]] StepResult step_implicit(const Grid& grid, std::span<const double> u_prev, const SolverConfig& config,
                                       const BoundaryData& bc, int next_index);

/// Marches `initial` (time level 0) through every level of the grid.
/// NonConvergence carries the failing time index.
[[nodiscard]] SpaceTimeField solve(const Grid& grid, std::span<const double> initial, const SolverConfig& config,
                                   const BoundaryData& bc);

/// min over interior nodes minus min over the parabolic boundary (initial slice and lateral boundary).
[[nodiscard]] double comparison_gap(const SpaceTimeField& field);

/// u = (Bp/(p-1))^{p-1} (t - t_0) + B |x|^{p/(p-1)}, an exact 1D solution of
/// u_t = (|u_x|^{p-2} u_x)_x shifted so that u >= 0 on the grid.
/// Throws DimensionError unless grid.dim() == 1.
[[nodiscard]] SpaceTimeField exact_power(double amplitude, double p, const Grid& grid);

/// Max over interior nodes (and |x| >= exclude_radius) of |u_t - div_h F(u)|,
/// time derivative centred (backward on the last level when nt == 2).
[[nodiscard]] double residual(const SpaceTimeField& field, const SolverConfig& config, double exclude_radius = 0.0);

/// Forward time average over [t, t+h] using the piecewise-linear interpolant
/// in time; zero on levels where t + h leaves the grid.
[[nodiscard]] SpaceTimeField steklov_average(const SpaceTimeField& field, double h);

}  // namespace plap
