#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plap/grid.hpp"
#include "plap/solver.hpp"

namespace plap {

/// Initial slice, Dirichlet data and (when known) the exact solution.
struct Problem {
  std::vector<double> initial;
  BoundaryData boundary;
  std::optional<SpaceTimeField> exact;
};

[[nodiscard]] Problem zero_problem(const Grid& grid);

/// Data sampled from exact_power; 1D only.
[[nodiscard]] Problem power_problem(const Grid& grid, double amplitude, double p);

/// u = slope * x_1 + offset, stationary for every p.
[[nodiscard]] Problem affine_problem(const Grid& grid, double slope, double offset);

/// amplitude * (1 - |x|^2/width^2)_+^2 with zero boundary data.
[[nodiscard]] Problem bump_problem(const Grid& grid, double amplitude, double width);

/// Smooth non-negative random initial data (squared sum of a few sine modes
/// vanishing on the boundary), zero boundary data. Deterministic in `seed`.
[[nodiscard]] Problem random_problem(const Grid& grid, std::uint64_t seed, int modes = 3, double amplitude = 1.0);

/// c(x,t) = mid + half_range * sin(wavenumber * pi * x_1) * cos(pi * t), within [lambda0, lambda1].
[[nodiscard]] SpaceTimeField oscillating_coefficient(const Grid& grid, double lambda0, double lambda1,
                                                     double wavenumber = 2.0);

}  // namespace plap
