#include "plap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"

namespace plap {

Grid::Grid(int dim, double extent, int nx, int nt, double dt)
    : dim_(dim), extent_(extent), nx_(nx), nt_(nt), dt_(dt), h_(0.0), per_slice_(0) {
  if (dim != 1 && dim != 2) {
    throw DimensionError("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (nx < 3 || nx % 2 == 0) {
    throw std::invalid_argument("nx must be odd and >= 3, got " + std::to_string(nx));
  }
  if (nt < 1) {
    throw std::invalid_argument("nt must be >= 1");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw std::invalid_argument("extent must be positive");
  }
  h_ = 2.0 * extent / (nx - 1);
  per_slice_ = dim == 1 ? static_cast<std::size_t>(nx) : static_cast<std::size_t>(nx) * static_cast<std::size_t>(nx);
}

double Grid::radius(std::size_t node) const noexcept {
  const Point p = point(node);
  return std::hypot(p[0], p[1]);
}

bool Grid::on_boundary(std::size_t node) const noexcept {
  const int i = ix(node);
  if (i == 0 || i == nx_ - 1) return true;
  if (dim_ == 2) {
    const int j = iy(node);
    return j == 0 || j == nx_ - 1;
  }
  return false;
}

SpaceTimeField::SpaceTimeField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

SpaceTimeField::SpaceTimeField(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field size " + std::to_string(values_.size()) + " does not match grid size " +
                                std::to_string(grid_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("field contains non-finite values");
  }
}

SpaceTimeField SpaceTimeField::from_function(const Grid& grid,
                                             const std::function<double(const Point&, double)>& f) {
  std::vector<double> values(grid.size());
  const std::size_t per = grid.nodes_per_slice();
  for (int j = 0; j < grid.nt(); ++j) {
    const double t = grid.time(j);
    for (std::size_t n = 0; n < per; ++n) {
      values[static_cast<std::size_t>(j) * per + n] = f(grid.point(n), t);
    }
  }
  return SpaceTimeField(grid, std::move(values));
}

double SpaceTimeField::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

double SpaceTimeField::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

SpaceTimeField SpaceTimeField::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return SpaceTimeField(grid_, std::move(v));
}

Cylinder::Cylinder(double rho_, double theta_) : rho(rho_), theta(theta_) {
  if (!(rho > 0.0) || !(theta > 0.0) || !std::isfinite(rho) || !std::isfinite(theta)) {
    throw std::invalid_argument("cylinder radii must be positive and finite");
  }
}

bool Cylinder::fits(const Grid& grid) const noexcept {
  constexpr double slack = 1e-12;
  return rho <= grid.extent() * (1.0 + slack) && theta <= grid.half_time() * (1.0 + slack);
}

double Cylinder::measure(int dim) const noexcept { return ball_measure(dim, rho) * 2.0 * theta; }

double ball_measure(int dim, double rho) noexcept {
  return dim == 1 ? 2.0 * rho : std::numbers::pi * rho * rho;
}

std::array<double, 2> spatial_gradient(const Grid& grid, std::span<const double> slice, std::size_t node) noexcept {
  const double h = grid.h();
  const int n = grid.nx();
  auto diff = [&](int i, std::size_t stride) {
    const std::size_t s = stride;
    if (i == 0) return (slice[node + s] - slice[node]) / h;
    if (i == n - 1) return (slice[node] - slice[node - s]) / h;
    return (slice[node + s] - slice[node - s]) / (2.0 * h);
  };
  std::array<double, 2> g{diff(grid.ix(node), 1), 0.0};
  if (grid.dim() == 2) g[1] = diff(grid.iy(node), static_cast<std::size_t>(n));
  return g;
}

}  // namespace plap
