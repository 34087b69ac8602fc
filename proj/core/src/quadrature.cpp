#include "plap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plap/errors.hpp"

namespace plap {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

// Area of the disk of radius r inside [0,x] x [0,y], x, y >= 0.
double quadrant_area(double r, double x, double y) noexcept {
  x = std::min(x, r);
  y = std::min(y, r);
  if (x * x + y * y <= r * r) return x * y;
  auto primitive = [r](double a) { return 0.5 * (a * std::sqrt(std::max(0.0, r * r - a * a)) + r * r * std::asin(a / r)); };
  const double s = std::sqrt(std::max(0.0, r * r - y * y));
  return y * s + primitive(x) - primitive(s);
}

double signed_quadrant(double r, double x, double y) noexcept {
  const double sx = x < 0.0 ? -1.0 : 1.0;
  const double sy = y < 0.0 ? -1.0 : 1.0;
  return sx * sy * quadrant_area(r, std::abs(x), std::abs(y));
}

double space_cell_weight(const Grid& grid, std::size_t node, double rho) {
  const double h = grid.h();
  const Point c = grid.point(node);
  if (grid.dim() == 1) {
    return interval_overlap(c[0] - 0.5 * h, c[0] + 0.5 * h, -rho, rho);
  }
  return disk_rectangle_area(rho, c[0] - 0.5 * h, c[0] + 0.5 * h, c[1] - 0.5 * h, c[1] + 0.5 * h);
}

}  // namespace

double interval_overlap(double a0, double a1, double b0, double b1) noexcept {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

double disk_rectangle_area(double r, double x0, double x1, double y0, double y1) noexcept {
  if (x1 <= x0 || y1 <= y0 || r <= 0.0) return 0.0;
  const double fx = std::max(std::abs(x0), std::abs(x1));
  const double fy = std::max(std::abs(y0), std::abs(y1));
  if (fx * fx + fy * fy <= r * r) return (x1 - x0) * (y1 - y0);
  const double nx = (x0 <= 0.0 && x1 >= 0.0) ? 0.0 : std::min(std::abs(x0), std::abs(x1));
  const double ny = (y0 <= 0.0 && y1 >= 0.0) ? 0.0 : std::min(std::abs(y0), std::abs(y1));
  if (nx * nx + ny * ny >= r * r) return 0.0;
  const double a = signed_quadrant(r, x1, y1) - signed_quadrant(r, x0, y1) - signed_quadrant(r, x1, y0) +
                   signed_quadrant(r, x0, y0);
  return std::clamp(a, 0.0, (x1 - x0) * (y1 - y0));
}

CylinderQuadrature::CylinderQuadrature(const Grid& grid, const Cylinder& cylinder)
    : grid_(grid), cylinder_(cylinder) {
  if (!cylinder.fits(grid)) {
    throw CylinderOutOfGrid("cylinder (rho=" + std::to_string(cylinder.rho) + ", theta=" +
                            std::to_string(cylinder.theta) + ") exceeds grid (extent=" +
                            std::to_string(grid.extent()) + ", T=" + std::to_string(grid.half_time()) + ")");
  }
  for (std::size_t n = 0; n < grid.nodes_per_slice(); ++n) {
    const double w = space_cell_weight(grid, n, cylinder.rho);
    if (w > 0.0) space_.push_back({n, w});
  }
  const double dt = grid.dt();
  j0_ = grid.nt();
  j1_ = -1;
  std::vector<double> all(static_cast<std::size_t>(grid.nt()));
  for (int j = 0; j < grid.nt(); ++j) {
    const double t = grid.time(j);
    const double w = interval_overlap(t - 0.5 * dt, t + 0.5 * dt, -cylinder.theta, cylinder.theta);
    all[static_cast<std::size_t>(j)] = w;
    if (w > 0.0) {
      j0_ = std::min(j0_, j);
      j1_ = std::max(j1_, j);
    }
  }
  if (j1_ >= j0_) {
    time_w_.assign(all.begin() + j0_, all.begin() + j1_ + 1);
  } else {
    j0_ = 0;
  }
}

bool CylinderQuadrature::contains(std::size_t node, int j) const noexcept {
  const double slack_r = 1e-12 * std::max(cylinder_.rho, grid_.h());
  const double slack_t = 1e-12 * std::max(cylinder_.theta, grid_.dt());
  return grid_.radius(node) <= cylinder_.rho + slack_r && std::abs(grid_.time(j)) <= cylinder_.theta + slack_t;
}

BoxQuadrature::BoxQuadrature(const Grid& grid) : nt_(grid.nt()) {
  const double h = grid.h();
  const double L = grid.extent();
  space_w_.resize(grid.nodes_per_slice());
  for (std::size_t n = 0; n < space_w_.size(); ++n) {
    const Point c = grid.point(n);
    double w = interval_overlap(c[0] - 0.5 * h, c[0] + 0.5 * h, -L, L);
    if (grid.dim() == 2) w *= interval_overlap(c[1] - 0.5 * h, c[1] + 0.5 * h, -L, L);
    space_w_[n] = w;
  }
  const double T = grid.half_time();
  const double dt = grid.dt();
  time_w_.resize(static_cast<std::size_t>(nt_));
  for (int j = 0; j < nt_; ++j) {
    const double t = grid.time(j);
    time_w_[static_cast<std::size_t>(j)] = nt_ == 1 ? dt : interval_overlap(t - 0.5 * dt, t + 0.5 * dt, -T, T);
  }
}

double sup_over(const SpaceTimeField& field, const Cylinder& cylinder) {
  const CylinderQuadrature quad(field.grid(), cylinder);
  double best = -std::numeric_limits<double>::infinity();
  const Grid& g = field.grid();
  for (int j = 0; j < g.nt(); ++j) {
    for (std::size_t n = 0; n < g.nodes_per_slice(); ++n) {
      if (quad.contains(n, j)) best = std::max(best, field.at(n, j));
    }
  }
  return best;
}

}  // namespace plap
