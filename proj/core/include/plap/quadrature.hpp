#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "plap/grid.hpp"

namespace plap {

/// Neumaier-compensated running sum; order of additions is the caller's.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Area of the intersection of the disk |x| <= r with [x0,x1] x [y0,y1].
[[nodiscard]] double disk_rectangle_area(double r, double x0, double x1, double y0, double y1) noexcept;

/// Length of [a0,a1] intersected with [b0,b1].
[[nodiscard]] double interval_overlap(double a0, double a1, double b0, double b1) noexcept;

/// Node-wise midpoint quadrature over a cylinder.
///
/// Every node owns the cell of side h (dt in time) centred on it; its weight
/// is the exact measure of that cell clipped to B_rho x [-theta, theta]. The
/// weights therefore sum to the continuum measure and shrink monotonically
/// when the cylinder shrinks.
class CylinderQuadrature {
 public:
  struct Entry {
    std::size_t node;
    double weight;
  };

  /// Throws CylinderOutOfGrid if the cylinder leaves the grid.
  CylinderQuadrature(const Grid& grid, const Cylinder& cylinder);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const Cylinder& cylinder() const noexcept { return cylinder_; }

  /// Space nodes with positive clipped weight, ascending.
  [[nodiscard]] const std::vector<Entry>& space() const noexcept { return space_; }
  [[nodiscard]] int first_slice() const noexcept { return j0_; }
  [[nodiscard]] int last_slice() const noexcept { return j1_; }
  [[nodiscard]] double time_weight(int j) const noexcept { return time_w_[static_cast<std::size_t>(j - j0_)]; }

  /// Continuum measure |B_rho| * 2 theta (the averaging denominator).
  [[nodiscard]] double measure() const noexcept { return cylinder_.measure(grid_.dim()); }

  /// Sum of weight * f(node, j) over the cylinder, compensated, deterministic order.
  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    CompensatedSum total;
    for (int j = j0_; j <= j1_; ++j) {
      const double wt = time_weight(j);
      for (const Entry& e : space_) {
        const double v = f(e.node, j);
        if (v != 0.0) total.add(wt * e.weight * v);
      }
    }
    return total.value();
  }

  /// Spatial integral at one slice (no time weight).
  template <class F>
  [[nodiscard]] double integrate_slice(int j, F&& f) const {
    CompensatedSum total;
    for (const Entry& e : space_) {
      const double v = f(e.node, j);
      if (v != 0.0) total.add(e.weight * v);
    }
    return total.value();
  }

  template <class F>
  [[nodiscard]] double average(F&& f) const {
    return integrate(std::forward<F>(f)) / measure();
  }

  /// True when the node itself lies in the closed cylinder.
  [[nodiscard]] bool contains(std::size_t node, int j) const noexcept;

 private:
  Grid grid_;
  Cylinder cylinder_;
  std::vector<Entry> space_;
  int j0_ = 0;
  int j1_ = -1;
  std::vector<double> time_w_;
};

/// Quadrature over the whole grid box [-L, L]^N x [-T, T] with clipped cells.
class BoxQuadrature {
 public:
  explicit BoxQuadrature(const Grid& grid);

  [[nodiscard]] double space_weight(std::size_t node) const noexcept { return space_w_[node]; }
  [[nodiscard]] double time_weight(int j) const noexcept { return time_w_[static_cast<std::size_t>(j)]; }

  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    CompensatedSum total;
    for (int j = 0; j < nt_; ++j) {
      for (std::size_t n = 0; n < space_w_.size(); ++n) {
        const double v = f(n, j);
        if (v != 0.0) total.add(time_w_[static_cast<std::size_t>(j)] * space_w_[n] * v);
      }
    }
    return total.value();
  }

  template <class F>
  [[nodiscard]] double integrate_slice(int j, F&& f) const {
    CompensatedSum total;
    for (std::size_t n = 0; n < space_w_.size(); ++n) {
      const double v = f(n, j);
      if (v != 0.0) total.add(space_w_[n] * v);
    }
    return total.value();
  }

 private:
  int nt_;
  std::vector<double> space_w_;
  std::vector<double> time_w_;
};

/// Max of the field over nodes inside the closed cylinder.
[[nodiscard]] double sup_over(const SpaceTimeField& field, const Cylinder& cylinder);

}  // namespace plap
