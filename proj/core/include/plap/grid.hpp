#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace plap {

using Point = std::array<double, 2>;

/// Uniform tensor grid on [-extent, extent]^dim times a symmetric time axis.
///
/// `nx` counts nodes per axis and must be odd so that the origin is a node.
/// `nt` counts time levels; level j sits at t_j = -T + j*dt with
/// T = (nt - 1) * dt / 2, so cylinders [-theta, theta] fit when theta <= T.
/// Space nodes are numbered row-major with x fastest.
class Grid {
 public:
  Grid(int dim, double extent, int nx, int nt, double dt);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] double extent() const noexcept { return extent_; }
  [[nodiscard]] int nx() const noexcept { return nx_; }
  [[nodiscard]] int nt() const noexcept { return nt_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] double h() const noexcept { return h_; }
  [[nodiscard]] double half_time() const noexcept { return 0.5 * (nt_ - 1) * dt_; }

  [[nodiscard]] double coord(int i) const noexcept { return -extent_ + i * h_; }
  [[nodiscard]] double time(int j) const noexcept { return -half_time() + j * dt_; }

  [[nodiscard]] std::size_t nodes_per_slice() const noexcept { return per_slice_; }
  [[nodiscard]] std::size_t size() const noexcept { return per_slice_ * static_cast<std::size_t>(nt_); }

  [[nodiscard]] std::size_t node(int ix, int iy = 0) const noexcept {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
  }
  [[nodiscard]] int ix(std::size_t node) const noexcept { return static_cast<int>(node % static_cast<std::size_t>(nx_)); }
  [[nodiscard]] int iy(std::size_t node) const noexcept {
    return dim_ == 1 ? 0 : static_cast<int>(node / static_cast<std::size_t>(nx_));
  }
  [[nodiscard]] Point point(std::size_t node) const noexcept {
    return {coord(ix(node)), dim_ == 2 ? coord(iy(node)) : 0.0};
  }
  [[nodiscard]] double radius(std::size_t node) const noexcept;
  [[nodiscard]] bool on_boundary(std::size_t node) const noexcept;

  [[nodiscard]] bool operator==(const Grid&) const = default;

 private:
  int dim_;
  double extent_;
  int nx_;
  int nt_;
  double dt_;
  double h_;
  std::size_t per_slice_;
};

/// Node values of a scalar field on the space-time grid, stored slice by slice.
class SpaceTimeField {
 public:
  /// Zero field.
  explicit SpaceTimeField(Grid grid);
  /// Throws std::invalid_argument on size mismatch or non-finite values.
  SpaceTimeField(Grid grid, std::vector<double> values);

  static SpaceTimeField from_function(const Grid& grid, const std::function<double(const Point&, double)>& f);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::span<const double> slice(int j) const noexcept {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(j) * grid_.nodes_per_slice(),
                                                    grid_.nodes_per_slice());
  }
  [[nodiscard]] double at(std::size_t node, int j) const noexcept {
    return values_[static_cast<std::size_t>(j) * grid_.nodes_per_slice() + node];
  }

  [[nodiscard]] double min() const noexcept;
  [[nodiscard]] double max() const noexcept;
  [[nodiscard]] bool is_nonnegative() const noexcept { return min() >= 0.0; }

  /// Returns a copy with every value multiplied by `factor`.
  [[nodiscard]] SpaceTimeField scaled(double factor) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Parabolic box B_rho x [-theta, theta] centred at the origin.
struct Cylinder {
  double rho;
  double theta;

  Cylinder(double rho, double theta);

  [[nodiscard]] bool fits(const Grid& grid) const noexcept;
  /// |B_rho| * 2 theta.
  [[nodiscard]] double measure(int dim) const noexcept;
};

/// Lebesgue measure of the Euclidean ball of radius rho in dimension 1 or 2.
[[nodiscard]] double ball_measure(int dim, double rho) noexcept;

/// Centred differences at interior nodes, one-sided on the boundary.
[[nodiscard]] std::array<double, 2> spatial_gradient(const Grid& grid, std::span<const double> slice,
                                                     std::size_t node) noexcept;

}  // namespace plap
