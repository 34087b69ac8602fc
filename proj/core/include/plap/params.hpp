#pragma once

#include "plap/grid.hpp"

namespace plap {

/// Structure data (N, p, Lambda0, Lambda1, eps0) of the model flux
/// c(x,t)|grad u|^{p-2} grad u with Lambda0 <= c <= Lambda1.
struct StructureParams {
  int n_dim = 1;
  double p = 2.0;
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  double eps0 = 4.0 / 3.0;

  /// Validates p > 1, 0 < lambda0 <= lambda1, eps0 >= 0, N >= 1.
  StructureParams(int n_dim, double p, double lambda0, double lambda1, double eps0);

  /// eps0 = 4/(N+2), the choice behind the first sup bound.
  static StructureParams first_bound(int n_dim, double p, double lambda0 = 1.0, double lambda1 = 1.0);
  /// eps0 = 2/(N+1), the choice behind the second iteration.
  static StructureParams second_bound(int n_dim, double p, double lambda0 = 1.0, double lambda1 = 1.0);

  /// Sobolev exponent q = p(N+2)/N.
  [[nodiscard]] double q() const noexcept { return p * (n_dim + 2) / n_dim; }
  /// q > p + eps0 and p + eps0 > 2.
  [[nodiscard]] bool admissible() const noexcept { return q() > p + eps0 && p + eps0 > 2.0; }
  /// Throws AdmissibilityError when admissible() is false.
  void require_admissible() const;
};

[[nodiscard]] inline double eps0_first_bound(int n_dim) noexcept { return 4.0 / (n_dim + 2); }
[[nodiscard]] inline double eps0_second_bound(int n_dim) noexcept { return 2.0 / (n_dim + 1); }

struct ShrinkRadii {
  double rho;
  double theta;
  double rho_tilde;
  double theta_tilde;
};

/// rho_i = sigma*rho + (1-sigma)*rho/2^i (same for theta); tilde radii are
/// midpoints of consecutive radii, so Q_{i+1} c Q~_i c Q_i.
class ShrinkSchedule {
 public:
  ShrinkSchedule(double sigma, Cylinder base);

  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] const Cylinder& base() const noexcept { return base_; }

  [[nodiscard]] ShrinkRadii radii(int i) const;
  [[nodiscard]] Cylinder cylinder(int i) const;
  [[nodiscard]] Cylinder tilde_cylinder(int i) const;
  /// Q_{sigma rho, sigma theta}.
  [[nodiscard]] Cylinder limit() const;

 private:
  double sigma_;
  Cylinder base_;
};

[[nodiscard]] ShrinkRadii shrinking_radii(const ShrinkSchedule& schedule, int i);

/// k_i = k - k/2^i.
[[nodiscard]] double level_schedule(double k, int i);

/// Intrinsic scale factor theta/rho^p + (rho^p/theta)^{N/p}.
[[nodiscard]] double scale_factor_A(double rho, double theta, int n_dim, double p);

}  // namespace plap
