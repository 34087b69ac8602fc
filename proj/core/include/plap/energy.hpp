#pragma once

#include <iosfwd>
#include <vector>

#include "plap/grid.hpp"
#include "plap/levelset.hpp"
#include "plap/params.hpp"

namespace plap {

enum class CutoffKind {
  /// 1 on the inner cylinder, 0 on the parabolic boundary of the outer one.
  full,
  /// 1 on the inner cylinder, 0 on the lateral boundary only; constant in time.
  lateral,
};

/// Product of a radial and a temporal clamped linear ramp.
///
/// The radial ramp falls from 1 at inner.rho to 0 at outer.rho; the temporal
/// ramp (full kind only) rises from 0 at -outer.theta to 1 at -inner.theta
/// and stays 1 up to the top of the cylinder.
class Cutoff {
 public:
  Cutoff(Cylinder inner, Cylinder outer, CutoffKind kind);

  [[nodiscard]] const Cylinder& inner() const noexcept { return inner_; }
  [[nodiscard]] const Cylinder& outer() const noexcept { return outer_; }
  [[nodiscard]] CutoffKind kind() const noexcept { return kind_; }

  [[nodiscard]] double value(double r, double t) const noexcept { return radial(r) * temporal(t); }
  /// |grad zeta| at radius r, time t (slope of the ramp, endpoints included).
  [[nodiscard]] double gradient_norm(double r, double t) const noexcept;
  /// |d zeta / dt|.
  [[nodiscard]] double time_derivative(double r, double t) const noexcept;

  /// Lipschitz constants of the two ramps.
  [[nodiscard]] double space_slope() const noexcept { return 1.0 / (outer_.rho - inner_.rho); }
  [[nodiscard]] double time_slope() const noexcept;

 private:
  [[nodiscard]] double radial(double r) const noexcept;
  [[nodiscard]] double temporal(double t) const noexcept;

  Cylinder inner_;
  Cylinder outer_;
  CutoffKind kind_;
};

/// zeta_i (full: between Q~_i and Q_i) or zeta~_i (lateral: between Q_{i+1} and Q~_i).
/// Throws GridTooCoarse when a transition band spans fewer than two cells.
[[nodiscard]] Cutoff build_cutoff(const Grid& grid, const ShrinkSchedule& schedule, int i, CutoffKind kind);

/// Gradient bounds the ramps are checked against: 2^{i+2}/((1-sigma) rho) in space,
/// 2^{i+2}/((1-sigma) theta) in time.
struct CutoffBounds {
  double space;
  double time;
};
[[nodiscard]] CutoffBounds cutoff_bounds(const ShrinkSchedule& schedule, int i);

struct CaccioppoliSides {
  double lhs_sup = 0.0;
  double lhs_grad = 0.0;
  double rhs_space = 0.0;
  double rhs_time = 0.0;

  [[nodiscard]] double lhs() const noexcept { return lhs_sup + lhs_grad; }
  [[nodiscard]] double rhs() const noexcept { return rhs_space + rhs_time; }
  /// (lhs_sup + lhs_grad) / (rhs_space + rhs_time); 0 when both vanish, +inf when only rhs does.
  [[nodiscard]] double fitted_constant() const noexcept;
};

/// The four energy terms of (u - k)_+ against the cutoff, integrated over its outer cylinder.
[[nodiscard]] CaccioppoliSides caccioppoli_sides(const SpaceTimeField& field, double k, const Cutoff& cutoff,
                                                 double p);

struct SobolevSides {
  double lhs = 0.0;
  double rhs = 0.0;
  [[nodiscard]] double ratio() const noexcept { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

/// lhs = integral |u|^q, rhs = (sup_t integral u^2)^{p/N} * integral |grad u|^p over the whole grid,
/// q = p(N+2)/N. Throws BoundaryError if |u| > 1e-12 on the lateral boundary.
[[nodiscard]] SobolevSides sobolev_sides(const SpaceTimeField& field, double p, int n_dim);

/// Energy of (u - k_{i+1})_+ on Q~_i against the combined right-hand side with C = 1.
/// Throws AdmissibilityError when `params` is not admissible.
[[nodiscard]] InequalitySides combined_energy_bound(const SpaceTimeField& field, const ShrinkSchedule& schedule,
                                                    double k, int i, const StructureParams& params);

struct EnergyRow {
  int i;
  double k;
  CaccioppoliSides sides;
};

/// CSV columns: i,k,lhs_sup,lhs_grad,rhs_space,rhs_time,C_fit.
void write_energy_csv(std::ostream& out, const std::vector<EnergyRow>& rows);

}  // namespace plap
