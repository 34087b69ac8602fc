#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap {

/// (u - k)_+ node-wise.
struct TruncatedField {
  double level;
  SpaceTimeField values;
};

[[nodiscard]] TruncatedField truncate(const SpaceTimeField& field, double k);

/// {u > k} inside a cylinder; `measure` is the quadrature of the indicator.
struct SuperlevelSet {
  Cylinder cylinder;
  double level;
  double measure;
  std::vector<bool> indicator;  // over all space-time nodes, slice-major
};

[[nodiscard]] SuperlevelSet superlevel_set(const SpaceTimeField& field, const Cylinder& cylinder, double k);

/// Both sides of an inequality lhs <= rhs.
struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;

  [[nodiscard]] double ratio() const noexcept { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0); }
  [[nodiscard]] bool holds(double rel_tol = 0.0) const noexcept { return lhs <= rhs * (1.0 + rel_tol); }
};

/// |A_{i+1}| against 2^{s(i+1)}/k^s * integral over Q_i of (u - k_i)_+^s.
[[nodiscard]] InequalitySides measure_bound_check(const SpaceTimeField& field, const ShrinkSchedule& schedule,
                                                  double k, int i, double s);

/// integral_{Q_i} (u-k_{i+1})_+^p against 2^{eps0(i+1)}/k^{eps0} integral_{Q_i} (u-k_i)_+^{p+eps0}.
/// Throws AdmissibilityError when `params` is not admissible.
[[nodiscard]] InequalitySides holder_p_chain(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k,
                                             int i, const StructureParams& params);

/// integral_{Q_i} (u-k_{i+1})_+^2 against 2^{(p+eps0-2)(i+1)}/k^{p+eps0-2} integral_{Q_i} (u-k_i)_+^{p+eps0}.
/// Throws AdmissibilityError when p + eps0 <= 2.
[[nodiscard]] InequalitySides holder_2_chain(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k,
                                             int i, const StructureParams& params);

struct InequalityRow {
  int i;
  InequalitySides sides;
};

/// CSV columns: i,lhs,rhs,ratio.
void write_inequality_csv(std::ostream& out, const std::vector<InequalityRow>& rows);

}  // namespace plap
