#include "plap/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"

namespace plap {

StructureParams::StructureParams(int n_dim_, double p_, double lambda0_, double lambda1_, double eps0_)
    : n_dim(n_dim_), p(p_), lambda0(lambda0_), lambda1(lambda1_), eps0(eps0_) {
  if (n_dim < 1) throw DimensionError("N must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw RangeError("p must be > 1, got " + std::to_string(p));
  if (!(lambda0 > 0.0) || !(lambda1 >= lambda0)) {
    throw std::invalid_argument("structure constants must satisfy 0 < lambda0 <= lambda1");
  }
  if (!(eps0 >= 0.0) || !std::isfinite(eps0)) throw std::invalid_argument("eps0 must be >= 0");
}

StructureParams StructureParams::first_bound(int n_dim, double p, double lambda0, double lambda1) {
  return StructureParams(n_dim, p, lambda0, lambda1, eps0_first_bound(n_dim));
}

StructureParams StructureParams::second_bound(int n_dim, double p, double lambda0, double lambda1) {
  return StructureParams(n_dim, p, lambda0, lambda1, eps0_second_bound(n_dim));
}

void StructureParams::require_admissible() const {
  if (!(q() > p + eps0)) {
    throw AdmissibilityError("q = " + std::to_string(q()) + " must exceed p + eps0 = " + std::to_string(p + eps0));
  }
  if (!(p + eps0 > 2.0)) {
    throw AdmissibilityError("p + eps0 = " + std::to_string(p + eps0) + " must exceed 2");
  }
}

ShrinkSchedule::ShrinkSchedule(double sigma, Cylinder base) : sigma_(sigma), base_(base) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
}

ShrinkRadii ShrinkSchedule::radii(int i) const {
  if (i < 0) throw std::invalid_argument("schedule index must be >= 0");
  const double s = sigma_;
  auto r = [s](double full, int n) { return n == 0 ? full : s * full + std::ldexp((1.0 - s) * full, -n); };
  const double rho_i = r(base_.rho, i);
  const double theta_i = r(base_.theta, i);
  const double rho_next = r(base_.rho, i + 1);
  const double theta_next = r(base_.theta, i + 1);
  return {rho_i, theta_i, 0.5 * (rho_i + rho_next), 0.5 * (theta_i + theta_next)};
}

Cylinder ShrinkSchedule::cylinder(int i) const {
  const ShrinkRadii r = radii(i);
  return {r.rho, r.theta};
}

Cylinder ShrinkSchedule::tilde_cylinder(int i) const {
  const ShrinkRadii r = radii(i);
  return {r.rho_tilde, r.theta_tilde};
}

Cylinder ShrinkSchedule::limit() const { return {sigma_ * base_.rho, sigma_ * base_.theta}; }

ShrinkRadii shrinking_radii(const ShrinkSchedule& schedule, int i) { return schedule.radii(i); }

double level_schedule(double k, int i) {
  if (i < 0) throw std::invalid_argument("level index must be >= 0");
  return k - std::ldexp(k, -i);
}

double scale_factor_A(double rho, double theta, int n_dim, double p) {
  if (!(rho > 0.0) || !(theta > 0.0)) throw std::invalid_argument("rho and theta must be positive");
  const double rp = std::pow(rho, p);
  return theta / rp + std::pow(rp / theta, static_cast<double>(n_dim) / p);
}

}  // namespace plap
