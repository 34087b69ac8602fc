#include "plap/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "plap/errors.hpp"
#include "plap/quadrature.hpp"

namespace plap {

namespace {

double positive_part(double v) noexcept { return v > 0.0 ? v : 0.0; }

std::vector<double> truncated_slice(const SpaceTimeField& field, int j, double k) {
  const auto s = field.slice(j);
  std::vector<double> out(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) out[n] = positive_part(s[n] - k);
  return out;
}

double norm(const std::array<double, 2>& g) noexcept { return std::hypot(g[0], g[1]); }

}  // namespace

Cutoff::Cutoff(Cylinder inner, Cylinder outer, CutoffKind kind) : inner_(inner), outer_(outer), kind_(kind) {
  if (!(inner.rho < outer.rho)) throw std::invalid_argument("cutoff needs inner.rho < outer.rho");
  if (kind == CutoffKind::full && !(inner.theta < outer.theta)) {
    throw std::invalid_argument("cutoff needs inner.theta < outer.theta");
  }
}

double Cutoff::radial(double r) const noexcept {
  return std::clamp((outer_.rho - r) / (outer_.rho - inner_.rho), 0.0, 1.0);
}

double Cutoff::temporal(double t) const noexcept {
  if (kind_ == CutoffKind::lateral) return 1.0;
  return std::clamp((t + outer_.theta) / (outer_.theta - inner_.theta), 0.0, 1.0);
}

double Cutoff::time_slope() const noexcept {
  return kind_ == CutoffKind::lateral ? 0.0 : 1.0 / (outer_.theta - inner_.theta);
}

double Cutoff::gradient_norm(double r, double t) const noexcept {
  if (r < inner_.rho || r > outer_.rho) return 0.0;
  return space_slope() * temporal(t);
}

double Cutoff::time_derivative(double r, double t) const noexcept {
  if (kind_ == CutoffKind::lateral) return 0.0;
  if (t < -outer_.theta || t > -inner_.theta) return 0.0;
  return time_slope() * radial(r);
}

Cutoff build_cutoff(const Grid& grid, const ShrinkSchedule& schedule, int i, CutoffKind kind) {
  const ShrinkRadii r = schedule.radii(i);
  Cutoff c = kind == CutoffKind::full
                 ? Cutoff(Cylinder(r.rho_tilde, r.theta_tilde), Cylinder(r.rho, r.theta), kind)
                 : Cutoff(schedule.cylinder(i + 1), Cylinder(r.rho_tilde, r.theta_tilde), kind);
  const double space_band = c.outer().rho - c.inner().rho;
  if (space_band < 2.0 * grid.h()) {
    throw GridTooCoarse("cutoff band " + std::to_string(space_band) + " spans fewer than two cells (h = " +
                        std::to_string(grid.h()) + ") at i = " + std::to_string(i));
  }
  if (kind == CutoffKind::full) {
    const double time_band = c.outer().theta - c.inner().theta;
    if (time_band < 2.0 * grid.dt()) {
      throw GridTooCoarse("temporal cutoff band " + std::to_string(time_band) + " spans fewer than two steps at i = " +
                          std::to_string(i));
    }
  }
  return c;
}

CutoffBounds cutoff_bounds(const ShrinkSchedule& schedule, int i) {
  const double f = std::exp2(i + 2) / (1.0 - schedule.sigma());
  return {f / schedule.base().rho, f / schedule.base().theta};
}

double CaccioppoliSides::fitted_constant() const noexcept {
  const double r = rhs();
  const double l = lhs();
  if (r > 0.0) return l / r;
  return l > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

CaccioppoliSides caccioppoli_sides(const SpaceTimeField& field, double k, const Cutoff& cutoff, double p) {
  if (!(k >= 0.0)) throw std::invalid_argument("energy level must be >= 0");
  const Grid& g = field.grid();
  const CylinderQuadrature quad(g, cutoff.outer());
  CaccioppoliSides out;
  CompensatedSum grad_sum;
  CompensatedSum space_sum;
  CompensatedSum time_sum;
  for (int j = quad.first_slice(); j <= quad.last_slice(); ++j) {
    const double t = g.time(j);
    const double wt = quad.time_weight(j);
    const std::vector<double> v = truncated_slice(field, j, k);
    CompensatedSum slice_energy;
    for (const auto& e : quad.space()) {
      const double vn = v[e.node];
      const double r = g.radius(e.node);
      const double zeta = cutoff.value(r, t);
      const double w = wt * e.weight;
      if (vn > 0.0) {
        slice_energy.add(e.weight * vn * vn * zeta * zeta);
        space_sum.add(w * std::pow(vn, p) * std::pow(cutoff.gradient_norm(r, t), p));
        time_sum.add(w * vn * vn * std::pow(zeta, p - 1.0) * cutoff.time_derivative(r, t));
      }
      if (zeta > 0.0) {
        const double gn = norm(spatial_gradient(g, v, e.node));
        if (gn > 0.0) grad_sum.add(w * std::pow(gn * zeta, p));
      }
    }
    out.lhs_sup = std::max(out.lhs_sup, slice_energy.value());
  }
  out.lhs_grad = grad_sum.value();
  out.rhs_space = space_sum.value();
  out.rhs_time = time_sum.value();
  return out;
}

SobolevSides sobolev_sides(const SpaceTimeField& field, double p, int n_dim) {
  const Grid& g = field.grid();
  if (n_dim != g.dim()) throw DimensionError("sobolev_sides: N does not match the grid");
  for (int j = 0; j < g.nt(); ++j) {
    for (std::size_t n = 0; n < g.nodes_per_slice(); ++n) {
      if (g.on_boundary(n) && std::abs(field.at(n, j)) > 1e-12) {
        throw BoundaryError("field does not vanish on the lateral boundary");
      }
    }
  }
  const double q = p * (n_dim + 2) / n_dim;
  const BoxQuadrature box(g);
  SobolevSides out;
  out.lhs = box.integrate([&](std::size_t n, int j) { return std::pow(std::abs(field.at(n, j)), q); });
  double sup_l2 = 0.0;
  for (int j = 0; j < g.nt(); ++j) {
    sup_l2 = std::max(sup_l2, box.integrate_slice(j, [&](std::size_t n, int jj) {
      const double v = field.at(n, jj);
      return v * v;
    }));
  }
  const double grad = box.integrate([&](std::size_t n, int j) {
    return std::pow(norm(spatial_gradient(g, field.slice(j), n)), p);
  });
  out.rhs = std::pow(sup_l2, p / n_dim) * grad;
  return out;
}

InequalitySides combined_energy_bound(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k, int i,
                                      const StructureParams& params) {
  params.require_admissible();
  if (!(k > 0.0)) throw std::invalid_argument("level k must be positive");
  const Grid& g = field.grid();
  const double p = params.p;
  const double e = params.eps0;
  const double k_next = level_schedule(k, i + 1);
  const CylinderQuadrature tilde(g, schedule.tilde_cylinder(i));

  double sup_energy = 0.0;
  CompensatedSum grad_sum;
  for (int j = tilde.first_slice(); j <= tilde.last_slice(); ++j) {
    const std::vector<double> v = truncated_slice(field, j, k_next);
    CompensatedSum slice_energy;
    for (const auto& en : tilde.space()) {
      const double vn = v[en.node];
      if (vn > 0.0) slice_energy.add(en.weight * vn * vn);
      const double gn = norm(spatial_gradient(g, v, en.node));
      if (gn > 0.0) grad_sum.add(tilde.time_weight(j) * en.weight * std::pow(gn, p));
    }
    sup_energy = std::max(sup_energy, slice_energy.value());
  }

  const CylinderQuadrature outer(g, schedule.cylinder(i));
  const double k_i = level_schedule(k, i);
  const double integral = outer.integrate([&](std::size_t n, int j) {
    const double v = positive_part(field.at(n, j) - k_i);
    return v > 0.0 ? std::pow(v, p + e) : 0.0;
  });
  const Cylinder& base = schedule.base();
  const double prefactor = std::exp2((i + 2) * (p + e)) / std::pow(1.0 - schedule.sigma(), p);
  const double scales = 1.0 / (std::pow(base.rho, p) * std::pow(k, e)) + 1.0 / (base.theta * std::pow(k, p + e - 2.0));
  return {sup_energy + grad_sum.value(), prefactor * scales * integral};
}

void write_energy_csv(std::ostream& out, const std::vector<EnergyRow>& rows) {
  const auto old = out.precision(17);
  out << "i,k,lhs_sup,lhs_grad,rhs_space,rhs_time,C_fit\n";
  for (const auto& r : rows) {
    out << r.i << ',' << r.k << ',' << r.sides.lhs_sup << ',' << r.sides.lhs_grad << ',' << r.sides.rhs_space << ','
        << r.sides.rhs_time << ',' << r.sides.fitted_constant() << '\n';
  }
  out.precision(old);
}

}  // namespace plap
