#include "plap/levelset.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"
#include "plap/quadrature.hpp"

namespace plap {

namespace {

double positive_part(double v) noexcept { return v > 0.0 ? v : 0.0; }

// Integral over the cylinder of (u - level)_+^power.
double truncated_power(const SpaceTimeField& field, const CylinderQuadrature& quad, double level, double power) {
  return quad.integrate([&](std::size_t n, int j) {
    const double v = positive_part(field.at(n, j) - level);
    return v > 0.0 ? std::pow(v, power) : 0.0;
  });
}

void require_level(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("level k must be positive");
}

}  // namespace

TruncatedField truncate(const SpaceTimeField& field, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("truncation level must be >= 0");
  std::vector<double> v(field.values().begin(), field.values().end());
  for (double& x : v) x = positive_part(x - k);
  return {k, SpaceTimeField(field.grid(), std::move(v))};
}

SuperlevelSet superlevel_set(const SpaceTimeField& field, const Cylinder& cylinder, double k) {
  const CylinderQuadrature quad(field.grid(), cylinder);
  const Grid& g = field.grid();
  std::vector<bool> mask(g.size(), false);
  for (int j = quad.first_slice(); j <= quad.last_slice(); ++j) {
    for (const auto& e : quad.space()) {
      if (field.at(e.node, j) > k) mask[static_cast<std::size_t>(j) * g.nodes_per_slice() + e.node] = true;
    }
  }
  const double measure = quad.integrate([&](std::size_t n, int j) { return field.at(n, j) > k ? 1.0 : 0.0; });
  return {cylinder, k, measure, std::move(mask)};
}

InequalitySides measure_bound_check(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k, int i,
                                    double s) {
  require_level(k);
  if (!(s >= 1.0)) throw std::invalid_argument("measure bound needs s >= 1");
  const SuperlevelSet a_next = superlevel_set(field, schedule.cylinder(i + 1), level_schedule(k, i + 1));
  const CylinderQuadrature quad(field.grid(), schedule.cylinder(i));
  const double integral = truncated_power(field, quad, level_schedule(k, i), s);
  const double factor = std::exp2(s * (i + 1)) / std::pow(k, s);
  return {a_next.measure, factor * integral};
}

InequalitySides holder_p_chain(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k, int i,
                               const StructureParams& params) {
  params.require_admissible();
  require_level(k);
  const CylinderQuadrature quad(field.grid(), schedule.cylinder(i));
  const double p = params.p;
  const double e = params.eps0;
  const double lhs = truncated_power(field, quad, level_schedule(k, i + 1), p);
  const double rhs = std::exp2(e * (i + 1)) / std::pow(k, e) * truncated_power(field, quad, level_schedule(k, i), p + e);
  return {lhs, rhs};
}

InequalitySides holder_2_chain(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k, int i,
                               const StructureParams& params) {
  const double gap = params.p + params.eps0 - 2.0;
  if (!(gap > 0.0)) throw AdmissibilityError("p + eps0 must exceed 2, got " + std::to_string(params.p + params.eps0));
  require_level(k);
  const CylinderQuadrature quad(field.grid(), schedule.cylinder(i));
  const double lhs = truncated_power(field, quad, level_schedule(k, i + 1), 2.0);
  const double rhs = std::exp2(gap * (i + 1)) / std::pow(k, gap) *
                     truncated_power(field, quad, level_schedule(k, i), params.p + params.eps0);
  return {lhs, rhs};
}

void write_inequality_csv(std::ostream& out, const std::vector<InequalityRow>& rows) {
  const auto old = out.precision(17);
  out << "i,lhs,rhs,ratio\n";
  for (const auto& r : rows) out << r.i << ',' << r.sides.lhs << ',' << r.sides.rhs << ',' << r.sides.ratio() << '\n';
  out.precision(old);
}

}  // namespace plap
