#include "plap/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"
#include "plap/quadrature.hpp"

namespace plap {

namespace {

double positive_part(double v) noexcept { return v > 0.0 ? v : 0.0; }

double upsilon_value(const StructureParams& params, double sigma) {
  const double p = params.p;
  const double n = params.n_dim;
  return std::pow(1.0 - sigma, p * (1.0 + p / n) * (p + params.eps0) / params.q());
}

void require_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
}

}  // namespace

double recursion_alpha(const StructureParams& params) noexcept {
  return (params.p / params.n_dim) * (params.p + params.eps0) / params.q();
}

RecursionConstants RecursionConstants::make(const StructureParams& params, const ShrinkSchedule& schedule, double k,
                                            double c0) {
  params.require_admissible();
  if (!(k > 0.0)) throw std::invalid_argument("level k must be positive");
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
  const double p = params.p;
  const double e = params.eps0;
  const double q = params.q();
  const double alpha = recursion_alpha(params);
  const Cylinder& base = schedule.base();
  RecursionConstants c{};
  c.alpha = alpha;
  c.b = std::exp2((p + e) * (1.0 + alpha));
  c.upsilon = upsilon_value(params, schedule.sigma());
  c.a_k = a_k_value(base.rho, base.theta, params.n_dim, p, e, k);
  c.a_cap = scale_factor_A(base.rho, base.theta, params.n_dim, p);
  c.k_power = (p + e) * (p + e - q) / q;
  c.c0 = c0;
  return c;
}

double RecursionConstants::lemma_constant(double k) const noexcept {
  return c0 * std::pow(a_k, alpha) * std::pow(k, k_power) / upsilon;
}

double a_k_value(double rho, double theta, int n_dim, double p, double eps0, double k) {
  if (!(p + eps0 > 2.0)) throw AdmissibilityError("a_k needs p + eps0 > 2, got " + std::to_string(p + eps0));
  if (!(rho > 0.0 && theta > 0.0 && k > 0.0)) throw std::invalid_argument("a_k needs rho, theta, k > 0");
  const double n = n_dim;
  const double rp = std::pow(rho, p);
  return theta / rp * std::pow(k, -eps0 * (n + p) / p) +
         std::pow(rp / theta, n / p) * std::pow(k, -(p + eps0 - 2.0) * (n + p) / p);
}

double truncated_energy(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k,
                        const StructureParams& params, int i) {
  if (i < 0) throw std::invalid_argument("iteration index must be >= 0");
  if (!(k >= 0.0)) throw std::invalid_argument("level k must be >= 0");
  const CylinderQuadrature quad(field.grid(), schedule.cylinder(i));
  const double level = level_schedule(k, i);
  const double power = params.p + params.eps0;
  return quad.integrate([&](std::size_t n, int j) {
    const double v = positive_part(field.at(n, j) - level);
    return v > 0.0 ? std::pow(v, power) : 0.0;
  });
}

double compute_Yi(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k, const StructureParams& params,
                  int i) {
  return truncated_energy(field, schedule, k, params, i) / schedule.cylinder(i).measure(field.grid().dim());
}

double recursion_rhs(double y_i, const RecursionConstants& c, double k, int i) {
  if (!(y_i >= 0.0)) throw std::invalid_argument("Y_i must be >= 0");
  if (y_i == 0.0) return 0.0;
  const double log_v = std::log(c.lemma_constant(k)) + i * std::log(c.b) + (1.0 + c.alpha) * std::log(y_i);
  return std::exp(log_v);
}

GeometricLemmaResult geometric_lemma(double y0, double c, double b, double alpha, int n_max) {
  if (!(y0 >= 0.0) || !(c > 0.0) || !(b > 1.0) || !(alpha > 0.0) || n_max < 0) {
    throw std::invalid_argument("geometric_lemma needs Y0 >= 0, C > 0, b > 1, alpha > 0");
  }
  GeometricLemmaResult out{};
  out.threshold = std::pow(c, -1.0 / alpha) * std::pow(b, -1.0 / (alpha * alpha));
  out.trace.reserve(static_cast<std::size_t>(n_max) + 1);
  out.trace.push_back(y0);
  out.converged = y0 < 1e-12;
  double y = y0;
  for (int n = 0; n < n_max; ++n) {
    y = y > 0.0 ? std::exp(std::log(c) + n * std::log(b) + (1.0 + alpha) * std::log(y)) : 0.0;
    out.trace.push_back(y);
    if (y < 1e-12) out.converged = true;
  }
  return out;
}

ChosenLevel choose_k(double y0, const StructureParams& params, double sigma, double rho, double theta, double c0) {
  params.require_admissible();
  require_sigma(sigma);
  if (!(y0 >= 0.0) || !std::isfinite(y0)) throw std::invalid_argument("Y0 must be finite and >= 0");
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
  if (y0 == 0.0) return {1.0, 0.0};
  const double p = params.p;
  const double n = params.n_dim;
  const double alpha = recursion_alpha(params);
  const double b = std::exp2((p + params.eps0) * (1.0 + alpha));
  const double a = scale_factor_A(rho, theta, params.n_dim, p);
  const double ups = upsilon_value(params, sigma);
  const double power = p / (n * (params.q() - p - params.eps0));
  const double log_inner = std::log(y0) + (std::log(c0) + alpha * std::log(a) - std::log(ups)) / alpha +
                           std::log(b) / (alpha * alpha);
  const double k = std::exp(power * log_inner);
  return {std::max(k, 1.0), k};
}

double level_equation_rhs(double k, const StructureParams& params, double sigma, double rho, double theta, double c0) {
  params.require_admissible();
  require_sigma(sigma);
  if (!(k > 0.0) || !(c0 > 0.0)) throw std::invalid_argument("level equation needs k, c0 > 0");
  const double p = params.p;
  const double n = params.n_dim;
  const double alpha = recursion_alpha(params);
  const double b = std::exp2((p + params.eps0) * (1.0 + alpha));
  const double a = scale_factor_A(rho, theta, params.n_dim, p);
  const double ups = upsilon_value(params, sigma);
  const double log_v = (std::log(ups) - std::log(c0) - alpha * std::log(a)) / alpha +
                       n * (params.q() - p - params.eps0) / p * std::log(k) - std::log(b) / (alpha * alpha);
  return std::exp(log_v);
}

double thm1_exponent(double p, int n_dim) {
  const double n = n_dim;
  if (!(p > 2.0 * n / (n + 2.0))) {
    throw RangeError("first sup bound needs p > 2N/(N+2), got p = " + std::to_string(p));
  }
  return p * (n + 2.0) / (2.0 * (p * (n + 2.0) - 2.0 * n));
}

TheoremBound thm1_bound(double avg_pe, double p, int n_dim, double sigma, double rho, double theta, double c) {
  const double e = thm1_exponent(p, n_dim);
  require_sigma(sigma);
  if (!(avg_pe >= 0.0) || !(c > 0.0)) throw std::invalid_argument("thm1_bound needs avg >= 0 and C > 0");
  const double a = scale_factor_A(rho, theta, n_dim, p);
  const double expr = avg_pe == 0.0 ? 0.0
                                     : c * std::pow(a, e) / std::pow(1.0 - sigma, (n_dim + p) * e) *
                                           std::pow(avg_pe, e);
  return {e, expr, 1.0};
}

double thm1_constant(double c0, double p, int n_dim) {
  const double e = thm1_exponent(p, n_dim);
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
  const StructureParams params = StructureParams::first_bound(n_dim, p);
  const double alpha = recursion_alpha(params);
  const double b = std::exp2((p + params.eps0) * (1.0 + alpha));
  return std::exp(e * (std::log(c0) / alpha + std::log(b) / (alpha * alpha)));
}

DeGiorgiReport verify_degiorgi(const SpaceTimeField& field, double p, int n_dim, double sigma, double rho,
                               double theta, double c0, const DeGiorgiOptions& options) {
  const Grid& g = field.grid();
  if (n_dim != g.dim()) throw DimensionError("verify_degiorgi: N does not match the grid");
  require_sigma(sigma);
  if (options.max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  const StructureParams params = StructureParams::first_bound(n_dim, p);
  params.require_admissible();
  const ShrinkSchedule schedule(sigma, Cylinder(rho, theta));
  if (!schedule.base().fits(g)) throw CylinderOutOfGrid("base cylinder does not fit in the grid");

  DeGiorgiReport rep;
  rep.y0 = compute_Yi(field, schedule, 0.0, params, 0);
  rep.c0_used = c0;
  const int depth = options.max_depth;
  std::vector<double> y(static_cast<std::size_t>(depth) + 2, 0.0);

  for (int round = 0; round < std::max(options.fit_rounds, 1); ++round) {
    if (options.k_override) {
      rep.k = *options.k_override;
      rep.k_unclamped = rep.k;
    } else {
      const ChosenLevel lv = choose_k(rep.y0, params, sigma, rho, theta, rep.c0_used);
      rep.k = lv.k;
      rep.k_unclamped = lv.k_unclamped;
    }
    const RecursionConstants unit = RecursionConstants::make(params, schedule, rep.k, 1.0);
    for (int i = 0; i <= depth + 1; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      y[ui] = (i > 0 && y[ui - 1] == 0.0) ? 0.0 : compute_Yi(field, schedule, rep.k, params, i);
    }
    rep.c0_fitted = 0.0;
    for (int i = 0; i <= depth; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (y[ui] > 0.0) rep.c0_fitted = std::max(rep.c0_fitted, y[ui + 1] / recursion_rhs(y[ui], unit, rep.k, i));
    }
    rep.recursion_sound = rep.c0_fitted <= rep.c0_used;
    if (rep.recursion_sound || options.k_override) break;
    rep.c0_used = rep.c0_fitted;
  }

  const RecursionConstants used = RecursionConstants::make(params, schedule, rep.k, rep.c0_used);
  rep.trace.clear();
  rep.decayed = false;
  for (int i = 0; i <= depth; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const ShrinkRadii r = schedule.radii(i);
    const double pred = recursion_rhs(y[ui], used, rep.k, i);
    rep.trace.push_back({i, r.rho, r.theta, level_schedule(rep.k, i), y[ui], pred, pred > 0.0 ? y[ui + 1] / pred : 0.0});
    if (y[ui] < 1e-8) rep.decayed = true;
  }
  const double threshold = std::pow(used.lemma_constant(rep.k), -1.0 / used.alpha) *
                           std::pow(used.b, -1.0 / (used.alpha * used.alpha));
  rep.lemma_predicts = rep.y0 <= threshold * (1.0 + 1e-10);
  rep.sup_inner = sup_over(field, schedule.limit());
  rep.satisfied = rep.sup_inner <= rep.k * (1.0 + 1e-12);
  return rep;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  const auto old = out.precision(17);
  out << "i,rho_i,theta_i,k_i,Y_i,predicted,ratio\n";
  for (const auto& r : trace) {
    out << r.i << ',' << r.rho_i << ',' << r.theta_i << ',' << r.k_i << ',' << r.y_i << ',' << r.predicted_next << ','
        << r.ratio << '\n';
  }
  out.precision(old);
}

}  // namespace plap
