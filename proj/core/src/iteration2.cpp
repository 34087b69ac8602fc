#include "plap/iteration2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"
#include "plap/params.hpp"
#include "plap/quadrature.hpp"

namespace plap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_sigma_open(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

double power_or_zero(double base, double e) { return base == 0.0 ? 0.0 : std::pow(base, e); }

}  // namespace

Eps0Conditions eps0_admissible(double p, int n_dim, double eps0) {
  if (n_dim < 1) throw DimensionError("N must be >= 1");
  const double n = n_dim;
  const double q = p * (n + 2.0) / n;
  return {p + eps0 - 2.0 > 0.0, 2.0 * p - n * eps0 > 0.0, eps0 * p < n * (q - (p + eps0))};
}

ExpandSchedule::ExpandSchedule(double sigma, Cylinder base) : sigma_(sigma), base_(base) { require_sigma_open(sigma); }

Cylinder ExpandSchedule::cylinder(int n) const {
  if (n < 0) throw std::invalid_argument("schedule index must be >= 0");
  const double f = sigma_ + (1.0 - sigma_) * (1.0 - std::ldexp(1.0, -n));
  return Cylinder(f * base_.rho, f * base_.theta);
}

double mn_value(const SpaceTimeField& field, const ExpandSchedule& schedule, int n) {
  return sup_over(field, schedule.cylinder(n));
}

double volume_ratio_bound(double sigma, int n_dim) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("sigma must lie in (0, 1]");
  if (n_dim < 1) throw DimensionError("N must be >= 1");
  return std::pow(sigma, -(n_dim + 1.0));
}

double SecondIterationConstants::bb(double c) const {
  require_positive(c, "C");
  return bb_unit * std::pow(c, c_power());
}

double thm2_exponent(double p, int n_dim) {
  const double n = n_dim;
  if (!(p > 2.0 * n / (n + 1.0))) {
    throw RangeError("second sup bound needs p > 2N/(N+1), got p = " + std::to_string(p));
  }
  return p * (n + 1.0) / (2.0 * n * (p - 1.0));
}

SecondIterationConstants second_iteration_constants(double avg_p, double p, int n_dim, double sigma, double rho,
                                                    double theta) {
  (void)thm2_exponent(p, n_dim);
  require_sigma_open(sigma);
  if (!(avg_p >= 0.0)) throw std::invalid_argument("average must be >= 0");
  const double n = n_dim;
  SecondIterationConstants k{};
  k.p = p;
  k.eps0 = eps0_second_bound(n_dim);
  k.q = p * (n + 2.0) / n;
  k.big_d = n * (k.q - p - k.eps0);
  const double gap = k.big_d - k.eps0 * p;
  k.d = std::exp2(p * (n + p) / gap);
  k.eta = 1.0 / (2.0 * k.d);
  const double a = scale_factor_A(rho, theta, n_dim, p);
  const double mu = p / k.big_d;
  const double inner = std::pow(a, mu) /
                       (std::pow(sigma, p * (n + 1.0) / k.big_d) *
                        std::pow(1.0 - sigma, p / (k.q - p - k.eps0) * (1.0 + p / n))) *
                       power_or_zero(avg_p, mu);
  k.bb_unit = std::pow(k.eta, -k.eps0 * p / gap) * power_or_zero(inner, k.big_d / gap);
  return k;
}

bool SecondIterationReport::all_hold() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const SecondIterationRow& r) { return r.holds; });
}

SecondIterationReport second_iteration(const SpaceTimeField& field, double p, int n_dim, double sigma, double rho,
                                       double theta, std::optional<double> c, int n_max) {
  const Grid& g = field.grid();
  if (n_dim != g.dim()) throw DimensionError("second_iteration: N does not match the grid");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const Cylinder base(rho, theta);
  if (!base.fits(g)) throw CylinderOutOfGrid("base cylinder does not fit in the grid");

  const CylinderQuadrature quad(g, base);
  const double avg_p = quad.average([&](std::size_t n, int j) { return std::pow(std::abs(field.at(n, j)), p); });
  const SecondIterationConstants k = second_iteration_constants(avg_p, p, n_dim, sigma, rho, theta);
  const ExpandSchedule sched(sigma, base);

  std::vector<double> m(static_cast<std::size_t>(n_max) + 2);
  for (int n = 0; n <= n_max + 1; ++n) m[static_cast<std::size_t>(n)] = mn_value(field, sched, n);

  SecondIterationReport rep{k, avg_p, 1.0, 0.0, 0.0, 0.0, m[0], {}};
  double required_max = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const double req = (m[un] - k.eta * m[un + 1]) / std::pow(k.d, n + 1);
    required_max = std::max(required_max, req);
    rep.rows.push_back({n, m[un], req, false});
  }
  if (required_max <= 0.0) {
    rep.c_fitted = 0.0;
  } else if (k.bb_unit > 0.0) {
    rep.c_fitted = std::pow(required_max / k.bb_unit, 1.0 / k.c_power());
  } else {
    rep.c_fitted = std::numeric_limits<double>::infinity();
  }
  rep.c = c ? *c : (rep.c_fitted > 0.0 ? rep.c_fitted : 1.0);
  if (!std::isfinite(rep.c)) {
    rep.bb = std::numeric_limits<double>::infinity();
  } else {
    rep.bb = k.bb(rep.c);
  }
  for (auto& row : rep.rows) row.holds = row.required_bb <= rep.bb * (1.0 + 1e-10);
  rep.limit = 2.0 * rep.bb * k.d;
  return rep;
}

TheoremBound thm2_bound(double avg_p, double p, int n_dim, double sigma, double rho, double theta, double c) {
  const double e = thm2_exponent(p, n_dim);
  require_sigma_open(sigma);
  require_positive(c, "C");
  if (!(avg_p >= 0.0)) throw std::invalid_argument("average must be >= 0");
  const double n = n_dim;
  const double a = scale_factor_A(rho, theta, n_dim, p);
  const double s_pow = p * (n + 1.0) * (n + 1.0) / (2.0 * n * (p - 1.0));
  const double one_minus_pow = p * (n + p) * (n + 1.0) / (2.0 * n * (p - 1.0));
  const double expr = avg_p == 0.0 ? 0.0
                                    : c * std::pow(a, e) / (std::pow(sigma, s_pow) * std::pow(1.0 - sigma, one_minus_pow)) *
                                          std::pow(avg_p, e);
  return {e, expr, 1.0};
}

double thm2_constant(const SecondIterationConstants& k, double c) {
  require_positive(c, "C");
  const double gap = k.big_d - k.eps0 * k.p;
  return 2.0 * k.d * std::pow(k.eta, -k.eps0 * k.p / gap) * std::pow(c, k.c_power());
}

double lambda_r(int n_dim, double p, double r) { return n_dim * (p - 2.0) + r * p; }

TheoremBound degenerate_bound(double avg, double p, int n_dim, double sigma, double rho, double theta, double eps,
                              double c) {
  if (!(p > 2.0)) throw RangeError("degenerate bound needs p > 2, got p = " + std::to_string(p));
  if (!(eps > 0.0 && eps <= 2.0)) throw RangeError("degenerate bound needs eps in (0, 2]");
  require_sigma_open(sigma);
  require_positive(c, "C");
  const double e = 1.0 / eps;
  const double expr = c * std::pow(theta / std::pow(rho, p), e) / std::pow(1.0 - sigma, (n_dim + p) * e) *
                      power_or_zero(avg, e);
  return {e, expr, std::pow(std::pow(rho, p) / theta, 1.0 / (p - 2.0))};
}

TheoremBound singular_bound(double avg, double p, int n_dim, double sigma, double rho, double theta, double r,
                            double c) {
  if (!(p > 1.0 && p < 2.0)) throw RangeError("singular bound needs 1 < p < 2, got p = " + std::to_string(p));
  const double lam = lambda_r(n_dim, p, r);
  if (!(lam > 0.0)) throw RangeError("singular bound needs lambda_r > 0");
  require_sigma_open(sigma);
  require_positive(c, "C");
  const double e = p / lam;
  const double expr = c * std::pow(std::pow(rho, p) / theta, n_dim / lam) /
                      std::pow(1.0 - sigma, p * (n_dim + p) / lam) * power_or_zero(avg, e);
  return {e, expr, std::pow(theta / std::pow(rho, p), 1.0 / (2.0 - p))};
}

ClassicalBounds classical_bounds(double avg_deg, double avg_sing, double p, int n_dim, double sigma, double rho,
                                 double theta, double eps, double r, double c) {
  ClassicalBounds out;
  const double gap = std::abs(p - 2.0);
  out.deg_blowup = gap > 0.0 ? 1.0 / gap : std::numeric_limits<double>::infinity();
  out.sing_blowup = out.deg_blowup;
  if (p > 2.0) out.degenerate = degenerate_bound(avg_deg, p, n_dim, sigma, rho, theta, eps, c);
  if (p > 1.0 && p < 2.0 && lambda_r(n_dim, p, r) > 0.0) {
    out.singular = singular_bound(avg_sing, p, n_dim, sigma, rho, theta, r, c);
  }
  return out;
}

double delta0_polynomial(double eps, int n_dim) noexcept { return eps * eps - (4.0 + n_dim) * eps + 4.0; }

Delta0 delta0_root(int n_dim) {
  if (n_dim < 1) throw DimensionError("N must be >= 1");
  const double s = 4.0 + n_dim;
  // smaller root written without cancellation
  const double root = 8.0 / (s + std::sqrt(s * s - 16.0));
  double lo = 2.0 / (n_dim + 1.0);
  double hi = 4.0 / (n_dim + 2.0);
  double glo = delta0_polynomial(lo, n_dim);
  if (glo == 0.0) return {root, lo};
  if (delta0_polynomial(hi, n_dim) == 0.0) return {root, hi};
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = delta0_polynomial(mid, n_dim);
    if (gm == 0.0) return {root, mid};
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return {root, 0.5 * (lo + hi)};
}

SweepRow exponent_row(double p, int n_dim) {
  const double n = n_dim;
  SweepRow row{p, n_dim, kNaN, kNaN, kNaN, kNaN, delta0_root(n_dim).root};
  if (p > 2.0 * n / (n + 2.0)) row.thm1_exp = thm1_exponent(p, n_dim);
  if (p > 2.0 * n / (n + 1.0)) row.thm2_exp = thm2_exponent(p, n_dim);
  if (p != 2.0) {
    row.deg_exp = 1.0 / (p - 2.0);
    row.sing_exp = 1.0 / (2.0 - p);
  }
  return row;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old = out.precision(17);
  out << "p,N,thm1_exp,thm2_exp,deg_exp,sing_exp,delta0\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.n_dim << ',' << r.thm1_exp << ',' << r.thm2_exp << ',' << r.deg_exp << ',' << r.sing_exp
        << ',' << r.delta0 << '\n';
  }
  out.precision(old);
}

}  // namespace plap
