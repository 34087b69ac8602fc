#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "plap/degiorgi.hpp"
#include "plap/grid.hpp"

namespace plap {

struct Eps0Conditions {
  bool gap_above_two;     // p + eps0 > 2
  bool positive_rate;     // 2p - N eps0 > 0
  bool sobolev_room;      // eps0 p < N (q - (p + eps0))

  [[nodiscard]] bool all() const noexcept { return gap_above_two && positive_rate && sobolev_room; }
};

[[nodiscard]] Eps0Conditions eps0_admissible(double p, int n_dim, double eps0);

/// rho_n = sigma rho + (1-sigma) rho (1 - 2^{-n}), same for theta.
class ExpandSchedule {
 public:
  ExpandSchedule(double sigma, Cylinder base);

  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] const Cylinder& base() const noexcept { return base_; }
  [[nodiscard]] Cylinder cylinder(int n) const;

 private:
  double sigma_;
  Cylinder base_;
};

/// M_n: sup of u over Q_n.
[[nodiscard]] double mn_value(const SpaceTimeField& field, const ExpandSchedule& schedule, int n);

/// |Q_{rho,theta}| / |Q_{sigma rho, sigma theta}| = sigma^{-(N+1)}.
[[nodiscard]] double volume_ratio_bound(double sigma, int n_dim);

/// Constants of M_n <= eta M_{n+1} + B d^{n+1}, eps0 = 2/(N+1).
struct SecondIterationConstants {
  double p;
  double eps0;
  double q;
  double big_d;  // N (q - p - eps0)
  double d;
  double eta;
  /// B at C = 1; B scales as C^{D/(D - eps0 p)}.
  double bb_unit;

  [[nodiscard]] double c_power() const noexcept { return big_d / (big_d - eps0 * p); }
  [[nodiscard]] double bb(double c) const;
};

/// Throws RangeError when p <= 2N/(N+1).
[[nodiscard]] SecondIterationConstants second_iteration_constants(double avg_p, double p, int n_dim, double sigma,
                                                                  double rho, double theta);

struct SecondIterationRow {
  int n;
  double m_n;
  double required_bb;  // (M_n - eta M_{n+1}) / d^{n+1}
  bool holds;
};

struct SecondIterationReport {
  SecondIterationConstants constants;
  double avg_p;
  double c;         // constant used
  double c_fitted;  // smallest C making every row hold
  double bb;
  double limit;     // 2 B d
  double m0;
  std::vector<SecondIterationRow> rows;

  [[nodiscard]] bool all_hold() const noexcept;
  [[nodiscard]] bool m0_dominated() const noexcept { return m0 <= limit * (1.0 + 1e-12); }
};

/// Checks the recursion for n = 0..n_max on the field; without `c` the constant is fitted.
[[nodiscard]] SecondIterationReport second_iteration(const SpaceTimeField& field, double p, int n_dim, double sigma,
                                                     double rho, double theta, std::optional<double> c = std::nullopt,
                                                     int n_max = 32);

/// p(N+1) / (2N(p-1)). Throws RangeError when p <= 2N/(N+1).
[[nodiscard]] double thm2_exponent(double p, int n_dim);

/// C A^e / (sigma^{a} (1-sigma)^{b}) * avg_p^e with a = p(N+1)^2/(2N(p-1)),
/// b = p(N+p)(N+1)/(2N(p-1)); cap 1.
[[nodiscard]] TheoremBound thm2_bound(double avg_p, double p, int n_dim, double sigma, double rho, double theta,
                                      double c);

/// Constant in front of the second bound implied by 2 B d.
[[nodiscard]] double thm2_constant(const SecondIterationConstants& k, double c);

/// lambda_r = N(p-2) + r p.
[[nodiscard]] double lambda_r(int n_dim, double p, double r);

/// p > 2: C (theta/rho^p)^{1/eps} (1-sigma)^{-(N+p)/eps} avg^{1/eps}, cap (rho^p/theta)^{1/(p-2)}.
/// Throws RangeError unless p > 2 and eps in (0, 2].
[[nodiscard]] TheoremBound degenerate_bound(double avg, double p, int n_dim, double sigma, double rho, double theta,
                                            double eps, double c);

/// p < 2: C (rho^p/theta)^{N/l} (1-sigma)^{-p(N+p)/l} avg^{p/l}, cap (theta/rho^p)^{1/(2-p)}, l = lambda_r.
/// Throws RangeError unless 1 < p < 2 and lambda_r > 0.
[[nodiscard]] TheoremBound singular_bound(double avg, double p, int n_dim, double sigma, double rho, double theta,
                                          double r, double c);

struct ClassicalBounds {
  std::optional<TheoremBound> degenerate;
  std::optional<TheoremBound> singular;
  /// 1/|p-2| for each branch; +inf at p = 2.
  double deg_blowup;
  double sing_blowup;
};

/// Whichever branch applies at p; `avg_deg` is the average of |u|^{p-2+eps}, `avg_sing` of |u|^r.
[[nodiscard]] ClassicalBounds classical_bounds(double avg_deg, double avg_sing, double p, int n_dim, double sigma,
                                               double rho, double theta, double eps = 1.0, double r = 2.0,
                                               double c = 1.0);

/// eps^2 - (4+N) eps + 4.
[[nodiscard]] double delta0_polynomial(double eps, int n_dim) noexcept;

struct Delta0 {
  double root;       // closed form
  double bisection;  // independent bracketing on [2/(N+1), 4/(N+2)]
};

[[nodiscard]] Delta0 delta0_root(int n_dim);

struct SweepRow {
  double p;
  int n_dim;
  double thm1_exp;
  double thm2_exp;
  double deg_exp;   // 1/(p-2), nan at p = 2
  double sing_exp;  // 1/(2-p), nan at p = 2
  double delta0;
};

/// Exponent row at (p, N); exponents outside their range are nan.
[[nodiscard]] SweepRow exponent_row(double p, int n_dim);

/// CSV columns: p,N,thm1_exp,thm2_exp,deg_exp,sing_exp,delta0.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace plap
