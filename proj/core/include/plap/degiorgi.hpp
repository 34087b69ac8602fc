#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "plap/grid.hpp"
#include "plap/params.hpp"

namespace plap {

/// Constants of the one-step recursion
///   Y_{i+1} <= c0 * b^i / upsilon * a_k^alpha * k^{k_power} * Y_i^{1+alpha}.
struct RecursionConstants {
  double alpha;
  double b;
  double upsilon;
  double a_k;
  double a_cap;
  double k_power;
  double c0;

  [[nodiscard]] static RecursionConstants make(const StructureParams& params, const ShrinkSchedule& schedule, double k,
                                               double c0 = 1.0);
  /// Coefficient C of the geometric lemma: c0 * a_k^alpha * k^{k_power} / upsilon.
  [[nodiscard]] double lemma_constant(double k) const noexcept;
};

/// alpha = (p/N)(p+eps0)/q.
[[nodiscard]] double recursion_alpha(const StructureParams& params) noexcept;

/// (theta/rho^p) k^{-eps0(N+p)/p} + (rho^p/theta)^{N/p} k^{-(p+eps0-2)(N+p)/p}.
/// Throws AdmissibilityError when p + eps0 <= 2.
[[nodiscard]] double a_k_value(double rho, double theta, int n_dim, double p, double eps0, double k);

/// Y_i: average over Q_i of (u - k_i)_+^{p+eps0}. Throws CylinderOutOfGrid.
[[nodiscard]] double compute_Yi(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k,
                                const StructureParams& params, int i);

/// Un-normalised integral behind Y_i.
[[nodiscard]] double truncated_energy(const SpaceTimeField& field, const ShrinkSchedule& schedule, double k,
                                      const StructureParams& params, int i);

/// Predicted bound on Y_{i+1} from Y_i.
[[nodiscard]] double recursion_rhs(double y_i, const RecursionConstants& constants, double k, int i);

struct GeometricLemmaResult {
  double threshold;
  std::vector<double> trace;
  bool converged;
};

/// Unrolls Y_{n+1} = C b^n Y_n^{1+alpha} from Y0 for n_max steps; threshold C^{-1/alpha} b^{-1/alpha^2}.
/// `converged` is true when the sequence drops below 1e-12 within n_max steps.
[[nodiscard]] GeometricLemmaResult geometric_lemma(double y0, double c, double b, double alpha, int n_max = 64);

struct ChosenLevel {
  double k;            // clamped to >= 1
  double k_unclamped;  // solves the level equation exactly
};

/// Level k at which Y0 equals the convergence threshold (with a_k replaced by the scale factor A).
/// Throws AdmissibilityError when q <= p + eps0.
[[nodiscard]] ChosenLevel choose_k(double y0, const StructureParams& params, double sigma, double rho, double theta,
                                   double c0);

/// Right-hand side of the level equation evaluated at k (inverse of choose_k).
[[nodiscard]] double level_equation_rhs(double k, const StructureParams& params, double sigma, double rho, double theta,
                                        double c0);

/// Evaluated sup bound. `expression` is C * (...) without the cap; the cap
/// branch is reported separately and `min()` combines them.
struct TheoremBound {
  double exponent;
  double expression;
  double cap;

  [[nodiscard]] double min() const noexcept { return expression < cap ? expression : cap; }
  [[nodiscard]] double max() const noexcept { return expression > cap ? expression : cap; }
};

/// p(N+2) / (2 (p(N+2) - 2N)).
[[nodiscard]] double thm1_exponent(double p, int n_dim);

/// C A^e / (1-sigma)^{(N+p) e} * avg^e with e = thm1_exponent; cap 1.
/// Throws RangeError when p <= 2N/(N+2).
[[nodiscard]] TheoremBound thm1_bound(double avg_pe, double p, int n_dim, double sigma, double rho, double theta,
                                      double c);

/// Constant of the first sup bound implied by c0: (c0^{1/alpha} b^{1/alpha^2})^e, so that
/// the unclamped level of choose_k equals thm1_bound(.., C).expression.
[[nodiscard]] double thm1_constant(double c0, double p, int n_dim);

struct TraceRow {
  int i;
  double rho_i;
  double theta_i;
  double k_i;
  double y_i;
  double predicted_next;  // recursion_rhs(Y_i) with the fitted c0
  double ratio;           // Y_{i+1} / predicted_next, 0 when not defined
};

struct DeGiorgiOptions {
  int max_depth = 25;
  /// Replaces the chosen level (diagnostics and negative tests).
  std::optional<double> k_override;
  int fit_rounds = 8;
};

struct DeGiorgiReport {
  std::vector<TraceRow> trace;
  double y0 = 0.0;
  double k = 0.0;
  double k_unclamped = 0.0;
  double c0_used = 1.0;
  double c0_fitted = 0.0;
  double sup_inner = 0.0;
  bool satisfied = false;
  /// Trace below 1e-8 within max_depth.
  bool decayed = false;
  /// Y0 below the geometric lemma threshold with the constants at level k.
  bool lemma_predicts = false;
  /// Every observed step ratio <= 1 for c0_used.
  bool recursion_sound = false;
};

/// Runs the level-set iteration with eps0 = 4/(N+2) on a non-negative field:
/// chooses k, traces Y_i, fits c0 as the largest observed step ratio (re-choosing
/// k until the fitted value no longer exceeds the one used) and compares
/// sup over Q_{sigma rho, sigma theta} with k.
[[nodiscard]] DeGiorgiReport verify_degiorgi(const SpaceTimeField& field, double p, int n_dim, double sigma, double rho,
                                             double theta, double c0 = 1.0, const DeGiorgiOptions& options = {});

/// CSV columns: i,rho_i,theta_i,k_i,Y_i,predicted,ratio.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace plap
