#include "plap/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"

namespace plap {

namespace {

// Staggered face between nodes a and b = a + e_d. In 2D the tangential
// gradient averages the four nodes beside the face.
struct Face {
  std::size_t a;
  std::size_t b;
  bool has_tangent;
  std::array<std::size_t, 2> plus;
  std::array<std::size_t, 2> minus;
};

std::vector<Face> build_faces(const Grid& grid) {
  std::vector<Face> faces;
  const int n = grid.nx();
  if (grid.dim() == 1) {
    for (int i = 0; i + 1 < n; ++i) faces.push_back({grid.node(i), grid.node(i + 1), false, {}, {}});
    return faces;
  }
  for (int j = 1; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      faces.push_back({grid.node(i, j), grid.node(i + 1, j), true,
                       {grid.node(i, j + 1), grid.node(i + 1, j + 1)},
                       {grid.node(i, j - 1), grid.node(i + 1, j - 1)}});
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 1; i + 1 < n; ++i) {
      faces.push_back({grid.node(i, j), grid.node(i, j + 1), true,
                       {grid.node(i + 1, j), grid.node(i + 1, j + 1)},
                       {grid.node(i - 1, j), grid.node(i - 1, j + 1)}});
    }
  }
  return faces;
}

struct FaceFlux {
  double flux;
  double d_normal;
  double d_tangent;
};

constexpr double kTinySquare = 1e-30;

FaceFlux face_flux(double gn, double gt, double c, double p, double delta) noexcept {
  const double s = gn * gn + gt * gt + delta * delta;
  const double s_eval = s > 0.0 ? s : kTinySquare;
  const double phi = std::pow(s_eval, 0.5 * (p - 2.0));
  const double psi = (p - 2.0) * std::pow(s_eval, 0.5 * (p - 4.0));
  FaceFlux f{};
  f.flux = s > 0.0 ? c * phi * gn : 0.0;
  f.d_normal = c * (phi + psi * gn * gn);
  f.d_tangent = c * psi * gn * gt;
  return f;
}

class StepSystem {
 public:
  StepSystem(const Grid& grid, const SolverConfig& config, int next_index)
      : grid_(grid), config_(config), j_(next_index), faces_(build_faces(grid)) {
    interior_.resize(grid.nodes_per_slice());
    for (std::size_t n = 0; n < interior_.size(); ++n) interior_[n] = !grid.on_boundary(n);
  }

  [[nodiscard]] double normal(const Face& f, std::span<const double> u) const {
    return (u[f.b] - u[f.a]) / grid_.h();
  }
  [[nodiscard]] double tangent(const Face& f, std::span<const double> u) const {
    if (!f.has_tangent) return 0.0;
    return (u[f.plus[0]] + u[f.plus[1]] - u[f.minus[0]] - u[f.minus[1]]) / (4.0 * grid_.h());
  }
  [[nodiscard]] double face_coefficient(const Face& f) const {
    return 0.5 * (config_.coefficient_at(f.a, j_) + config_.coefficient_at(f.b, j_));
  }

  // R = u - u_prev - dt div_h F(u) at interior nodes, u - g on the boundary.
  void residual(std::span<const double> u, std::span<const double> u_prev, std::span<const double> g,
                std::vector<double>& r) const {
    const std::size_t m = u.size();
    r.assign(m, 0.0);
    for (std::size_t n = 0; n < m; ++n) r[n] = interior_[n] ? u[n] - u_prev[n] : u[n] - g[n];
    const double scale = grid_.dt() / grid_.h();
    const double p = config_.params.p;
    for (const Face& f : faces_) {
      const FaceFlux ff = face_flux(normal(f, u), tangent(f, u), face_coefficient(f), p, config_.delta);
      if (interior_[f.a]) r[f.a] -= scale * ff.flux;
      if (interior_[f.b]) r[f.b] += scale * ff.flux;
    }
  }

  void jacobian(std::span<const double> u, Eigen::SparseMatrix<double>& jac) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(u.size() + faces_.size() * 12);
    for (std::size_t n = 0; n < u.size(); ++n) trip.emplace_back(static_cast<int>(n), static_cast<int>(n), 1.0);
    const double scale = grid_.dt() / grid_.h();
    const double h = grid_.h();
    const double p = config_.params.p;
    std::array<std::pair<std::size_t, double>, 6> deps{};
    for (const Face& f : faces_) {
      const FaceFlux ff = face_flux(normal(f, u), tangent(f, u), face_coefficient(f), p, config_.delta);
      std::size_t count = 0;
      deps[count++] = {f.b, ff.d_normal / h};
      deps[count++] = {f.a, -ff.d_normal / h};
      if (f.has_tangent) {
        const double dt4 = ff.d_tangent / (4.0 * h);
        deps[count++] = {f.plus[0], dt4};
        deps[count++] = {f.plus[1], dt4};
        deps[count++] = {f.minus[0], -dt4};
        deps[count++] = {f.minus[1], -dt4};
      }
      for (std::size_t k = 0; k < count; ++k) {
        const auto [col, d] = deps[k];
        if (interior_[f.a]) trip.emplace_back(static_cast<int>(f.a), static_cast<int>(col), -scale * d);
        if (interior_[f.b]) trip.emplace_back(static_cast<int>(f.b), static_cast<int>(col), scale * d);
      }
    }
    jac.resize(static_cast<int>(u.size()), static_cast<int>(u.size()));
    jac.setFromTriplets(trip.begin(), trip.end());
  }

  // I - dt div(kappa grad .) with kappa frozen at u.
  void lagged_operator(std::span<const double> u, Eigen::SparseMatrix<double>& op) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(u.size() + faces_.size() * 4);
    for (std::size_t n = 0; n < u.size(); ++n) trip.emplace_back(static_cast<int>(n), static_cast<int>(n), 1.0);
    const double h = grid_.h();
    const double coef = grid_.dt() / (h * h);
    const double p = config_.params.p;
    const double d2 = config_.delta * config_.delta;
    for (const Face& f : faces_) {
      const double gn = normal(f, u);
      const double gt = tangent(f, u);
      const double s = std::max(gn * gn + gt * gt + d2, kTinySquare);
      const double kappa = face_coefficient(f) * std::pow(s, 0.5 * (p - 2.0)) * coef;
      const int a = static_cast<int>(f.a);
      const int b = static_cast<int>(f.b);
      if (interior_[f.a]) {
        trip.emplace_back(a, a, kappa);
        trip.emplace_back(a, b, -kappa);
      }
      if (interior_[f.b]) {
        trip.emplace_back(b, b, kappa);
        trip.emplace_back(b, a, -kappa);
      }
    }
    op.resize(static_cast<int>(u.size()), static_cast<int>(u.size()));
    op.setFromTriplets(trip.begin(), trip.end());
  }

  [[nodiscard]] bool interior(std::size_t n) const { return interior_[n]; }

 private:
  const Grid& grid_;
  const SolverConfig& config_;
  int j_;
  std::vector<Face> faces_;
  std::vector<bool> interior_;
};

double max_norm(const std::vector<double>& r) {
  double m = 0.0;
  for (double v : r) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<double> boundary_slice(const Grid& grid, const BoundaryData& bc, int j) {
  std::vector<double> g(grid.nodes_per_slice(), 0.0);
  const double t = grid.time(j);
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (grid.on_boundary(n)) g[n] = bc(grid.point(n), t);
  }
  return g;
}

}  // namespace

void SolverConfig::validate(const Grid& grid) const {
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be >= 0");
  if (newton_max < 1) throw ConfigError("newton_max must be >= 1");
  if (params.n_dim != grid.dim()) throw ConfigError("structure dimension does not match grid dimension");
  if (coefficient) {
    if (!(coefficient->grid() == grid)) throw ConfigError("coefficient grid does not match solve grid");
    const double lo = params.lambda0 * (1.0 - 1e-12);
    const double hi = params.lambda1 * (1.0 + 1e-12);
    for (double c : coefficient->values()) {
      if (c < lo || c > hi) throw ConfigError("coefficient violates lambda0 <= c <= lambda1");
    }
  }
}

std::array<double, 2> model_flux(const std::array<double, 2>& grad, double c, double p, double delta) noexcept {
  const double s = grad[0] * grad[0] + grad[1] * grad[1] + delta * delta;
  if (s == 0.0) return {0.0, 0.0};
  const double phi = c * std::pow(s, 0.5 * (p - 2.0));
  return {phi * grad[0], phi * grad[1]};
}

StepResult step_implicit(const Grid& grid, std::span<const double> u_prev, const SolverConfig& config,
                         const BoundaryData& bc, int next_index) {
  if (u_prev.size() != grid.nodes_per_slice()) throw std::invalid_argument("slice size does not match grid");
  const StepSystem sys(grid, config, next_index);
  const std::vector<double> g = boundary_slice(grid, bc, next_index);

  StepResult out;
  std::vector<double>& u = out.values;
  u.assign(u_prev.begin(), u_prev.end());
  for (std::size_t n = 0; n < u.size(); ++n) {
    if (!sys.interior(n)) u[n] = g[n];
  }

  std::vector<double> r;
  std::vector<double> trial;
  std::vector<double> r_trial;
  sys.residual(u, u_prev, g, r);
  double rn = max_norm(r);

  Eigen::SparseMatrix<double> mat;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  const auto m = static_cast<Eigen::Index>(u.size());

  while (rn > config.newton_tol) {
    if (out.iterations >= config.newton_max) {
      throw NonConvergence(static_cast<std::size_t>(next_index), rn, out.iterations);
    }
    ++out.iterations;

    bool accepted = false;
    sys.jacobian(u, mat);
    lu.compute(mat);
    if (lu.info() == Eigen::Success) {
      const Eigen::VectorXd du = lu.solve(-Eigen::Map<const Eigen::VectorXd>(r.data(), m));
      if (lu.info() == Eigen::Success && du.allFinite()) {
        double lambda = 1.0;
        for (int attempt = 0; attempt <= 3 && !accepted; ++attempt, lambda *= 0.5) {
          trial = u;
          for (Eigen::Index n = 0; n < m; ++n) trial[static_cast<std::size_t>(n)] += lambda * du[n];
          sys.residual(trial, u_prev, g, r_trial);
          const double rt = max_norm(r_trial);
          if (rt < rn) {
            u.swap(trial);
            r.swap(r_trial);
            rn = rt;
            accepted = true;
          }
        }
      }
    }

    if (!accepted) {
      ++out.fixed_point_steps;
      sys.lagged_operator(u, mat);
      lu.compute(mat);
      if (lu.info() != Eigen::Success) {
        throw NonConvergence(static_cast<std::size_t>(next_index), rn, out.iterations);
      }
      Eigen::VectorXd rhs(m);
      for (Eigen::Index n = 0; n < m; ++n) {
        const auto k = static_cast<std::size_t>(n);
        rhs[n] = sys.interior(k) ? u_prev[k] : g[k];
      }
      const Eigen::VectorXd next = lu.solve(rhs);
      if (!next.allFinite()) throw NonConvergence(static_cast<std::size_t>(next_index), rn, out.iterations);
      for (Eigen::Index n = 0; n < m; ++n) u[static_cast<std::size_t>(n)] = next[n];
      sys.residual(u, u_prev, g, r);
      rn = max_norm(r);
    }
  }
  out.residual = rn;
  return out;
}

SpaceTimeField solve(const Grid& grid, std::span<const double> initial, const SolverConfig& config,
                     const BoundaryData& bc) {
  config.validate(grid);
  if (initial.size() != grid.nodes_per_slice()) throw std::invalid_argument("initial slice size does not match grid");
  const std::size_t per = grid.nodes_per_slice();
  std::vector<double> values(grid.size());
  std::copy(initial.begin(), initial.end(), values.begin());
  for (int j = 1; j < grid.nt(); ++j) {
    const std::span<const double> prev(values.data() + static_cast<std::size_t>(j - 1) * per, per);
    StepResult step = step_implicit(grid, prev, config, bc, j);
    std::copy(step.values.begin(), step.values.end(), values.begin() + static_cast<std::ptrdiff_t>(j * per));
  }
  return SpaceTimeField(grid, std::move(values));
}

double comparison_gap(const SpaceTimeField& field) {
  const Grid& g = field.grid();
  double boundary_min = std::numeric_limits<double>::infinity();
  double interior_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.nt(); ++j) {
    for (std::size_t n = 0; n < g.nodes_per_slice(); ++n) {
      const double v = field.at(n, j);
      if (j == 0 || g.on_boundary(n)) {
        boundary_min = std::min(boundary_min, v);
      } else {
        interior_min = std::min(interior_min, v);
      }
    }
  }
  if (!std::isfinite(interior_min)) return 0.0;
  return interior_min - boundary_min;
}

SpaceTimeField exact_power(double amplitude, double p, const Grid& grid) {
  if (grid.dim() != 1) throw DimensionError("exact_power is a 1D solution");
  if (!(p > 1.0)) throw RangeError("exact_power requires p > 1");
  if (!(amplitude > 0.0)) throw std::invalid_argument("exact_power requires B > 0");
  const double rate = std::pow(amplitude * p / (p - 1.0), p - 1.0);
  const double exponent = p / (p - 1.0);
  const double t0 = grid.time(0);
  return SpaceTimeField::from_function(grid, [=](const Point& x, double t) {
    return rate * (t - t0) + amplitude * std::pow(std::abs(x[0]), exponent);
  });
}

double residual(const SpaceTimeField& field, const SolverConfig& config, double exclude_radius) {
  const Grid& grid = field.grid();
  if (grid.nt() < 2) throw std::invalid_argument("residual needs at least two time levels");
  const std::vector<Face> faces = build_faces(grid);
  const std::size_t per = grid.nodes_per_slice();
  const double h = grid.h();
  const double p = config.params.p;
  double worst = 0.0;
  std::vector<double> div(per);
  const int j_end = grid.nt() == 2 ? 1 : grid.nt() - 2;
  for (int j = 1; j <= j_end; ++j) {
    const auto u = field.slice(j);
    std::fill(div.begin(), div.end(), 0.0);
    for (const Face& f : faces) {
      const double gn = (u[f.b] - u[f.a]) / h;
      const double gt = f.has_tangent ? (u[f.plus[0]] + u[f.plus[1]] - u[f.minus[0]] - u[f.minus[1]]) / (4.0 * h) : 0.0;
      const double c = 0.5 * (config.coefficient_at(f.a, j) + config.coefficient_at(f.b, j));
      const double flux = face_flux(gn, gt, c, p, config.delta).flux;
      div[f.a] += flux / h;
      div[f.b] -= flux / h;
    }
    for (std::size_t n = 0; n < per; ++n) {
      if (grid.on_boundary(n) || grid.radius(n) < exclude_radius) continue;
      const double ut = grid.nt() == 2 ? (field.at(n, 1) - field.at(n, 0)) / grid.dt()
                                       : (field.at(n, j + 1) - field.at(n, j - 1)) / (2.0 * grid.dt());
      worst = std::max(worst, std::abs(ut - div[n]));
    }
  }
  return worst;
}

SpaceTimeField steklov_average(const SpaceTimeField& field, double h) {
  const Grid& grid = field.grid();
  const double span = (grid.nt() - 1) * grid.dt();
  if (!(h > 0.0) || !(h < span)) throw std::invalid_argument("Steklov window must satisfy 0 < h < time extent");
  const std::size_t per = grid.nodes_per_slice();
  const int nt = grid.nt();
  const double dt = grid.dt();
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> prefix(static_cast<std::size_t>(nt));

  for (std::size_t n = 0; n < per; ++n) {
    // prefix[m] = integral of the linear interpolant from t_0 to t_m.
    prefix[0] = 0.0;
    for (int m = 1; m < nt; ++m) {
      prefix[static_cast<std::size_t>(m)] =
          prefix[static_cast<std::size_t>(m - 1)] + 0.5 * dt * (field.at(n, m - 1) + field.at(n, m));
    }
    auto cumulative = [&](double s) {
      const double pos = s / dt;
      const int k = std::clamp(static_cast<int>(std::floor(pos)), 0, nt - 1);
      const double frac = pos - k;
      double integral = prefix[static_cast<std::size_t>(k)];
      if (frac > 0.0 && k + 1 < nt) {
        const double u0 = field.at(n, k);
        const double u1 = field.at(n, k + 1);
        integral += dt * (u0 * frac + 0.5 * (u1 - u0) * frac * frac);
      }
      return integral;
    };
    for (int j = 0; j < nt; ++j) {
      const double s0 = j * dt;
      if (s0 + h > span * (1.0 + 1e-12)) break;
      out[static_cast<std::size_t>(j) * per + n] = (cumulative(s0 + h) - cumulative(s0)) / h;
    }
  }
  return SpaceTimeField(grid, std::move(out));
}

}  // namespace plap
