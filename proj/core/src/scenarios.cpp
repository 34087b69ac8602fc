#include "plap/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "plap/errors.hpp"

namespace plap {

namespace {

std::vector<double> sample_slice(const Grid& grid, const std::function<double(const Point&)>& f) {
  std::vector<double> out(grid.nodes_per_slice());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = f(grid.point(n));
  return out;
}

}  // namespace

Problem zero_problem(const Grid& grid) {
  return {std::vector<double>(grid.nodes_per_slice(), 0.0), [](const Point&, double) { return 0.0; },
          SpaceTimeField(grid)};
}

Problem power_problem(const Grid& grid, double amplitude, double p) {
  SpaceTimeField exact = exact_power(amplitude, p, grid);
  std::vector<double> initial(exact.slice(0).begin(), exact.slice(0).end());
  const double rate = std::pow(amplitude * p / (p - 1.0), p - 1.0);
  const double exponent = p / (p - 1.0);
  const double t0 = grid.time(0);
  BoundaryData bc = [=](const Point& x, double t) {
    return rate * (t - t0) + amplitude * std::pow(std::abs(x[0]), exponent);
  };
  return {std::move(initial), std::move(bc), std::move(exact)};
}

Problem affine_problem(const Grid& grid, double slope, double offset) {
  auto f = [=](const Point& x) { return slope * x[0] + offset; };
  SpaceTimeField exact = SpaceTimeField::from_function(grid, [f](const Point& x, double) { return f(x); });
  return {sample_slice(grid, f), [f](const Point& x, double) { return f(x); }, std::move(exact)};
}

Problem bump_problem(const Grid& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  auto f = [=](const Point& x) {
    const double r2 = (x[0] * x[0] + x[1] * x[1]) / (width * width);
    return r2 >= 1.0 ? 0.0 : amplitude * (1.0 - r2) * (1.0 - r2);
  };
  return {sample_slice(grid, f), [](const Point&, double) { return 0.0; }, std::nullopt};
}

Problem random_problem(const Grid& grid, std::uint64_t seed, int modes, double amplitude) {
  if (modes < 1) throw std::invalid_argument("random_problem needs at least one mode");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double L = grid.extent();
  const int dim = grid.dim();
  std::vector<double> a(static_cast<std::size_t>(modes * modes));
  for (double& v : a) v = coef(rng);
  auto f = [=](const Point& x) {
    const double sx = std::numbers::pi * (x[0] + L) / (2.0 * L);
    const double sy = std::numbers::pi * (x[1] + L) / (2.0 * L);
    double s = 0.0;
    for (int m = 1; m <= modes; ++m) {
      if (dim == 1) {
        s += a[static_cast<std::size_t>(m - 1)] * std::sin(m * sx) / m;
      } else {
        for (int l = 1; l <= modes; ++l) {
          s += a[static_cast<std::size_t>((m - 1) * modes + (l - 1))] * std::sin(m * sx) * std::sin(l * sy) / (m * l);
        }
      }
    }
    return amplitude * s * s;
  };
  return {sample_slice(grid, f), [](const Point&, double) { return 0.0; }, std::nullopt};
}

SpaceTimeField oscillating_coefficient(const Grid& grid, double lambda0, double lambda1, double wavenumber) {
  if (!(lambda0 > 0.0) || lambda1 < lambda0) throw ConfigError("coefficient bounds must satisfy 0 < l0 <= l1");
  const double mid = 0.5 * (lambda0 + lambda1);
  const double half = 0.5 * (lambda1 - lambda0);
  return SpaceTimeField::from_function(grid, [=](const Point& x, double t) {
    return mid + half * std::sin(wavenumber * std::numbers::pi * x[0]) * std::cos(std::numbers::pi * t);
  });
}

}  // namespace plap
