#include "plapcli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "plap/degiorgi.hpp"
#include "plap/errors.hpp"
#include "plap/iteration2.hpp"
#include "plapcli/runner.hpp"

namespace plap::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rel_jump(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

double parse_double(const std::string& cell) {
  if (cell == "nan" || cell == "-nan") return kNaN;
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw ConfigError("sweep CSV: bad number '" + cell + "'");
  }
  if (used != cell.size()) throw ConfigError("sweep CSV: bad number '" + cell + "'");
  return v;
}

const char* kColumns = "axis,value,p,N,sigma,nx,thm1_exp,thm2_exp,deg_exp,sing_exp,delta0,c0_fit,thm1_C_fit,thm2_C_fit,sup,bound,ratio";

}  // namespace

SweepAxis parse_axis(const std::string& name) {
  if (name == "p") return SweepAxis::p;
  if (name == "sigma") return SweepAxis::sigma;
  if (name == "grid") return SweepAxis::grid;
  throw ConfigError("unknown sweep axis '" + name + "' (p, sigma, grid)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::p: return "p";
    case SweepAxis::sigma: return "sigma";
    case SweepAxis::grid: return "grid";
  }
  return "unknown";
}

Scenario sweep_scenario(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::p: s.solver.p = value; break;
    case SweepAxis::sigma: s.sigma = value; break;
    case SweepAxis::grid: s.solver.nx = static_cast<int>(value); break;
  }
  s.validate();
  return s;
}

SweepPoint sweep_point(const Scenario& base, SweepAxis axis, double value, std::uint64_t seed) {
  const Scenario s = sweep_scenario(base, axis, value);
  const int n = s.solver.n_dim;
  const double p = s.solver.p;
  const double theta = s.theta_value();
  const SpaceTimeField u = solve_scenario(s, seed);

  const SweepRow ex = exponent_row(p, n);
  SweepPoint pt{value, p, n, s.sigma, s.solver.nx, ex.thm1_exp, ex.thm2_exp, ex.deg_exp, ex.sing_exp, ex.delta0,
                kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};

  DeGiorgiOptions opt;
  opt.max_depth = s.max_depth;
  const DeGiorgiReport d = verify_degiorgi(u, p, n, s.sigma, s.rho, theta, s.c0, opt);
  pt.c0_fit = d.c0_fitted;
  pt.sup = d.sup_inner;
  pt.bound = d.k;
  pt.ratio = d.k > 0.0 ? d.sup_inner / d.k : kNaN;
  const TheoremBound t1 = thm1_bound(d.y0, p, n, s.sigma, s.rho, theta, 1.0);
  if (t1.expression > 0.0) pt.thm1_c_fit = d.sup_inner / t1.expression;

  if (std::isfinite(ex.thm2_exp)) {
    const SecondIterationReport it = second_iteration(u, p, n, s.sigma, s.rho, theta);
    const TheoremBound t2 = thm2_bound(it.avg_p, p, n, s.sigma, s.rho, theta, 1.0);
    if (t2.expression > 0.0) pt.thm2_c_fit = d.sup_inner / t2.expression;
  }
  return pt;
}

std::vector<SweepPoint> run_sweep(const Scenario& base, SweepAxis axis, std::uint64_t seed, int jobs) {
  std::vector<double> values;
  switch (axis) {
    case SweepAxis::p: values = base.sweep_p; break;
    case SweepAxis::sigma: values = base.sweep_sigma; break;
    case SweepAxis::grid: values.assign(base.sweep_grid.begin(), base.sweep_grid.end()); break;
  }
  if (values.empty()) throw ConfigError("scenario has no sweep list for axis '" + to_string(axis) + "'");
  const std::size_t count = values.size();
  std::vector<std::optional<SweepPoint>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = sweep_point(base, axis, values[i], seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, count);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<SweepPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(*slots[i]);
  }
  return out;
}

void write_sweep_points_csv(std::ostream& out, SweepAxis axis, const std::vector<SweepPoint>& rows) {
  const auto old = out.precision(17);
  out << kColumns << '\n';
  for (const auto& r : rows) {
    out << to_string(axis) << ',' << r.value << ',' << r.p << ',' << r.n_dim << ',' << r.sigma << ',' << r.nx << ','
        << r.thm1_exp << ',' << r.thm2_exp << ',' << r.deg_exp << ',' << r.sing_exp << ',' << r.delta0 << ','
        << r.c0_fit << ',' << r.thm1_c_fit << ',' << r.thm2_c_fit << ',' << r.sup << ',' << r.bound << ',' << r.ratio
        << '\n';
  }
  out.precision(old);
}

std::vector<SweepPoint> read_sweep_points_csv(std::istream& in) {
  std::vector<SweepPoint> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kColumns) throw ConfigError("sweep CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 17) throw ConfigError("sweep CSV: expected 17 columns, got " + std::to_string(cells.size()));
    (void)parse_axis(cells[0]);
    SweepPoint r{};
    r.value = parse_double(cells[1]);
    r.p = parse_double(cells[2]);
    r.n_dim = static_cast<int>(parse_double(cells[3]));
    r.sigma = parse_double(cells[4]);
    r.nx = static_cast<int>(parse_double(cells[5]));
    r.thm1_exp = parse_double(cells[6]);
    r.thm2_exp = parse_double(cells[7]);
    r.deg_exp = parse_double(cells[8]);
    r.sing_exp = parse_double(cells[9]);
    r.delta0 = parse_double(cells[10]);
    r.c0_fit = parse_double(cells[11]);
    r.thm1_c_fit = parse_double(cells[12]);
    r.thm2_c_fit = parse_double(cells[13]);
    r.sup = parse_double(cells[14]);
    r.bound = parse_double(cells[15]);
    r.ratio = parse_double(cells[16]);
    rows.push_back(r);
  }
  if (!header_seen) throw ConfigError("sweep CSV: missing header");
  return rows;
}

StabilityVerdict stability_report(std::vector<SweepPoint> rows, const StabilityOptions& opt) {
  std::sort(rows.begin(), rows.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.p < b.p; });
  const auto below = std::count_if(rows.begin(), rows.end(), [](const SweepPoint& r) { return r.p < 2.0; });
  const auto above = std::count_if(rows.begin(), rows.end(), [](const SweepPoint& r) { return r.p > 2.0; });
  if (below < opt.min_per_side || above < opt.min_per_side) {
    throw InsufficientData("stability report needs " + std::to_string(opt.min_per_side) +
                           " p-values on each side of 2, got " + std::to_string(below) + " below and " +
                           std::to_string(above) + " above");
  }
  StabilityVerdict v;
  auto track = [&](double SweepPoint::*field, double& worst, const char* name) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const double a = rows[i].*field;
      const double b = rows[i + 1].*field;
      if (!std::isfinite(a) || !std::isfinite(b)) {
        worst = std::numeric_limits<double>::infinity();
        v.reasons.push_back(std::string(name) + " not finite near p = " + std::to_string(rows[i].p));
        return;
      }
      worst = std::max(worst, rel_jump(a, b));
    }
    if (worst >= opt.max_jump) v.reasons.push_back(std::string(name) + " jumps by " + std::to_string(worst));
  };
  track(&SweepPoint::thm1_exp, v.thm1_exp_jump, "thm1_exp");
  track(&SweepPoint::thm2_exp, v.thm2_exp_jump, "thm2_exp");
  track(&SweepPoint::thm1_c_fit, v.thm1_c_jump, "thm1_C_fit");
  track(&SweepPoint::thm2_c_fit, v.thm2_c_jump, "thm2_C_fit");

  // classical exponents at the closest point on each side of 2
  const SweepPoint* lo = nullptr;
  const SweepPoint* hi = nullptr;
  for (const auto& r : rows) {
    if (r.p < 2.0) lo = &r;
    if (r.p > 2.0 && !hi) hi = &r;
    if (r.p == 2.0 && (std::isfinite(r.deg_exp) || std::isfinite(r.sing_exp))) v.undefined_at_two = false;
  }
  v.classical_min_near_two = std::numeric_limits<double>::infinity();
  for (const SweepPoint* r : {lo, hi}) {
    if (std::abs(r->p - 2.0) > opt.window * (1.0 + 1e-9)) {
      v.reasons.push_back("no sweep point within " + std::to_string(opt.window) + " of p = 2 on one side");
      v.classical_min_near_two = 0.0;
      continue;
    }
    const double mag = std::min(std::abs(r->deg_exp), std::abs(r->sing_exp));
    v.classical_min_near_two = std::min(v.classical_min_near_two, mag);
  }
  // 1/(2 - 1.99) is 99.99999999999991 in doubles
  if (!(v.classical_min_near_two >= opt.classical_threshold * (1.0 - 1e-12))) {
    v.reasons.push_back("classical exponent magnitude " + std::to_string(v.classical_min_near_two) + " below " +
                        std::to_string(opt.classical_threshold));
  }
  if (!v.undefined_at_two) v.reasons.push_back("classical exponents defined at p = 2");
  v.passed = v.reasons.empty();
  return v;
}

void print_verdict(std::ostream& out, const StabilityVerdict& v) {
  out << "thm1_exp max jump   " << v.thm1_exp_jump << '\n'
      << "thm2_exp max jump   " << v.thm2_exp_jump << '\n'
      << "thm1_C_fit max jump " << v.thm1_c_jump << '\n'
      << "thm2_C_fit max jump " << v.thm2_c_jump << '\n'
      << "classical |exp| near p=2 " << v.classical_min_near_two << '\n'
      << "classical undefined at p=2 " << (v.undefined_at_two ? "yes" : "no") << '\n';
  for (const auto& r : v.reasons) out << "  " << r << '\n';
  out << (v.passed ? "PASS" : "FAIL") << '\n';
}

}  // namespace plap::cli
