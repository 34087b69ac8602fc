#include "plapcli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "plap/errors.hpp"
#include "plap/field_io.hpp"
#include "plap/quadrature.hpp"

namespace plap::cli {

namespace {

using nlohmann::json;

double ratio_or_zero(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

// json has no inf/nan; encode them as strings
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json bound_json(const TheoremBound& b) {
  return {{"exponent", num(b.exponent)}, {"expression", num(b.expression)}, {"cap", num(b.cap)}, {"min", num(b.min())}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

EnergySummary energy_check(const SpaceTimeField& field, const Scenario& s) {
  EnergySummary out{};
  const ShrinkSchedule sched(s.sigma, s.cylinder());
  const double sup0 = sup_over(field, s.cylinder());
  out.level = s.energy_level * sup0;
  if (!(out.level > 0.0)) return out;
  const StructureParams params = StructureParams::first_bound(s.solver.n_dim, s.solver.p);
  for (int i = 0; i <= s.energy_depth; ++i) {
    try {
      const Cutoff zeta = build_cutoff(field.grid(), sched, i, CutoffKind::full);
      const double k_next = level_schedule(out.level, i + 1);
      out.caccioppoli.push_back({i, k_next, caccioppoli_sides(field, k_next, zeta, s.solver.p)});
      if (params.admissible()) out.combined.push_back({i, combined_energy_bound(field, sched, out.level, i, params)});
    } catch (const GridTooCoarse&) {
      break;
    }
  }
  return out;
}

}  // namespace

bool RunReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> RunReport::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

std::string csv_header_line(const Scenario& scenario, std::uint64_t seed) {
  return "# seed=" + std::to_string(seed) + " scenario=" + scenario.name + "\n";
}

SpaceTimeField solve_scenario(const Scenario& scenario, std::uint64_t seed) {
  const Grid g = scenario.solver.grid();
  const SolverConfig cfg = scenario.solver.config(g);
  const Problem pr = scenario.solver.problem(g, seed);
  return solve(g, pr.initial, cfg, pr.boundary);
}

RunReport verify_field(const Scenario& s, std::uint64_t seed, SpaceTimeField field) {
  const int n = s.solver.n_dim;
  const double p = s.solver.p;
  const Cylinder base = s.cylinder();
  const double theta = base.theta;
  RunReport rep{s, seed, std::move(field), 0.0, {}, {}, {}, {}, {}, {}};
  const SpaceTimeField& u = rep.field;
  rep.sup_inner = sup_over(u, Cylinder(s.sigma * s.rho, s.sigma * theta));
  const CylinderQuadrature quad(u.grid(), base);

  if (s.checks.degiorgi || s.checks.thm1) {
    DeGiorgiOptions opt;
    opt.max_depth = s.max_depth;
    opt.k_override = s.k_override;
    try {
      rep.degiorgi = verify_degiorgi(u, p, n, s.sigma, s.rho, theta, s.c0, opt);
    } catch (const AdmissibilityError& e) {
      rep.checks.push_back({"degiorgi", false, e.what()});
    } catch (const RangeError& e) {
      rep.checks.push_back({"degiorgi", false, e.what()});
    }
  }
  if (s.checks.degiorgi && rep.degiorgi) {
    const auto& d = *rep.degiorgi;
    std::ostringstream msg;
    msg << "sup " << d.sup_inner << " vs k " << d.k;
    rep.checks.push_back({"degiorgi", d.satisfied, msg.str()});
  }

  if (s.checks.thm1 && rep.degiorgi) {
    try {
      const double c_derived = thm1_constant(rep.degiorgi->c0_used, p, n);
      const TheoremBound unit = thm1_bound(rep.degiorgi->y0, p, n, s.sigma, s.rho, theta, 1.0);
      const TheoremBound b = thm1_bound(rep.degiorgi->y0, p, n, s.sigma, s.rho, theta, c_derived);
      rep.thm1 = Thm1Summary{b, c_derived, ratio_or_zero(rep.sup_inner, unit.expression)};
      std::ostringstream msg;
      msg << "sup " << rep.sup_inner << " vs max(bound, 1) " << b.max();
      rep.checks.push_back({"thm1", rep.sup_inner <= b.max() * (1.0 + 1e-12), msg.str()});
    } catch (const RangeError& e) {
      rep.checks.push_back({"thm1", false, e.what()});
    }
  }

  if (s.checks.thm2) {
    try {
      SecondIterationReport it = second_iteration(u, p, n, s.sigma, s.rho, theta);
      const double c_derived = thm2_constant(it.constants, it.c);
      const TheoremBound unit = thm2_bound(it.avg_p, p, n, s.sigma, s.rho, theta, 1.0);
      const TheoremBound b = thm2_bound(it.avg_p, p, n, s.sigma, s.rho, theta, c_derived);
      const bool ok = it.all_hold() && it.m0 <= it.limit + 1e-9;
      std::ostringstream msg;
      msg << "M_0 " << it.m0 << " vs 2Bd " << it.limit;
      rep.thm2 = Thm2Summary{std::move(it), b, c_derived, ratio_or_zero(rep.sup_inner, unit.expression)};
      rep.checks.push_back({"thm2", ok, msg.str()});
    } catch (const RangeError& e) {
      rep.checks.push_back({"thm2", false, e.what()});
    }
  }

  if (s.checks.classical) {
    const double eps = 1.0;
    const double r = 2.0;
    const double avg_deg = quad.average([&](std::size_t m, int j) { return std::pow(std::abs(u.at(m, j)), p - 2.0 + eps); });
    const double avg_sing = quad.average([&](std::size_t m, int j) { return std::pow(std::abs(u.at(m, j)), r); });
    ClassicalSummary c{classical_bounds(avg_deg, avg_sing, p, n, s.sigma, s.rho, theta, eps, r, 1.0), avg_deg, avg_sing,
                       {}, {}};
    if (c.bounds.degenerate) c.deg_c_fit = ratio_or_zero(rep.sup_inner, c.bounds.degenerate->expression);
    if (c.bounds.singular) c.sing_c_fit = ratio_or_zero(rep.sup_inner, c.bounds.singular->expression);
    rep.classical = c;
    rep.checks.push_back({"classical", true, "informational"});
  }

  if (s.checks.energy) {
    rep.energy = energy_check(u, s);
    bool finite = true;
    for (const auto& row : rep.energy->caccioppoli) finite = finite && std::isfinite(row.sides.fitted_constant());
    for (const auto& row : rep.energy->combined) finite = finite && std::isfinite(row.sides.ratio());
    rep.checks.push_back({"energy", finite, finite ? "fitted constants finite" : "energy without right-hand side"});
  }
  return rep;
}

RunReport run(const Scenario& scenario, std::uint64_t seed) {
  return verify_field(scenario, seed, solve_scenario(scenario, seed));
}

json summary_json(const RunReport& r) {
  const Scenario& s = r.scenario;
  json out;
  out["name"] = s.name;
  out["seed"] = r.seed;
  out["note"] = "discrete solution treated as an approximate weak solution";
  out["grid"] = {{"N", s.solver.n_dim}, {"nx", s.solver.nx}, {"nt", s.solver.nt}, {"dt", s.solver.dt},
                 {"extent", s.solver.extent}};
  out["p"] = s.solver.p;
  out["scenario"] = to_string(s.solver.kind);
  out["cylinder"] = {{"rho", s.rho}, {"theta", s.theta_value()}, {"sigma", s.sigma}};
  out["sup_inner"] = num(r.sup_inner);
  if (r.degiorgi) {
    const auto& d = *r.degiorgi;
    out["degiorgi"] = {{"Y0", num(d.y0)},
                       {"k", num(d.k)},
                       {"k_unclamped", num(d.k_unclamped)},
                       {"c0_used", num(d.c0_used)},
                       {"c0_fitted", num(d.c0_fitted)},
                       {"sup_inner", num(d.sup_inner)},
                       {"satisfied", d.satisfied},
                       {"decayed", d.decayed},
                       {"lemma_predicts", d.lemma_predicts},
                       {"recursion_sound", d.recursion_sound}};
  }
  if (r.thm1) {
    out["thm1"] = {{"bound", bound_json(r.thm1->bound)},
                   {"C_derived", num(r.thm1->c_derived)},
                   {"C_fit", num(r.thm1->c_fit)}};
  }
  if (r.thm2) {
    const auto& t = *r.thm2;
    out["thm2"] = {{"bound", bound_json(t.bound)},
                   {"C_derived", num(t.c_derived)},
                   {"C_fit", num(t.c_fit)},
                   {"avg_p", num(t.iteration.avg_p)},
                   {"eta", num(t.iteration.constants.eta)},
                   {"d", num(t.iteration.constants.d)},
                   {"iteration_C_fit", num(t.iteration.c_fitted)},
                   {"B", num(t.iteration.bb)},
                   {"limit", num(t.iteration.limit)},
                   {"M0", num(t.iteration.m0)},
                   {"all_hold", t.iteration.all_hold()}};
  }
  if (r.classical) {
    const auto& c = *r.classical;
    json j{{"avg_deg", num(c.avg_deg)},
           {"avg_sing", num(c.avg_sing)},
           {"deg_blowup", num(c.bounds.deg_blowup)},
           {"sing_blowup", num(c.bounds.sing_blowup)}};
    if (c.bounds.degenerate) j["degenerate"] = bound_json(*c.bounds.degenerate);
    if (c.bounds.singular) j["singular"] = bound_json(*c.bounds.singular);
    if (c.deg_c_fit) j["deg_C_fit"] = num(*c.deg_c_fit);
    if (c.sing_c_fit) j["sing_C_fit"] = num(*c.sing_c_fit);
    out["classical"] = j;
  }
  if (r.energy) {
    double worst = 0.0;
    for (const auto& row : r.energy->caccioppoli) worst = std::max(worst, row.sides.fitted_constant());
    double worst_combined = 0.0;
    for (const auto& row : r.energy->combined) worst_combined = std::max(worst_combined, row.sides.ratio());
    out["energy"] = {{"level", num(r.energy->level)},
                     {"rows", r.energy->caccioppoli.size()},
                     {"C_fit_max", num(worst)},
                     {"combined_C_fit_max", num(worst_combined)}};
  }
  json checks = json::object();
  for (const auto& c : r.checks) checks[c.name] = {{"passed", c.passed}, {"detail", c.detail}};
  out["checks"] = checks;
  out["passed"] = r.passed();
  return out;
}

void write_bundle(const RunReport& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string head = csv_header_line(r.scenario, r.seed);
  if (r.degiorgi) {
    std::ostringstream os;
    os << head;
    write_trace_csv(os, r.degiorgi->trace);
    write_text(out_dir / "degiorgi_trace.csv", os.str());
  }
  if (r.thm2) {
    std::ostringstream os;
    os.precision(17);
    os << head << "n,M_n,required_B,holds\n";
    for (const auto& row : r.thm2->iteration.rows) {
      os << row.n << ',' << row.m_n << ',' << row.required_bb << ',' << (row.holds ? 1 : 0) << '\n';
    }
    write_text(out_dir / "second_iteration.csv", os.str());
  }
  if (r.energy) {
    std::ostringstream os;
    os << head;
    write_energy_csv(os, r.energy->caccioppoli);
    write_text(out_dir / "energy.csv", os.str());
    std::ostringstream oc;
    oc << head;
    write_inequality_csv(oc, r.energy->combined);
    write_text(out_dir / "energy_combined.csv", oc.str());
  }
  write_text(out_dir / "summary.json", summary_json(r).dump(2) + "\n");
}

void write_solution(const Scenario& s, std::uint64_t seed, const SpaceTimeField& field,
                    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  save_field_binary(out_dir / "field.bin", field);
  json out{{"name", s.name},
           {"seed", seed},
           {"p", s.solver.p},
           {"grid", {{"N", s.solver.n_dim}, {"nx", s.solver.nx}, {"nt", s.solver.nt}, {"dt", s.solver.dt},
                     {"extent", s.solver.extent}}},
           {"min", num(field.min())},
           {"max", num(field.max())}};
  if (field.grid().size() <= 200'000) {
    std::ostringstream os;
    os << csv_header_line(s, seed);
    write_field_csv(os, field);
    write_text(out_dir / "field.csv", os.str());
    out["csv"] = true;
  } else {
    out["csv"] = false;
  }
  write_text(out_dir / "summary.json", out.dump(2) + "\n");
}

}  // namespace plap::cli
