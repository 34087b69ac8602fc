#include "plapcli/scenario.hpp"

#include <fstream>
#include <limits>

#include "plap/errors.hpp"

namespace plap::cli {

namespace {

using nlohmann::json;

template <class T>
T get_or(const json& doc, const char* key, T fallback) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("key '") + key + "': " + e.what());
  }
}

template <class T>
T require(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) throw ConfigError(std::string("missing key '") + key + "'");
  return get_or<T>(doc, key, T{});
}

InitialKind parse_kind(const std::string& s) {
  if (s == "zero") return InitialKind::zero;
  if (s == "power" || s == "exact_power") return InitialKind::power;
  if (s == "affine") return InitialKind::affine;
  if (s == "bump") return InitialKind::bump;
  if (s == "random") return InitialKind::random;
  throw ConfigError("unknown scenario '" + s + "' (zero, power, affine, bump, random)");
}

template <class T>
std::vector<T> sweep_list(const json& sweep, const char* key) {
  if (!sweep.contains(key)) return {};
  const auto v = get_or<std::vector<T>>(sweep, key, {});
  if (v.empty()) throw ConfigError(std::string("sweep list '") + key + "' is empty");
  return v;
}

}  // namespace

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::zero: return "zero";
    case InitialKind::power: return "power";
    case InitialKind::affine: return "affine";
    case InitialKind::bump: return "bump";
    case InitialKind::random: return "random";
  }
  return "unknown";
}

Grid SolverSpec::grid() const {
  try {
    return Grid(n_dim, extent, nx, nt, dt);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

SolverConfig SolverSpec::config(const Grid& grid) const {
  try {
    const double l0 = coefficient ? coefficient->lambda0 : 1.0;
    const double l1 = coefficient ? coefficient->lambda1 : 1.0;
    SolverConfig cfg(StructureParams::first_bound(n_dim, p, l0, l1));
    cfg.delta = delta;
    cfg.newton_tol = newton_tol;
    cfg.newton_max = newton_max;
    if (coefficient) cfg.coefficient = oscillating_coefficient(grid, l0, l1, coefficient->wavenumber);
    cfg.validate(grid);
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("solver config: ") + e.what());
  }
}

Problem SolverSpec::problem(const Grid& grid, std::uint64_t seed) const {
  try {
    switch (kind) {
      case InitialKind::zero: return zero_problem(grid);
      case InitialKind::power: return power_problem(grid, amplitude, p);
      case InitialKind::affine: return affine_problem(grid, slope, offset);
      case InitialKind::bump: return bump_problem(grid, amplitude, width);
      case InitialKind::random: return random_problem(grid, seed, modes, amplitude);
    }
  } catch (const std::exception& e) {
    throw ConfigError("scenario '" + to_string(kind) + "': " + e.what());
  }
  throw ConfigError("unknown scenario kind");
}

double Scenario::theta_value() const {
  return theta ? *theta : 0.9 * 0.5 * (solver.nt - 1) * solver.dt;
}

void Scenario::validate() const {
  const Grid g = solver.grid();
  (void)solver.config(g);
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  if (!(rho > 0.0) || !(theta_value() > 0.0)) throw ConfigError("cylinder radii must be positive");
  if (!cylinder().fits(g)) throw ConfigError("cylinder (rho, theta) does not fit the grid");
  if (!(c0 > 0.0)) throw ConfigError("degiorgi.c0 must be positive");
  if (k_override && !(*k_override > 0.0)) throw ConfigError("degiorgi.k_override must be positive");
  if (max_depth < 1) throw ConfigError("degiorgi.max_depth must be >= 1");
  if (!(energy_level > 0.0 && energy_level < 1.0)) throw ConfigError("energy.level must lie in (0, 1)");
  if (energy_depth < 0) throw ConfigError("energy.depth must be >= 0");
  for (double v : sweep_sigma) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("sweep sigma values must lie in (0, 1)");
  }
  for (double v : sweep_p) {
    if (!(v > 1.0)) throw ConfigError("sweep p values must exceed 1");
  }
  for (int v : sweep_grid) {
    if (v < 3 || v % 2 == 0) throw ConfigError("sweep grid sizes must be odd and >= 3");
  }
}

Scenario parse_scenario(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  s.name = get_or<std::string>(doc, "name", "scenario");
  s.seed = get_or<std::uint64_t>(doc, "seed", 0);

  SolverSpec& v = s.solver;
  v.p = require<double>(doc, "p");
  v.n_dim = require<int>(doc, "N");
  v.nx = require<int>(doc, "nx");
  v.nt = require<int>(doc, "nt");
  v.dt = require<double>(doc, "dt");
  v.extent = get_or<double>(doc, "extent", 1.0);
  v.delta = get_or<double>(doc, "delta", v.delta);
  v.newton_tol = get_or<double>(doc, "newton_tol", v.newton_tol);
  v.newton_max = get_or<int>(doc, "newton_max", v.newton_max);
  v.kind = parse_kind(get_or<std::string>(doc, "scenario", "zero"));
  if (doc.contains("scenario_params")) {
    const json& sp = doc.at("scenario_params");
    if (!sp.is_object()) throw ConfigError("scenario_params must be an object");
    v.amplitude = get_or<double>(sp, "amplitude", v.amplitude);
    v.width = get_or<double>(sp, "width", v.width);
    v.slope = get_or<double>(sp, "slope", v.slope);
    v.offset = get_or<double>(sp, "offset", v.offset);
    v.modes = get_or<int>(sp, "modes", v.modes);
  }
  if (doc.contains("coefficient") && !doc.at("coefficient").is_null()) {
    const json& c = doc.at("coefficient");
    if (!c.is_object()) throw ConfigError("coefficient must be an object");
    v.coefficient = CoefficientSpec{require<double>(c, "lambda0"), require<double>(c, "lambda1"),
                                    get_or<double>(c, "wavenumber", 2.0)};
  }

  if (doc.contains("cylinder")) {
    const json& c = doc.at("cylinder");
    if (!c.is_object()) throw ConfigError("cylinder must be an object");
    s.rho = get_or<double>(c, "rho", s.rho);
    if (c.contains("theta") && !c.at("theta").is_null()) s.theta = get_or<double>(c, "theta", 0.0);
    s.sigma = get_or<double>(c, "sigma", s.sigma);
  }
  if (doc.contains("checks")) {
    const json& c = doc.at("checks");
    if (!c.is_object()) throw ConfigError("checks must be an object");
    s.checks.energy = get_or<bool>(c, "energy", true);
    s.checks.degiorgi = get_or<bool>(c, "degiorgi", true);
    s.checks.thm1 = get_or<bool>(c, "thm1", true);
    s.checks.thm2 = get_or<bool>(c, "thm2", true);
    s.checks.classical = get_or<bool>(c, "classical", true);
  }
  if (doc.contains("degiorgi")) {
    const json& d = doc.at("degiorgi");
    s.c0 = get_or<double>(d, "c0", s.c0);
    s.max_depth = get_or<int>(d, "max_depth", s.max_depth);
    if (d.contains("k_override") && !d.at("k_override").is_null()) s.k_override = get_or<double>(d, "k_override", 0.0);
  }
  if (doc.contains("energy")) {
    const json& e = doc.at("energy");
    s.energy_level = get_or<double>(e, "level", s.energy_level);
    s.energy_depth = get_or<int>(e, "depth", s.energy_depth);
  }
  if (doc.contains("sweep")) {
    const json& w = doc.at("sweep");
    if (!w.is_object()) throw ConfigError("sweep must be an object");
    s.sweep_p = sweep_list<double>(w, "p");
    s.sweep_sigma = sweep_list<double>(w, "sigma");
    s.sweep_grid = sweep_list<int>(w, "grid");
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("scenario file " + path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace plap::cli
