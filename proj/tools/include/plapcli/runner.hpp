#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plap/degiorgi.hpp"
#include "plap/energy.hpp"
#include "plap/iteration2.hpp"
#include "plap/levelset.hpp"
#include "plapcli/scenario.hpp"

namespace plap::cli {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct Thm1Summary {
  TheoremBound bound;  // expression with the constant implied by c0
  double c_derived;
  double c_fit;  // sup / expression at C = 1
};

struct Thm2Summary {
  SecondIterationReport iteration;
  TheoremBound bound;  // expression with the constant implied by the fitted (3.7) constant
  double c_derived;
  double c_fit;
};

struct ClassicalSummary {
  ClassicalBounds bounds;
  double avg_deg;
  double avg_sing;
  std::optional<double> deg_c_fit;
  std::optional<double> sing_c_fit;
};

struct EnergySummary {
  double level;
  std::vector<EnergyRow> caccioppoli;
  std::vector<InequalityRow> combined;
};

struct RunReport {
  Scenario scenario;
  std::uint64_t seed;
  SpaceTimeField field;
  double sup_inner;
  std::optional<DeGiorgiReport> degiorgi;
  std::optional<Thm1Summary> thm1;
  std::optional<Thm2Summary> thm2;
  std::optional<ClassicalSummary> classical;
  std::optional<EnergySummary> energy;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] std::vector<std::string> failed_checks() const;
};

/// Throws ConfigError or NonConvergence.
[[nodiscard]] SpaceTimeField solve_scenario(const Scenario& scenario, std::uint64_t seed);

/// Runs the enabled checks on a solved field.
[[nodiscard]] RunReport verify_field(const Scenario& scenario, std::uint64_t seed, SpaceTimeField field);

[[nodiscard]] RunReport run(const Scenario& scenario, std::uint64_t seed);

[[nodiscard]] nlohmann::json summary_json(const RunReport& report);

/// summary.json plus one CSV per enabled check, each CSV starting with a `# seed=...` line.
void write_bundle(const RunReport& report, const std::filesystem::path& out_dir);

/// field.bin, field.csv (small grids only) and summary.json for a plain solve.
void write_solution(const Scenario& scenario, std::uint64_t seed, const SpaceTimeField& field,
                    const std::filesystem::path& out_dir);

/// `# seed=<seed> scenario=<name>`.
[[nodiscard]] std::string csv_header_line(const Scenario& scenario, std::uint64_t seed);

}  // namespace plap::cli
