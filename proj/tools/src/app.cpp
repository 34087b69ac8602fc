#include "plapcli/app.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plap/errors.hpp"
#include "plapcli/runner.hpp"
#include "plapcli/scenario.hpp"
#include "plapcli/sweep.hpp"

namespace plap::cli {

namespace {

struct Options {
  std::string scenario;
  std::string out = "plap_out";
  std::string in;
  std::string axis = "p";
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

std::uint64_t seed_for(const Scenario& s, const Options& o) { return o.seed ? *o.seed : s.seed; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Scenario s = load_scenario(o.scenario);
  const std::uint64_t seed = seed_for(s, o);
  const SpaceTimeField u = solve_scenario(s, seed);
  write_solution(s, seed, u, o.out);
  out << "solved " << s.name << ": min " << u.min() << " max " << u.max() << " -> " << o.out << '\n';
  return ExitCode::ok;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(o.scenario);
  const RunReport r = run(s, seed_for(s, o));
  write_bundle(r, o.out);
  for (const auto& c : r.checks) out << (c.passed ? "ok    " : "FAIL  ") << c.name << "  " << c.detail << '\n';
  if (!r.passed()) {
    for (const auto& f : r.failed_checks()) err << "verification failed: " << f << '\n';
    return ExitCode::verification_failed;
  }
  return ExitCode::ok;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = load_scenario(o.scenario);
  const SweepAxis axis = parse_axis(o.axis);
  const std::uint64_t seed = seed_for(s, o);
  const auto rows = run_sweep(s, axis, seed, o.jobs);
  std::filesystem::create_directories(o.out);
  std::ostringstream os;
  os << csv_header_line(s, seed);
  write_sweep_points_csv(os, axis, rows);
  const auto path = std::filesystem::path(o.out) / ("sweep_" + to_string(axis) + ".csv");
  write_file(path, os.str());
  out << "wrote " << rows.size() << " rows to " << path.string() << '\n';
  bool all_ok = true;
  for (const auto& r : rows) {
    if (!(r.ratio <= 1.0 + 1e-12)) {
      err << "verification failed: sup " << r.sup << " exceeds k " << r.bound << " at " << to_string(axis) << " = "
          << r.value << '\n';
      all_ok = false;
    }
  }
  return all_ok ? ExitCode::ok : ExitCode::verification_failed;
}

int cmd_report(const Options& o, std::ostream& out) {
  std::ifstream f(o.in);
  if (!f) throw ConfigError("cannot open sweep CSV " + o.in);
  const StabilityVerdict v = stability_report(read_sweep_points_csv(f));
  print_verdict(out, v);
  return v.passed ? ExitCode::ok : ExitCode::verification_failed;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-Laplace parabolic solver and sup-bound verification"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_value, "seed override for random data");
  };
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve and write the field");
  add_common(solve_cmd);
  CLI::App* verify_cmd = app.add_subcommand("verify", "solve and run the enabled checks");
  add_common(verify_cmd);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one axis and write a stability table");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", o.axis, "p | sigma | grid");
  CLI::App* report_cmd = app.add_subcommand("report", "stability verdict for a p sweep CSV");
  report_cmd->add_option("--in", o.in, "sweep CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out;
    std::ostringstream o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }
  for (CLI::App* sub : {solve_cmd, verify_cmd, sweep_cmd}) {
    if (sub->parsed() && sub->count("--seed") > 0) o.seed = seed_value;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
    return cmd_report(o, out);
  } catch (const NonConvergence& e) {
    err << "error: solver did not converge: " << e.what() << '\n';
    return ExitCode::non_convergence;
  } catch (const plap::Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::config_error;
  }
}

}  // namespace plap::cli
