#include "skyrme/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "skyrme/errors.hpp"
#include "skyrme/io.hpp"
#include "skyrme/ode_dynamics.hpp"
#include "skyrme/stability.hpp"

namespace skyrme {
namespace {

Radius require_radius(const RunConfig& cfg) {
  if (!cfg.L) throw DomainError("--L is required for this command");
  return Radius(*cfg.L);
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string cmd_profile(const RunConfig& cfg) {
  const Radius L = require_radius(cfg);
  const auto p = sample_exact_profile(L, GridSpec{cfg.psi_max, cfg.grid_n}, cfg.shift);
  const auto psi = p.psi();
  const auto f = p.f();
  if (cfg.format == Format::json) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = psi[i] - cfg.shift;
      const Envelope env = limiting_profiles(x);
      rows.push_back({{"psi", psi[i]},
                      {"F_exact", f[i]},
                      {"F_approx", approx_profile(x, L)},
                      {"F_lower", env.lower},
                      {"F_upper", env.upper},
                      {"chi", chi_of_psi(psi[i])}});
    }
    return json_text(rows);
  }
  std::string out = "psi,F_exact,F_approx,F_lower,F_upper,chi\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = psi[i] - cfg.shift;
    const Envelope env = limiting_profiles(x);
    out += format_double(psi[i]) + ',' + format_double(f[i]) + ',' + format_double(approx_profile(x, L)) + ',' +
           format_double(env.lower) + ',' + format_double(env.upper) + ',' + format_double(chi_of_psi(psi[i])) +
           '\n';
  }
  return out;
}

std::string cmd_scan(const RunConfig& cfg) {
  const auto& r = cfg.L_range;
  const auto rows = scan_energy(r.lo, r.hi, r.n, r.spacing);
  if (cfg.breakdown) return energy_scan_csv(rows);
  if (cfg.format == Format::json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      out.push_back({{"L", row.L},
                     {"E_over_12pi2", row.exact.total_bogomolny_units},
                     {"E_approx_over_12pi2", row.approx / kBogomolnyUnit}});
    }
    return json_text(out);
  }
  std::string out = "L,E_over_12pi2,E_approx_over_12pi2\n";
  for (const auto& row : rows) {
    out += format_double(row.L) + ',' + format_double(row.exact.total_bogomolny_units) + ',' +
           format_double(row.approx / kBogomolnyUnit) + '\n';
  }
  return out;
}

std::string cmd_minimize(const RunConfig& cfg) {
  const auto res = minimize_energy(cfg.kind, cfg.bracket_lo, cfg.bracket_hi, cfg.tol);
  const auto exact = cfg.kind == EnergyKind::exact ? res
                                                   : minimize_energy(EnergyKind::exact, cfg.bracket_lo,
                                                                     cfg.bracket_hi, cfg.tol);
  const auto approx = cfg.kind == EnergyKind::approx ? res
                                                     : minimize_energy(EnergyKind::approx, cfg.bracket_lo,
                                                                       cfg.bracket_hi, cfg.tol);
  nlohmann::ordered_json j;
  j["kind"] = cfg.kind == EnergyKind::exact ? "exact" : "approx";
  j["L_min"] = res.L_min;
  j["E_min"] = res.E_min;
  j["E_min_over_12pi2"] = res.E_min / kBogomolnyUnit;
  j["iterations"] = res.iterations;
  j["approx_excess"] = approx.E_min / exact.E_min - 1.0;
  return json_text(j);
}

std::string cmd_stability(const RunConfig& cfg) {
  return spectrum_json(analyze_stability(require_radius(cfg), GridSpec{cfg.psi_max, cfg.grid_n}, cfg.n_modes));
}

std::string cmd_shoot(const RunConfig& cfg) {
  ShootOptions opts;
  opts.n_grid = cfg.grid_n;
  return shoot_csv(shoot(require_radius(cfg), cfg.psi_max, opts));
}

std::string cmd_classify(const RunConfig& cfg) {
  ClassifyOptions opts;
  opts.window = cfg.window;
  return classification_json(classify_by_c(cfg.f0, cfg.fp0, require_radius(cfg), opts));
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SKYRME_CYL_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

}  // namespace

std::string run_command(const RunConfig& cfg) {
  if (!(cfg.psi_max > 0.0) || !std::isfinite(cfg.psi_max)) throw DomainError("--psi-max must be finite and > 0");
  if (cfg.grid_n < 3) throw DomainError("--grid-n must be at least 3");
  if (!(cfg.tol > 0.0)) throw DomainError("--tol must be > 0");
  switch (cfg.command) {
    case Command::profile: return cmd_profile(cfg);
    case Command::scan: return cmd_scan(cfg);
    case Command::minimize: return cmd_minimize(cfg);
    case Command::stability: return cmd_stability(cfg);
    case Command::shoot: return cmd_shoot(cfg);
    case Command::classify: return cmd_classify(cfg);
  }
  throw DomainError("unknown command");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact 1-Skyrmion on the metric three-cylinder R x S^2"};
  app.require_subcommand(1);

  double L = 0.0;
  std::vector<std::string> range;
  std::vector<double> bracket;
  std::string spacing = "linear", format = "csv", kind = "exact";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--psi-max", cfg.psi_max, "half-width of the psi grid")->capture_default_str();
    sub->add_option("--grid-n", cfg.grid_n, "number of grid points")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
    sub->add_option("--output,-o", cfg.output_path, "output file (default: stdout)");
  };
  auto with_radius = [&](CLI::App* sub) { sub->add_option("--L", L, "cylinder radius")->required(); };

  auto* profile = app.add_subcommand("profile", "exact, approximate and bounding shape functions");
  with_radius(profile);
  common(profile);
  profile->add_option("--shift", cfg.shift, "translate so that F(shift) = pi/2");
  profile->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* scan = app.add_subcommand("scan", "energy over a range of radii");
  common(scan);
  scan->add_option("--L-range", range, "lo hi n")->expected(3);
  scan->add_option("--spacing", spacing)->check(CLI::IsMember({"linear", "log"}));
  scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  scan->add_flag("--breakdown", cfg.breakdown, "total, sigma and Skyrme terms");

  auto* minimize = app.add_subcommand("minimize", "energy-minimizing radius");
  common(minimize);
  minimize->add_option("--kind", kind)->check(CLI::IsMember({"exact", "approx"}));
  minimize->add_option("--bracket", bracket, "lo hi")->expected(2);

  auto* stability = app.add_subcommand("stability", "lowest Hessian eigenvalues");
  with_radius(stability);
  common(stability);
  stability->add_option("--modes", cfg.n_modes)->check(CLI::Range(2, 64));

  auto* shoot_cmd = app.add_subcommand("shoot", "integrate the second-order equation from F(0) = pi/2");
  with_radius(shoot_cmd);
  common(shoot_cmd);

  auto* classify = app.add_subcommand("classify", "trajectory type from initial data at psi = 0");
  with_radius(classify);
  common(classify);
  classify->add_option("--f0", cfg.f0)->required();
  classify->add_option("--fp0", cfg.fp0)->required();
  classify->add_option("--window", cfg.window)->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFlags;
  }

  const std::map<CLI::App*, Command> commands{{profile, Command::profile},     {scan, Command::scan},
                                              {minimize, Command::minimize},   {stability, Command::stability},
                                              {shoot_cmd, Command::shoot},     {classify, Command::classify}};
  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = commands.at(chosen);
  if (const auto* opt = chosen->get_option_no_throw("--L"); opt != nullptr && opt->count() > 0) cfg.L = L;
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.kind = kind == "approx" ? EnergyKind::approx : EnergyKind::exact;
  if (!range.empty()) {
    try {
      cfg.L_range.lo = std::stod(range[0]);
      cfg.L_range.hi = std::stod(range[1]);
      cfg.L_range.n = std::stoul(range[2]);
    } catch (const std::exception&) {
      err << "error: --L-range expects numbers lo hi n\n";
      return kExitFlags;
    }
  }
  cfg.L_range.spacing = spacing == "log" ? Spacing::log : Spacing::linear;
  if (!bracket.empty()) {
    cfg.bracket_lo = bracket[0];
    cfg.bracket_hi = bracket[1];
  }

  std::string text;
  try {
    text = run_command(cfg);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  }

  if (cfg.output_path.empty()) {
    out << text;
    return kExitOk;
  }
  const auto path = resolve_output(cfg.output_path);
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write " << path.string() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace skyrme
