#pragma once

// Command-line front end. Every command renders its artifact to a string;
// run_cli handles flags, output files and exit codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skyrme/energy.hpp"

namespace skyrme {

enum class Command { profile, scan, minimize, stability, shoot, classify };
enum class Format { csv, json };

struct RadiusRange {
  double lo = 0.3;
  double hi = 3.0;
  std::size_t n = 100;
  Spacing spacing = Spacing::linear;
};

struct RunConfig {
  Command command = Command::profile;
  std::optional<double> L;
  RadiusRange L_range;
  double psi_max = 12.0;
  std::size_t grid_n = 2001;
  double tol = 1e-12;
  Format format = Format::csv;
  std::string output_path;  ///< empty: standard output

  double shift = 0.0;                       // profile
  bool breakdown = false;                   // scan
  EnergyKind kind = EnergyKind::exact;      // minimize
  double bracket_lo = 0.3, bracket_hi = 2.0;  // minimize
  std::size_t n_modes = 4;                  // stability
  double f0 = 1.5707963267948966;           // classify
  double fp0 = 0.0;
  double window = 30.0;
};

enum ExitCode : int { kExitOk = 0, kExitFlags = 2, kExitDomain = 3, kExitConvergence = 4 };

/// Renders the artifact for `cfg`. Throws DomainError / ConvergenceError.
std::string run_command(const RunConfig& cfg);

/// Parses `args` (without the program name), runs the command and writes the
/// artifact to `cfg.output_path` or `out`. Relative output paths are resolved
/// against $SKYRME_CYL_OUTPUT_DIR when it is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skyrme
