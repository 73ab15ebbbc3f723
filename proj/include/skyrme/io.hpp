#pragma once

// CSV and JSON writers. CSV: header row, '\n' newlines, 17 significant
// digits, C locale.

#include <string>
#include <vector>

#include "skyrme/energy.hpp"
#include "skyrme/ode_dynamics.hpp"
#include "skyrme/profile.hpp"
#include "skyrme/stability.hpp"

namespace skyrme {

/// %.17g, independent of the global locale.
std::string format_double(double x);

/// `psi,F,chi`
std::string profile_csv(const SampledProfile& p);

/// `L,E_total,E_over_12pi2,E_sigma,E_skyrme`
std::string energy_scan_csv(const std::vector<ScanRow>& rows);

/// `psi,F,chi,C`
std::string shoot_csv(const SampledProfile& p);

/// {L, psi_max, n_grid, eigenvalues, overlap_with_Fprime}
std::string spectrum_json(const StabilityReport& r);

/// {C, class, window}
std::string classification_json(const Classification& c);

}  // namespace skyrme
