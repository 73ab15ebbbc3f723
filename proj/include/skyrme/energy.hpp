#pragma once

// Static hedgehog energy on R x S^2,
//
//   E[F] = 4 pi int dpsi [ L (2 sin^2 F + F'^2) + (1/L) sin^2 F (sin^2 F + 2 F'^2) ],
//
// in absolute units; the Faddeev-Bogomolny unit is 12 pi^2.

#include <cstdint>
#include <vector>

#include "skyrme/profile.hpp"

namespace skyrme {

inline constexpr double kBogomolnyUnit = 12.0 * 3.14159265358979323846 * 3.14159265358979323846;

struct EnergyBreakdown {
  double sigma_term = 0.0;   ///< part scaling with L
  double skyrme_term = 0.0;  ///< part scaling with 1/L
  double total = 0.0;
  double total_bogomolny_units = 0.0;
};

struct QuadratureEnergyOptions {
  /// Largest admissible exponential tail beyond the grid, relative to the total.
  double tail_tol = 1e-6;
};

/// Trapezoidal energy of a sampled profile with an exponential tail estimate
/// appended at both ends. Throws DomainError when the tail estimate exceeds
/// `tail_tol` or does not decay.
EnergyBreakdown energy_quadrature(const SampledProfile& p, Radius L, const QuadratureEnergyOptions& opts = {});

/// 4 pi L int (F'^2 + 2 sin^2 F) dpsi.
double sigma_energy(const SampledProfile& p, Radius L, const QuadratureEnergyOptions& opts = {});

/// Exact 1-Skyrmion energy in closed form through F and E at amplitude
/// arcsin(1/sqrt(Q)) and modulus k.
double energy_closed_form(Radius L);
/// dE/dL of energy_closed_form by the chain rule through k(L) and phi_tilde(L).
double energy_closed_form_derivative(Radius L);

/// Sigma/Skyrme split of the exact solution, by quadrature in F using the
/// first integral (total agrees with energy_closed_form).
EnergyBreakdown energy_breakdown_exact(Radius L);

/// Energy of 2 arctan(e^{G(L) psi}) with the optimal G(L), and its derivative.
double energy_approx(Radius L);
double energy_approx_derivative(Radius L);

/// 12 pi^2 |q|.
double bogomolny_bound(int q);

enum class EnergyKind { exact, approx };

struct MinimizeResult {
  double L_min = 0.0;
  double E_min = 0.0;
  std::uintmax_t iterations = 0;
};

/// Bracketed Brent minimization of E(L) followed by a root polish of
/// dE/dL = 0 inside the final bracket. Throws BracketError if the interior
/// minimum is not lower than both endpoints.
MinimizeResult minimize_energy(EnergyKind kind, double L_lo = 0.3, double L_hi = 2.0, double tol = 1e-12);

/// First-order Taylor estimate of the minimizing radius about sqrt(2/3),
/// built from F and E at (pi/3, 2/sqrt 7).
double first_order_minimum_radius();

enum class Spacing { linear, log };

/// n radii from lo to hi inclusive.
std::vector<double> radius_grid(double lo, double hi, std::size_t n, Spacing spacing);

struct ScanRow {
  double L = 0.0;
  EnergyBreakdown exact;
  double approx = 0.0;
};

/// Exact and approximate energies over a radius grid, ordered by L.
std::vector<ScanRow> scan_energy(double lo, double hi, std::size_t n, Spacing spacing);

}  // namespace skyrme
