#pragma once

// Euler-Lagrange dynamics of the hedgehog shape function, treated as motion
// in the "time" psi:
//
//   (1 + 2 sin^2 F / L^2) F'' + (F'^2 / L^2) sin 2F - (1 + sin^2 F / L^2) sin 2F = 0
//
// with the translation first integral
//
//   C = (L^2 + 2 sin^2 F) F'^2 - sin^2 F (2 L^2 + sin^2 F).
//
// C = 0 is the finite-energy separatrix; C > 0 diverges, C < 0 oscillates.

#include <string_view>

#include "skyrme/profile.hpp"

namespace skyrme {

struct ShootState {
  double psi = 0.0;
  double f = 0.0;
  double f_prime = 0.0;
};

double rhs_second_order(const ShootState& s, Radius L);
double conserved_c(const ShootState& s, Radius L);

/// Non-negative root of F'^2 = sin^2 f (2L^2 + sin^2 f) / (L^2 + 2 sin^2 f).
double first_integral_fprime(double f, Radius L);

struct ShootOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  std::size_t n_grid = 2001;  ///< output samples over [-psi_max, psi_max]
  double c_budget = 1e-8;     ///< allowed |C| anywhere on the output
};

/// Integrates the second-order equation both ways from F(0) = pi/2,
/// F'(0) = sqrt((2L^2 + 1)/(L^2 + 2)). Throws ConvergenceError on step
/// failure or when |C| leaves the budget.
SampledProfile shoot(Radius L, double psi_max, const ShootOptions& opts = {});

enum class Trajectory { separatrix, divergent, oscillatory };
std::string_view to_string(Trajectory t);

struct Classification {
  double c = 0.0;
  Trajectory kind = Trajectory::separatrix;
  double window = 0.0;
};

struct ClassifyOptions {
  double window = 30.0;          ///< integrate over [-window, window]
  double escape = 10.0;          ///< divergence declared at |F - pi/2| > escape * pi
  double separatrix_scale = 1e-10;  ///< |C| <= scale * (1 + 2L^2) counts as C = 0
};

/// Classifies the trajectory through (F, F') = (f0, fp0) at psi = 0 by the sign
/// of C and confirms the prediction by integration. Throws
/// ClassificationError when the trajectory contradicts it.
Classification classify_by_c(double f0, double fp0, Radius L, const ClassifyOptions& opts = {});

}  // namespace skyrme
