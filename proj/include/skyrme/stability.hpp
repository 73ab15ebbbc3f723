#pragma once

// Second variation of the hedgehog energy about an exact solution.
//
// With e(F, F') the energy integrand, the quadratic form is
//
//   Q[h] = 4 pi int [ a h'^2 / 2 + b h h' + c h^2 / 2 ] dpsi,
//   a = d2e/dF'^2,  b = d2e/dF dF',  c = d2e/dF^2,
//
// and its Euler-Lagrange operator -(a h')' + (c - b') h, normalised against
// the weight 8 pi L^3 of the volume form on R x S^2.

#include <cstddef>
#include <span>
#include <vector>

#include "skyrme/profile.hpp"

namespace skyrme {

struct HessianCoeffs {
  std::vector<double> grid;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> b_prime;  ///< db/dpsi along the solution
  std::vector<double> weight;
  double L = 0.0;
};

/// Coefficients sampled along `p`. Rejects profiles whose first-integral
/// residual |C| exceeds `c_budget` anywhere.
HessianCoeffs hessian_coefficients(const SampledProfile& p, Radius L, double c_budget = 1e-8);

/// Q[h] by the trapezoidal rule. `h` must vanish at both grid ends. With no
/// `h_prime`, the derivative is taken from the grid.
double hessian_quadratic_form(const HessianCoeffs& coeffs, std::span<const double> h);
double hessian_quadratic_form(const HessianCoeffs& coeffs, std::span<const double> h,
                              std::span<const double> h_prime);

struct Spectrum {
  std::vector<double> eigenvalues;                ///< ascending
  std::vector<std::vector<double>> eigenfunctions;  ///< full grid, zero at both ends
};

/// Lowest `n_modes` eigenpairs of -(a h')' + (c - b') h = lambda w h with
/// Dirichlet ends, second-order central differences. Eigenfunctions are
/// orthonormal in sum_i w_i h_i^2 dpsi.
Spectrum solve_spectrum(const HessianCoeffs& coeffs, std::size_t n_modes);

/// Applies the discrete operator W^{-1} K (the eigenproblem in standard
/// form) to a grid function; end values of `h` are ignored, output ends are 0.
std::vector<double> apply_operator(const HessianCoeffs& coeffs, std::span<const double> h);

/// Trapezoidal weighted inner product sum_i w_i u_i v_i dpsi_i.
double weighted_dot(const HessianCoeffs& coeffs, std::span<const double> u, std::span<const double> v);

/// Number of interior sign changes, ignoring entries below `floor` * max|v|.
std::size_t count_nodes(std::span<const double> v, double floor = 1e-8);

/// |<u, v>_w| / (|u|_w |v|_w) on the coefficient grid.
double weighted_overlap(const HessianCoeffs& coeffs, std::span<const double> u, std::span<const double> v);

struct StabilityReport {
  double L = 0.0;
  double psi_max = 0.0;
  std::size_t n_grid = 0;
  std::vector<double> eigenvalues;
  double overlap_with_fprime = 0.0;
  std::size_t ground_state_nodes = 0;
  double lambda0_refined = 0.0;  ///< lowest eigenvalue on the doubled grid
  double doubling_shift = 0.0;   ///< relative change of lambda_1 under doubling
};

/// Builds the exact profile on `grid` and on the doubled grid, solves both,
/// and throws ConvergenceError when lambda_1 moves by more than
/// `convergence_tol` (relative) between them.
StabilityReport analyze_stability(Radius L, const GridSpec& grid = {}, std::size_t n_modes = 4,
                                  double convergence_tol = 1e-3);

}  // namespace skyrme
