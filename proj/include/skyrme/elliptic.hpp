#pragma once

// Incomplete Legendre elliptic integrals, amplitude-first:
//
//   F(phi, k)      = int_0^{sin phi} dx / sqrt((1 - x^2)(1 - k^2 x^2))
//   E(phi, k)      = int_0^{sin phi} sqrt((1 - k^2 x^2) / (1 - x^2)) dx
//   Pi(phi, nu, k) = int_0^{sin phi} dx / ((1 + nu x^2) sqrt((1 - x^2)(1 - k^2 x^2)))
//
// Evaluated through Carlson's symmetric forms with duplication.

#include <functional>

#include "skyrme/quadrature.hpp"

namespace skyrme {

inline constexpr double kEllipticTol = 1e-12;

/// Arguments of the Legendre forms; `nu` is used by the third kind only.
struct EllipticArgs {
  double phi = 0.0;
  double k = 0.0;
  double nu = 0.0;

  /// Throws DomainError unless 0 <= phi <= pi/2 and k^2 < 1.
  void validate() const;
  /// validate() plus 1 + nu sin^2(phi) > 0.
  void validate_third_kind() const;
};

double ellip_f(double phi, double k, double tol = kEllipticTol);
double ellip_e(double phi, double k, double tol = kEllipticTol);
double ellip_pi(double phi, double nu, double k, double tol = kEllipticTol);

/// Partial derivatives with respect to the modulus (k != 0).
double ellip_f_dk(double phi, double k);
double ellip_e_dk(double phi, double k);

// Carlson symmetric integrals. `rel_tol` bounds the relative truncation error
// of the duplication series.
double carlson_rf(double x, double y, double z, double rel_tol);
double carlson_rd(double x, double y, double z, double rel_tol);
double carlson_rj(double x, double y, double z, double p, double rel_tol);
double carlson_rc(double x, double y);

/// Reference quadrature used to check every closed form in the library.
/// Integrable 1/sqrt endpoint singularities are handled by the double
/// exponential rule. Throws ConvergenceError past the refinement budget.
double oracle_quadrature(const std::function<double(double)>& integrand, double a, double b,
                         double tol = 1e-12);

}  // namespace skyrme
