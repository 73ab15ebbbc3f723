#pragma once

// Shape functions of the 1-Skyrmion on the metric three-cylinder R x S^2.
//
// The canonical representative satisfies F(0) = pi/2, F'(0) > 0, so that
// F(-inf) = 0 and F(+inf) = pi.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace skyrme {

/// Cylinder scale factor L (finite, > 0).
class Radius {
 public:
  explicit Radius(double L);
  double value() const { return L_; }

 private:
  double L_;
};

/// Quantities derived from L that enter every closed form:
/// k = sqrt(Q/P), Q = 1 + L^2/2, P = 1 + 2L^2, phi_tilde = arcsin(1/sqrt(Q)).
struct ModulusSet {
  double L = 0.0;
  double k = 0.0;
  double Q = 0.0;
  double P = 0.0;
  double phi_tilde = 0.0;
};

ModulusSet modulus_from_radius(Radius L);

/// Distance kept from f = 0 and f = pi, where psi(f) diverges logarithmically.
inline constexpr double kEndpointGuard = 1e-8;
/// |psi| beyond which f_of_psi no longer refines, only extrapolates.
inline constexpr double kPsiClamp = 50.0;

/// Phi(f) defined by k sqrt(2) sin(Phi) = sqrt((L^2 + 2 sin^2 f) / (2L^2 + sin^2 f)).
double phi_of_f(double f, const ModulusSet& ms);

/// Radial coordinate of the exact 1-Skyrmion at which the shape function takes
/// the value f; negative for f < pi/2. Throws DomainError within
/// kEndpointGuard of 0 or pi.
double psi_of_f_exact(double f, const ModulusSet& ms);

/// Inverse of psi_of_f_exact. Beyond the guard band the tail
/// 2 arctan(c e^{sqrt(2) psi}) is matched to the last refined point.
double f_of_psi(double psi, const ModulusSet& ms);

/// Lower/upper bounding profiles 2 arctan e^{psi/sqrt2} and 2 arctan e^{sqrt2 psi},
/// ordered so that lower <= F_exact <= upper.
struct Envelope {
  double lower;
  double upper;
};
Envelope limiting_profiles(double psi);

/// Optimal slope of the test profile 2 arctan(e^{G psi}).
double g_of_l(Radius L);
double approx_profile(double psi, Radius L);

/// Conformal coordinate chi = 2 arctan(e^psi) on S^3 and its inverse.
double chi_of_psi(double psi);
double psi_of_chi(double chi);

/// Uniform grid over [-psi_max, psi_max].
struct GridSpec {
  double psi_max = 12.0;
  std::size_t n = 2001;
};
std::vector<double> uniform_grid(const GridSpec& grid);

/// Shape function sampled on a strictly increasing grid, with its derivative.
class SampledProfile {
 public:
  /// Derivative estimated from the samples (fourth order interior).
  SampledProfile(std::vector<double> psi, std::vector<double> f, Radius L);
  SampledProfile(std::vector<double> psi, std::vector<double> f, std::vector<double> f_prime, Radius L);

  std::span<const double> psi() const { return psi_; }
  std::span<const double> f() const { return f_; }
  std::span<const double> f_prime() const { return f_prime_; }
  Radius radius() const { return L_; }
  std::size_t size() const { return psi_.size(); }

  bool is_strictly_increasing() const;

 private:
  std::vector<double> psi_;
  std::vector<double> f_;
  std::vector<double> f_prime_;
  Radius L_;
};

/// Exact 1-Skyrmion sampled on `grid`, optionally translated so that
/// F(shift) = pi/2. F' comes from the first integral.
SampledProfile sample_exact_profile(Radius L, const GridSpec& grid = {}, double shift = 0.0);
SampledProfile sample_exact_profile(Radius L, std::span<const double> psi, double shift = 0.0);

/// Finite-difference derivative of samples on a strictly increasing grid.
std::vector<double> grid_derivative(std::span<const double> psi, std::span<const double> values);

/// Round((F_end - F_start)/pi). Throws DomainError when either endpoint is
/// farther than `tol` from a multiple of pi.
int topological_charge(const SampledProfile& p, double tol = 1e-3);

}  // namespace skyrme
