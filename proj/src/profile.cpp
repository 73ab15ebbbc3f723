#include "skyrme/profile.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "skyrme/errors.hpp"
#include "skyrme/ode_dynamics.hpp"
#include "skyrme/quadrature.hpp"

namespace skyrme {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

constexpr double kInvSqrt2 = 1.0 / sqrt2;

// Integral of (1 + 1/(4k^2 z^2 - 1)) / sqrt((1 - z^2)(1 - k^2 z^2)) over
// [z(f), 1], with u = z - 1/(2k), w = 1 - z and 1 - k^2 z^2 carried without
// cancellation. The lower half is integrated in log(u), the upper half in
// sqrt(w).
double z_integral(double f, const ModulusSet& ms) {
  const double s = std::sin(f);
  const double cf = std::cos(f);
  const double L2 = ms.L * ms.L;
  const double k = ms.k;
  const double s2 = s * s;
  const double c2 = cf * cf;
  const double g = std::sqrt((L2 + 2.0 * s2) / (2.0 * L2 + s2));
  const double ksq2 = k * sqrt2;
  const double u0 = 1.5 * s2 / ((2.0 * L2 + s2) * (g + kInvSqrt2) * ksq2);
  const double width = 3.0 * L2 * c2 / (ms.P * (2.0 * L2 + s2) * ksq2 * (ksq2 + g));
  if (width <= 0.0) return 0.0;

  const double kc2 = 1.5 * L2 / ms.P;  // 1 - k^2
  auto one_minus_kz2 = [&](double w) { return kc2 + k * k * w * (2.0 - w); };
  const double half = 0.5 * width;
  const QuadratureOptions opts{1e-13, 15};

  auto lower = [&](double tau) {
    const double d = u0 * std::expm1(tau);
    const double u = u0 + d;
    const double w = width - d;
    const double z = 1.0 - w;
    return (u + 1.0 / (2.0 * k * (2.0 * k * z + 1.0))) / std::sqrt(w * (1.0 + z) * one_minus_kz2(w));
  };
  auto upper = [&](double t) {
    const double w = t * t;
    const double u = u0 + (width - w);
    const double z = 1.0 - w;
    return 2.0 * (1.0 + 1.0 / (2.0 * k * u * (2.0 * k * z + 1.0))) / std::sqrt((1.0 + z) * one_minus_kz2(w));
  };
  return integrate(lower, 0.0, std::log1p(half / u0), opts) + integrate(upper, 0.0, std::sqrt(half), opts);
}

double psi_negative_branch(double f, const ModulusSet& ms) {
  // f in [guard, pi/2]
  const double prefactor = 3.0 * sqrt2 / (4.0 * std::sqrt(ms.P));
  return -prefactor * z_integral(f, ms);
}

// F in (0, pi/2] with psi(F) = x <= 0, given psi at the guard point.
double invert_negative_branch(double x, const ModulusSet& ms, double psi_guard) {
  if (x == 0.0) return pi / 2;
  if (x <= psi_guard) {
    // Past the guard band F' = sqrt2 sin F up to O(sin^2 F / L^2).
    return 2.0 * std::atan(std::tan(kEndpointGuard / 2) * std::exp(sqrt2 * (x - psi_guard)));
  }
  const Radius L(ms.L);
  const double G = g_of_l(L);
  const double guess = std::clamp(2.0 * std::atan(std::exp(G * x)), kEndpointGuard, pi / 2);
  auto residual = [&](double F) {
    const double fp = first_integral_fprime(F, L);
    return std::make_pair(psi_negative_branch(F, ms) - x, 1.0 / fp);
  };
  std::uintmax_t max_iter = 100;
  const double F = boost::math::tools::newton_raphson_iterate(residual, guess, kEndpointGuard, pi / 2,
                                                              std::numeric_limits<double>::digits - 6,
                                                              max_iter);
  if (max_iter >= 100) throw ConvergenceError("f_of_psi: Newton iteration did not converge");
  return F;
}

void require_finite(double v, const char* who) {
  if (!std::isfinite(v)) throw DomainError(std::string(who) + ": argument must be finite");
}

}  // namespace

Radius::Radius(double L) : L_(L) {
  if (!std::isfinite(L) || !(L > 0.0)) throw DomainError("Radius: L must be finite and > 0");
}

ModulusSet modulus_from_radius(Radius radius) {
  const double L = radius.value();
  ModulusSet ms;
  ms.L = L;
  ms.Q = 1.0 + L * L / 2.0;
  ms.P = 1.0 + 2.0 * L * L;
  ms.k = std::sqrt((2.0 + L * L) / (2.0 + 4.0 * L * L));
  ms.phi_tilde = std::asin(1.0 / std::sqrt(ms.Q));
  return ms;
}

double phi_of_f(double f, const ModulusSet& ms) {
  if (!std::isfinite(f) || !(f > 0.0 && f < pi)) throw DomainError("phi_of_f: f must lie in (0, pi)");
  const double L2 = ms.L * ms.L;
  const double s = std::sin(f);
  const double g = std::sqrt((L2 + 2.0 * s * s) / (2.0 * L2 + s * s));
  return std::asin(std::min(1.0, g / (ms.k * sqrt2)));
}

double psi_of_f_exact(double f, const ModulusSet& ms) {
  if (!std::isfinite(f) || f < kEndpointGuard || f > pi - kEndpointGuard) {
    throw DomainError("psi_of_f_exact: f must lie in [1e-8, pi - 1e-8]");
  }
  if (f == pi / 2) return 0.0;
  const double magnitude = -psi_negative_branch(f, ms);
  return f < pi / 2 ? -magnitude : magnitude;
}

double f_of_psi(double psi, const ModulusSet& ms) {
  require_finite(psi, "f_of_psi");
  const double psi_guard = psi_negative_branch(kEndpointGuard, ms);
  const double x = std::max(-std::abs(psi), -kPsiClamp);
  const double F = invert_negative_branch(x, ms, psi_guard);
  return psi > 0.0 ? pi - F : F;
}

Envelope limiting_profiles(double psi) {
  require_finite(psi, "limiting_profiles");
  const double slow = 2.0 * std::atan(std::exp(psi / sqrt2));
  const double fast = 2.0 * std::atan(std::exp(sqrt2 * psi));
  if (psi >= 0.0) return {slow, fast};
  return {fast, slow};
}

double g_of_l(Radius radius) {
  const double L2 = radius.value() * radius.value();
  return std::sqrt((2.0 + 6.0 * L2) / (4.0 + 3.0 * L2));
}

double approx_profile(double psi, Radius L) {
  require_finite(psi, "approx_profile");
  return 2.0 * std::atan(std::exp(g_of_l(L) * psi));
}

double chi_of_psi(double psi) {
  require_finite(psi, "chi_of_psi");
  return 2.0 * std::atan(std::exp(psi));
}

double psi_of_chi(double chi) {
  if (!std::isfinite(chi) || !(chi > 0.0 && chi < pi)) throw DomainError("psi_of_chi: chi must lie in (0, pi)");
  return std::log(std::tan(chi / 2.0));
}

std::vector<double> uniform_grid(const GridSpec& grid) {
  if (grid.n < 2) throw DomainError("uniform_grid: need at least two points");
  if (!std::isfinite(grid.psi_max) || !(grid.psi_max > 0.0)) {
    throw DomainError("uniform_grid: psi_max must be finite and > 0");
  }
  const auto m = static_cast<double>(grid.n - 1);
  std::vector<double> psi(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    psi[i] = grid.psi_max * (2.0 * static_cast<double>(i) - m) / m;
  }
  return psi;
}

std::vector<double> grid_derivative(std::span<const double> psi, std::span<const double> v) {
  const std::size_t n = psi.size();
  if (v.size() != n) throw DomainError("grid_derivative: size mismatch");
  if (n < 3) throw DomainError("grid_derivative: need at least three points");
  std::vector<double> d(n);

  const double h = (psi[n - 1] - psi[0]) / static_cast<double>(n - 1);
  bool uniform = n >= 5;
  for (std::size_t i = 1; uniform && i < n; ++i) {
    uniform = std::abs((psi[i] - psi[i - 1]) - h) <= 1e-10 * std::abs(h);
  }
  if (uniform) {
    for (std::size_t i = 2; i + 2 < n; ++i) {
      d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    }
    d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
    d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
    d[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / (12.0 * h);
    d[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5]) / (12.0 * h);
    return d;
  }
  // three-point Lagrange on a general grid
  auto lagrange = [&](std::size_t j, std::size_t at) {
    const double x0 = psi[j], x1 = psi[j + 1], x2 = psi[j + 2], x = psi[at];
    return v[j] * ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2)) +
           v[j + 1] * ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2)) +
           v[j + 2] * ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
  };
  d[0] = lagrange(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = lagrange(i - 1, i);
  d[n - 1] = lagrange(n - 3, n - 1);
  return d;
}

SampledProfile::SampledProfile(std::vector<double> psi, std::vector<double> f, Radius L)
    : SampledProfile(psi, f, grid_derivative(psi, f), L) {}

SampledProfile::SampledProfile(std::vector<double> psi, std::vector<double> f, std::vector<double> f_prime,
                               Radius L)
    : psi_(std::move(psi)), f_(std::move(f)), f_prime_(std::move(f_prime)), L_(L) {
  if (psi_.size() < 2) throw DomainError("SampledProfile: need at least two samples");
  if (f_.size() != psi_.size() || f_prime_.size() != psi_.size()) {
    throw DomainError("SampledProfile: psi, f and f' must have equal length");
  }
  for (std::size_t i = 0; i < psi_.size(); ++i) {
    if (!std::isfinite(psi_[i]) || !std::isfinite(f_[i]) || !std::isfinite(f_prime_[i])) {
      throw DomainError("SampledProfile: non-finite sample");
    }
    if (i > 0 && !(psi_[i] > psi_[i - 1])) throw DomainError("SampledProfile: grid must be strictly increasing");
  }
}

bool SampledProfile::is_strictly_increasing() const {
  return std::adjacent_find(f_.begin(), f_.end(), std::greater_equal<>()) == f_.end();
}

SampledProfile sample_exact_profile(Radius L, std::span<const double> psi, double shift) {
  require_finite(shift, "sample_exact_profile");
  const ModulusSet ms = modulus_from_radius(L);
  const double psi_guard = psi_negative_branch(kEndpointGuard, ms);
  std::vector<double> f(psi.size()), fp(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double x = psi[i] - shift;
    const double F = invert_negative_branch(std::max(-std::abs(x), -kPsiClamp), ms, psi_guard);
    f[i] = x > 0.0 ? pi - F : F;
    fp[i] = first_integral_fprime(F, L);
  }
  return SampledProfile({psi.begin(), psi.end()}, std::move(f), std::move(fp), L);
}

SampledProfile sample_exact_profile(Radius L, const GridSpec& grid, double shift) {
  const auto psi = uniform_grid(grid);
  return sample_exact_profile(L, psi, shift);
}

int topological_charge(const SampledProfile& p, double tol) {
  const auto f = p.f();
  auto winding = [&](double v) {
    const double m = std::round(v / pi);
    if (std::abs(v - m * pi) > tol) {
      throw DomainError("topological_charge: endpoint not within tolerance of a multiple of pi");
    }
    return m;
  };
  return static_cast<int>(winding(f.back()) - winding(f.front()));
}

}  // namespace skyrme
