#include "skyrme/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <lapacke.h>

#include "skyrme/errors.hpp"
#include "skyrme/ode_dynamics.hpp"

namespace skyrme {
namespace {

using std::numbers::pi;

// Trapezoid weights of the grid (lumped mass without w).
std::vector<double> cell_widths(std::span<const double> grid) {
  const std::size_t n = grid.size();
  std::vector<double> omega(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = grid[i + 1] - grid[i];
    omega[i] += 0.5 * h;
    omega[i + 1] += 0.5 * h;
  }
  return omega;
}

// Stiffness of the discrete quadratic form on interior nodes 1..n-2:
// diagonal and first super-diagonal (entry i couples nodes i+1 and i+2).
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> mass;
};

Tridiagonal assemble(const HessianCoeffs& co) {
  const std::size_t n = co.grid.size();
  if (n < 3) throw DomainError("solve_spectrum: need at least one interior node");
  const auto omega = cell_widths(co.grid);
  const std::size_t m = n - 2;
  Tridiagonal t{std::vector<double>(m), std::vector<double>(m > 0 ? m - 1 : 0), std::vector<double>(m)};
  auto a_half = [&](std::size_t i) { return 0.5 * (co.a[i] + co.a[i + 1]); };  // between i and i+1
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = j + 1;
    const double hl = co.grid[i] - co.grid[i - 1];
    const double hr = co.grid[i + 1] - co.grid[i];
    const double potential = co.c[i] - co.b_prime[i];
    t.diag[j] = 4.0 * pi * (a_half(i - 1) / hl + a_half(i) / hr + potential * omega[i]);
    if (j + 1 < m) t.upper[j] = -4.0 * pi * a_half(i) / hr;
    t.mass[j] = co.weight[i] * omega[i];
  }
  return t;
}

void require_grid_function(const HessianCoeffs& co, std::span<const double> h, const char* who) {
  if (h.size() != co.grid.size()) throw DomainError(std::string(who) + ": grid function has wrong length");
}

}  // namespace

HessianCoeffs hessian_coefficients(const SampledProfile& p, Radius radius, double c_budget) {
  const double L = radius.value();
  const auto psi = p.psi();
  const auto f = p.f();
  const auto fp = p.f_prime();
  HessianCoeffs co;
  co.L = L;
  co.grid.assign(psi.begin(), psi.end());
  const std::size_t n = p.size();
  co.a.resize(n);
  co.b.resize(n);
  co.c.resize(n);
  co.b_prime.resize(n);
  co.weight.assign(n, 8.0 * pi * L * L * L);
  for (std::size_t i = 0; i < n; ++i) {
    const ShootState st{psi[i], f[i], fp[i]};
    if (std::abs(conserved_c(st, radius)) > c_budget) {
      throw DomainError("hessian_coefficients: profile is not a finite-energy solution at psi = " +
                        std::to_string(psi[i]));
    }
    const double s = std::sin(f[i]);
    const double s2 = s * s;
    const double sin2f = std::sin(2.0 * f[i]);
    const double cos2f = std::cos(2.0 * f[i]);
    const double fp2 = fp[i] * fp[i];
    const double fpp = rhs_second_order(st, radius);
    co.a[i] = 2.0 * L + 4.0 / L * s2;
    co.b[i] = 4.0 / L * sin2f * fp[i];
    co.c[i] = 4.0 * L * cos2f + 2.0 / L * (2.0 * cos2f * s2 + sin2f * sin2f + 2.0 * cos2f * fp2);
    co.b_prime[i] = 4.0 / L * (2.0 * cos2f * fp2 + sin2f * fpp);
  }
  return co;
}

double hessian_quadratic_form(const HessianCoeffs& co, std::span<const double> h) {
  require_grid_function(co, h, "hessian_quadratic_form");
  const auto hp = grid_derivative(co.grid, h);
  return hessian_quadratic_form(co, h, hp);
}

double hessian_quadratic_form(const HessianCoeffs& co, std::span<const double> h, std::span<const double> hp) {
  require_grid_function(co, h, "hessian_quadratic_form");
  require_grid_function(co, hp, "hessian_quadratic_form");
  const double scale = std::max(1.0, std::abs(*std::max_element(h.begin(), h.end(), [](double x, double y) {
                                  return std::abs(x) < std::abs(y);
                                })));
  if (std::abs(h.front()) > 1e-8 * scale || std::abs(h.back()) > 1e-8 * scale) {
    throw DomainError("hessian_quadratic_form: perturbation must vanish at the grid ends");
  }
  const auto omega = cell_widths(co.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    sum += omega[i] * (0.5 * co.a[i] * hp[i] * hp[i] + co.b[i] * h[i] * hp[i] + 0.5 * co.c[i] * h[i] * h[i]);
  }
  return 4.0 * pi * sum;
}

Spectrum solve_spectrum(const HessianCoeffs& co, std::size_t n_modes) {
  if (n_modes == 0) throw DomainError("solve_spectrum: n_modes must be >= 1");
  const Tridiagonal t = assemble(co);
  const std::size_t m = t.diag.size();
  if (n_modes > m) throw DomainError("solve_spectrum: more modes requested than interior nodes");

  // Symmetric standard form M^{-1/2} K M^{-1/2}.
  std::vector<double> d(m), e(std::max<std::size_t>(m, 1), 0.0);
  std::vector<double> inv_sqrt_mass(m);
  for (std::size_t j = 0; j < m; ++j) inv_sqrt_mass[j] = 1.0 / std::sqrt(t.mass[j]);
  for (std::size_t j = 0; j < m; ++j) d[j] = t.diag[j] * inv_sqrt_mass[j] * inv_sqrt_mass[j];
  for (std::size_t j = 0; j + 1 < m; ++j) e[j] = t.upper[j] * inv_sqrt_mass[j] * inv_sqrt_mass[j + 1];

  const auto mm = static_cast<lapack_int>(m);
  const auto k = static_cast<lapack_int>(n_modes);
  lapack_int found = 0;
  std::vector<double> values(m);
  std::vector<double> vectors(m * n_modes);
  std::vector<lapack_int> support(2 * n_modes);
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', mm, d.data(), e.data(), 0.0, 0.0, 1, k, 0.0,
                                         &found, values.data(), vectors.data(), mm, support.data());
  if (info != 0 || found != k) {
    throw ConvergenceError("solve_spectrum: LAPACK dstevr failed (info = " + std::to_string(info) + ")");
  }

  Spectrum out;
  out.eigenvalues.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n_modes));
  for (std::size_t col = 0; col < n_modes; ++col) {
    std::vector<double> h(co.grid.size(), 0.0);
    double largest = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      h[j + 1] = vectors[col * m + j] * inv_sqrt_mass[j];
      if (std::abs(h[j + 1]) > std::abs(largest)) largest = h[j + 1];
    }
    if (largest < 0.0) {
      for (double& v : h) v = -v;
    }
    out.eigenfunctions.push_back(std::move(h));
  }
  return out;
}

std::vector<double> apply_operator(const HessianCoeffs& co, std::span<const double> h) {
  require_grid_function(co, h, "apply_operator");
  const Tridiagonal t = assemble(co);
  const std::size_t m = t.diag.size();
  std::vector<double> out(co.grid.size(), 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double v = t.diag[j] * h[j + 1];
    if (j > 0) v += t.upper[j - 1] * h[j];
    if (j + 1 < m) v += t.upper[j] * h[j + 2];
    out[j + 1] = v / t.mass[j];
  }
  return out;
}

double weighted_dot(const HessianCoeffs& co, std::span<const double> u, std::span<const double> v) {
  require_grid_function(co, u, "weighted_dot");
  require_grid_function(co, v, "weighted_dot");
  const auto omega = cell_widths(co.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += co.weight[i] * omega[i] * u[i] * v[i];
  return sum;
}

double weighted_overlap(const HessianCoeffs& co, std::span<const double> u, std::span<const double> v) {
  const double uv = weighted_dot(co, u, v);
  const double uu = weighted_dot(co, u, u);
  const double vv = weighted_dot(co, v, v);
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::abs(uv) / std::sqrt(uu * vv);
}

std::size_t count_nodes(std::span<const double> v, double floor) {
  double largest = 0.0;
  for (double x : v) largest = std::max(largest, std::abs(x));
  const double cut = floor * largest;
  std::size_t nodes = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::abs(x) <= cut) continue;
    const int sign = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

StabilityReport analyze_stability(Radius L, const GridSpec& grid, std::size_t n_modes, double convergence_tol) {
  if (n_modes < 2) throw DomainError("analyze_stability: need at least two modes");
  const GridSpec doubled{grid.psi_max, 2 * (grid.n - 1) + 1};

  const auto profile = sample_exact_profile(L, grid);
  const auto coeffs = hessian_coefficients(profile, L);
  const auto spectrum = solve_spectrum(coeffs, n_modes);

  const auto fine_profile = sample_exact_profile(L, doubled);
  const auto fine = solve_spectrum(hessian_coefficients(fine_profile, L), n_modes);

  StabilityReport r;
  r.L = L.value();
  r.psi_max = grid.psi_max;
  r.n_grid = grid.n;
  r.eigenvalues = spectrum.eigenvalues;
  r.lambda0_refined = fine.eigenvalues[0];
  r.doubling_shift = std::abs(fine.eigenvalues[1] - spectrum.eigenvalues[1]) / std::abs(fine.eigenvalues[1]);
  r.ground_state_nodes = count_nodes(spectrum.eigenfunctions[0]);

  std::vector<double> fprime(profile.f_prime().begin(), profile.f_prime().end());
  fprime.front() = 0.0;
  fprime.back() = 0.0;
  r.overlap_with_fprime = weighted_overlap(coeffs, spectrum.eigenfunctions[0], fprime);

  if (r.doubling_shift > convergence_tol) {
    throw ConvergenceError("analyze_stability: lambda_1 moved by " + std::to_string(r.doubling_shift) +
                           " under grid doubling");
  }
  return r;
}

}  // namespace skyrme
