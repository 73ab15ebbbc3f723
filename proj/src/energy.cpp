#include "skyrme/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "skyrme/elliptic.hpp"
#include "skyrme/errors.hpp"
#include "skyrme/quadrature.hpp"

namespace skyrme {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

struct Densities {
  std::vector<double> sigma;
  std::vector<double> skyrme;
};

Densities densities(const SampledProfile& p, Radius radius) {
  const double L = radius.value();
  const auto f = p.f();
  const auto fp = p.f_prime();
  Densities d{std::vector<double>(p.size()), std::vector<double>(p.size())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = std::sin(f[i]);
    const double s2 = s * s, fp2 = fp[i] * fp[i];
    d.sigma[i] = L * (2.0 * s2 + fp2);
    d.skyrme[i] = s2 * (s2 + 2.0 * fp2) / L;
  }
  return d;
}

// Exponential extrapolation of a density past one end of the grid:
// int_0^inf e_end exp(-rate t) dt with rate fitted to the last two samples.
double tail_estimate(double e_end, double e_inner, double h) {
  if (e_end == 0.0) return 0.0;
  if (e_inner > e_end && e_end > 0.0) return e_end * h / std::log(e_inner / e_end);
  return std::numeric_limits<double>::infinity();
}

struct Integrated {
  double value;
  double tail;
};

Integrated integrate_density(std::span<const double> psi, std::span<const double> e) {
  const std::size_t n = psi.size();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) sum += 0.5 * (psi[i + 1] - psi[i]) * (e[i] + e[i + 1]);
  const double peak = *std::max_element(e.begin(), e.end());
  double tail = 0.0;
  for (auto [end, inner] : {std::pair{std::size_t{0}, std::size_t{1}}, std::pair{n - 1, n - 2}}) {
    double t = tail_estimate(e[end], e[inner], std::abs(psi[inner] - psi[end]));
    // Non-decaying densities at round-off level are treated as converged.
    if (std::isinf(t) && std::abs(e[end]) <= 64.0 * std::numeric_limits<double>::epsilon() * peak) t = 0.0;
    tail += t;
  }
  return {sum + tail, tail};
}

void check_tail(double tail, double total, double tol, const char* who) {
  if (!std::isfinite(tail) || tail > tol * std::abs(total)) {
    throw DomainError(std::string(who) + ": energy density does not decay within the grid (tail estimate " +
                      std::to_string(tail) + ")");
  }
}

// sqrt P (P + Q) E - sqrt P (P - Q) F + sqrt((P - 1)(Q - 1)), and its L-derivative.
struct Bracketed {
  double value;
  double derivative;
};

Bracketed closed_form_bracket(Radius radius, bool with_derivative) {
  const ModulusSet ms = modulus_from_radius(radius);
  const double L = ms.L;
  const double sp = std::sqrt(ms.P);
  const double e = ellip_e(ms.phi_tilde, ms.k);
  const double f = ellip_f(ms.phi_tilde, ms.k);
  Bracketed out{sp * (ms.P + ms.Q) * e - sp * (ms.P - ms.Q) * f + L * L, 0.0};
  if (!with_derivative) return out;

  const double dk = -3.0 * L / (2.0 * ms.k * ms.P * ms.P);
  const double dphi = -1.0 / (sqrt2 * ms.Q);
  const double delta = std::sqrt(1.0 - 1.0 / ms.P);  // sqrt(1 - k^2 sin^2 phi_tilde)
  const double de = delta * dphi + ellip_e_dk(ms.phi_tilde, ms.k) * dk;
  const double df = dphi / delta + ellip_f_dk(ms.phi_tilde, ms.k) * dk;
  const double dsp = 2.0 * L / sp;
  out.derivative = dsp * (ms.P + ms.Q) * e + sp * 5.0 * L * e + sp * (ms.P + ms.Q) * de -
                   (dsp * (ms.P - ms.Q) * f + sp * 3.0 * L * f + sp * (ms.P - ms.Q) * df) + 2.0 * L;
  return out;
}

constexpr double kClosedFormScale = 16.0 * pi * sqrt2 / 3.0;

}  // namespace

EnergyBreakdown energy_quadrature(const SampledProfile& p, Radius L, const QuadratureEnergyOptions& opts) {
  const Densities d = densities(p, L);
  const auto sigma = integrate_density(p.psi(), d.sigma);
  const auto skyrme = integrate_density(p.psi(), d.skyrme);
  EnergyBreakdown out;
  out.sigma_term = 4.0 * pi * sigma.value;
  out.skyrme_term = 4.0 * pi * skyrme.value;
  out.total = out.sigma_term + out.skyrme_term;
  out.total_bogomolny_units = out.total / kBogomolnyUnit;
  check_tail(4.0 * pi * (sigma.tail + skyrme.tail), out.total, opts.tail_tol, "energy_quadrature");
  return out;
}

double sigma_energy(const SampledProfile& p, Radius L, const QuadratureEnergyOptions& opts) {
  const Densities d = densities(p, L);
  const auto sigma = integrate_density(p.psi(), d.sigma);
  const double value = 4.0 * pi * sigma.value;
  check_tail(4.0 * pi * sigma.tail, value, opts.tail_tol, "sigma_energy");
  return value;
}

double energy_closed_form(Radius L) {
  return kClosedFormScale / L.value() * closed_form_bracket(L, false).value;
}

double energy_closed_form_derivative(Radius L) {
  const auto b = closed_form_bracket(L, true);
  const double l = L.value();
  return kClosedFormScale * (b.derivative / l - b.value / (l * l));
}

EnergyBreakdown energy_breakdown_exact(Radius radius) {
  const double L = radius.value();
  const double L2 = L * L;
  // With F' = sin F sqrt(r), r = (2L^2 + sin^2 F)/(L^2 + 2 sin^2 F), and both
  // half-lines contributing equally.
  auto ratio = [&](double s) { return (2.0 * L2 + s * s) / (L2 + 2.0 * s * s); };
  const QuadratureOptions q{1e-14, 15};
  const double sigma = integrate(
      [&](double F) {
        const double s = std::sin(F), r = ratio(s);
        return s * (2.0 + r) / std::sqrt(r);
      },
      0.0, pi / 2, q);
  const double skyrme = integrate(
      [&](double F) {
        const double s = std::sin(F), r = ratio(s);
        return s * s * s * (1.0 + 2.0 * r) / std::sqrt(r);
      },
      0.0, pi / 2, q);
  EnergyBreakdown out;
  out.sigma_term = 8.0 * pi * L * sigma;
  out.skyrme_term = 8.0 * pi / L * skyrme;
  out.total = out.sigma_term + out.skyrme_term;
  out.total_bogomolny_units = out.total / kBogomolnyUnit;
  return out;
}

double energy_approx(Radius radius) {
  const double L2 = radius.value() * radius.value();
  return kClosedFormScale / radius.value() * std::sqrt((4.0 + 3.0 * L2) * (1.0 + 3.0 * L2));
}

double energy_approx_derivative(Radius radius) {
  const double L2 = radius.value() * radius.value();
  const double R = (4.0 + 3.0 * L2) * (1.0 + 3.0 * L2);
  return kClosedFormScale * (9.0 * L2 * L2 - 4.0) / (L2 * std::sqrt(R));
}

double bogomolny_bound(int q) { return kBogomolnyUnit * std::abs(static_cast<double>(q)); }

MinimizeResult minimize_energy(EnergyKind kind, double L_lo, double L_hi, double tol) {
  if (!(std::isfinite(L_lo) && std::isfinite(L_hi) && L_lo > 0.0 && L_lo < L_hi)) {
    throw DomainError("minimize_energy: bracket must satisfy 0 < lo < hi");
  }
  if (!(tol > 0.0)) throw DomainError("minimize_energy: tolerance must be positive");

  std::function<double(double)> energy, slope;
  if (kind == EnergyKind::exact) {
    energy = [](double L) { return energy_closed_form(Radius(L)); };
    slope = [](double L) { return energy_closed_form_derivative(Radius(L)); };
  } else {
    energy = [](double L) { return energy_approx(Radius(L)); };
    slope = [](double L) { return energy_approx_derivative(Radius(L)); };
  }

  constexpr int kDigits = std::numeric_limits<double>::digits;
  std::uintmax_t brent_iter = 200;
  const auto [L_brent, E_brent] = boost::math::tools::brent_find_minima(energy, L_lo, L_hi, kDigits / 2, brent_iter);
  const double width = L_hi - L_lo;
  if (!(E_brent < energy(L_lo) && E_brent < energy(L_hi)) || L_brent - L_lo < 1e-6 * width ||
      L_hi - L_brent < 1e-6 * width) {
    throw BracketError("minimize_energy: no interior minimum in [" + std::to_string(L_lo) + ", " +
                       std::to_string(L_hi) + "]");
  }

  // Derivative-free search stalls near sqrt(eps) in L; finish on dE/dL = 0.
  double step = 1e-6 * L_brent;
  double a = L_brent - step, b = L_brent + step;
  double sa = slope(a), sb = slope(b);
  while (sa > 0.0 || sb < 0.0) {
    step *= 4.0;
    a = std::max(L_lo, L_brent - step);
    b = std::min(L_hi, L_brent + step);
    sa = slope(a);
    sb = slope(b);
    if ((a == L_lo && sa > 0.0) || (b == L_hi && sb < 0.0)) {
      throw BracketError("minimize_energy: dE/dL has no sign change around the Brent minimum");
    }
  }
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(tol))) + 2, 1, kDigits - 2);
  std::uintmax_t root_iter = 100;
  const auto [r_lo, r_hi] = boost::math::tools::toms748_solve(slope, a, b, sa, sb,
                                                              boost::math::tools::eps_tolerance<double>(bits),
                                                              root_iter);
  MinimizeResult out;
  out.L_min = 0.5 * (r_lo + r_hi);
  out.E_min = energy(out.L_min);
  out.iterations = brent_iter + root_iter;
  return out;
}

double first_order_minimum_radius() {
  const double k = 2.0 / std::sqrt(7.0);
  const double e = ellip_e(pi / 3, k);
  const double f = ellip_f(pi / 3, k);
  return (9.0 * std::sqrt(42.0) * (11.0 * e - 3.0 * f) + 30.0 * sqrt2) /
         (std::sqrt(7.0) * (409.0 * e - 141.0 * f) - 26.0 * std::sqrt(3.0));
}

std::vector<double> radius_grid(double lo, double hi, std::size_t n, Spacing spacing) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo <= hi)) {
    throw DomainError("radius_grid: need 0 < lo <= hi");
  }
  if (n == 0) throw DomainError("radius_grid: need at least one point");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const auto m = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / m;
    out[i] = spacing == Spacing::linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
  }
  out.back() = hi;
  return out;
}

std::vector<ScanRow> scan_energy(double lo, double hi, std::size_t n, Spacing spacing) {
  std::vector<ScanRow> rows;
  for (double L : radius_grid(lo, hi, n, spacing)) {
    const Radius r(L);
    ScanRow row;
    row.L = L;
    row.exact = energy_breakdown_exact(r);
    row.exact.total = energy_closed_form(r);
    row.exact.total_bogomolny_units = row.exact.total / kBogomolnyUnit;
    row.approx = energy_approx(r);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace skyrme
