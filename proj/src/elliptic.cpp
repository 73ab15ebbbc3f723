#include "skyrme/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skyrme/errors.hpp"

namespace skyrme {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDuplications = 64;

// Series truncation bound held three orders below the requested tolerance.
double series_tolerance(double tol) {
  if (!(tol > 0.0)) throw DomainError("elliptic: tolerance must be positive");
  return std::max(tol * 1e-3, kEps);
}

void require_nonnegative(double v, const char* who) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(who) + ": arguments must be finite and >= 0");
  }
}

// R_C(1, 1 + e) for e > -1.
double rc_unit(double e) {
  if (e == 0.0) return 1.0;
  if (e > 0.0) {
    const double t = std::sqrt(e);
    return std::atan(t) / t;
  }
  const double t = std::sqrt(-e);
  return std::atanh(t) / t;
}

// Shared tail polynomial of R_D and R_J.
double rd_rj_series(double e2, double e3, double e4, double e5) {
  return 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
         9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
}

}  // namespace

void EllipticArgs::validate() const {
  if (!std::isfinite(phi) || phi < 0.0 || phi > std::numbers::pi / 2) {
    throw DomainError("elliptic: amplitude phi must lie in [0, pi/2]");
  }
  if (!std::isfinite(k) || k * k >= 1.0) throw DomainError("elliptic: modulus must satisfy k^2 < 1");
}

void EllipticArgs::validate_third_kind() const {
  validate();
  const double s = std::sin(phi);
  if (!std::isfinite(nu) || !(1.0 + nu * s * s > 0.0)) {
    throw DomainError("elliptic: characteristic must satisfy 1 + nu sin^2(phi) > 0");
  }
}

double carlson_rc(double x, double y) {
  require_nonnegative(x, "carlson_rc");
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("carlson_rc: y must be finite and > 0");
  if (x == 0.0) return std::numbers::pi / (2.0 * std::sqrt(y));
  return rc_unit(y / x - 1.0) / std::sqrt(x);
}

double carlson_rf(double x, double y, double z, double rel_tol) {
  require_nonnegative(x, "carlson_rf");
  require_nonnegative(y, "carlson_rf");
  require_nonnegative(z, "carlson_rf");
  if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
    throw DomainError("carlson_rf: at most one argument may vanish");
  }

  const double a0 = (x + y + z) / 3.0;
  const double dx = a0 - x, dy = a0 - y;
  const double q = std::pow(3.0 * rel_tol, -1.0 / 6.0) *
                   std::max({std::abs(dx), std::abs(dy), std::abs(a0 - z)});
  double a = a0;
  double scale = 1.0;  // 4^-m
  for (int m = 0; scale * q >= std::abs(a); ++m) {
    if (m == kMaxDuplications) throw ConvergenceError("carlson_rf: duplication did not converge");
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  const double X = dx * scale / a;
  const double Y = dy * scale / a;
  const double Z = -X - Y;
  const double e2 = X * Y - Z * Z;
  const double e3 = X * Y * Z;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

double carlson_rd(double x, double y, double z, double rel_tol) {
  require_nonnegative(x, "carlson_rd");
  require_nonnegative(y, "carlson_rd");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("carlson_rd: z must be finite and > 0");
  if (x == 0.0 && y == 0.0) throw DomainError("carlson_rd: x and y may not both vanish");

  const double a0 = (x + y + 3.0 * z) / 5.0;
  const double dx = a0 - x, dy = a0 - y;
  const double q = std::pow(0.25 * rel_tol, -1.0 / 6.0) *
                   std::max({std::abs(dx), std::abs(dy), std::abs(a0 - z)});
  double a = a0;
  double scale = 1.0;
  double sum = 0.0;
  for (int m = 0; scale * q >= std::abs(a); ++m) {
    if (m == kMaxDuplications) throw ConvergenceError("carlson_rd: duplication did not converge");
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sx * sz + sy * sz;
    sum += scale / (sz * (z + lambda));
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
  }
  const double X = dx * scale / a;
  const double Y = dy * scale / a;
  const double Z = -(X + Y) / 3.0;
  const double xy = X * Y, z2 = Z * Z;
  const double e2 = xy - 6.0 * z2;
  const double e3 = (3.0 * xy - 8.0 * z2) * Z;
  const double e4 = 3.0 * (xy - z2) * z2;
  const double e5 = xy * z2 * Z;
  return scale / (a * std::sqrt(a)) * rd_rj_series(e2, e3, e4, e5) + 3.0 * sum;
}

double carlson_rj(double x, double y, double z, double p, double rel_tol) {
  require_nonnegative(x, "carlson_rj");
  require_nonnegative(y, "carlson_rj");
  require_nonnegative(z, "carlson_rj");
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("carlson_rj: p must be finite and > 0");
  if ((x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
    throw DomainError("carlson_rj: at most one of x, y, z may vanish");
  }

  const double a0 = (x + y + z + 2.0 * p) / 5.0;
  const double dx = a0 - x, dy = a0 - y, dz = a0 - z;
  const double delta = (p - x) * (p - y) * (p - z);
  const double q = std::pow(0.25 * rel_tol, -1.0 / 6.0) *
                   std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(a0 - p)});
  double a = a0;
  double scale = 1.0;
  double cube_scale = 1.0;  // 4^-3m
  double sum = 0.0;
  for (int m = 0; scale * q >= std::abs(a); ++m) {
    if (m == kMaxDuplications) throw ConvergenceError("carlson_rj: duplication did not converge");
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
    const double lambda = sx * sy + sx * sz + sy * sz;
    const double d = (sp + sx) * (sp + sy) * (sp + sz);
    const double e = cube_scale * delta / (d * d);
    sum += scale * rc_unit(e) / d;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    a = 0.25 * (a + lambda);
    scale *= 0.25;
    cube_scale *= 1.0 / 64.0;
  }
  const double X = dx * scale / a;
  const double Y = dy * scale / a;
  const double Z = dz * scale / a;
  const double P = -(X + Y + Z) / 2.0;
  const double xyz = X * Y * Z;
  const double p2 = P * P;
  const double e2 = X * Y + X * Z + Y * Z - 3.0 * p2;
  const double e3 = xyz + 2.0 * e2 * P + 4.0 * p2 * P;
  const double e4 = (2.0 * xyz + e2 * P + 3.0 * p2 * P) * P;
  const double e5 = xyz * p2;
  return scale / (a * std::sqrt(a)) * rd_rj_series(e2, e3, e4, e5) + 6.0 * sum;
}

double ellip_f(double phi, double k, double tol) {
  EllipticArgs{phi, k}.validate();
  if (phi == 0.0) return 0.0;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  return s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0, series_tolerance(tol));
}

double ellip_e(double phi, double k, double tol) {
  EllipticArgs{phi, k}.validate();
  if (phi == 0.0) return 0.0;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double r = series_tolerance(tol);
  const double c2 = c * c, d2 = 1.0 - k * k * s * s;
  double value = s * carlson_rf(c2, d2, 1.0, r);
  if (k != 0.0) value -= k * k * s * s * s / 3.0 * carlson_rd(c2, d2, 1.0, r);
  return value;
}

double ellip_pi(double phi, double nu, double k, double tol) {
  EllipticArgs{phi, k, nu}.validate_third_kind();
  if (phi == 0.0) return 0.0;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double r = series_tolerance(tol);
  const double c2 = c * c, d2 = 1.0 - k * k * s * s;
  double value = s * carlson_rf(c2, d2, 1.0, r);
  if (nu != 0.0) value -= nu * s * s * s / 3.0 * carlson_rj(c2, d2, 1.0, 1.0 + nu * s * s, r);
  return value;
}

double ellip_f_dk(double phi, double k) {
  EllipticArgs{phi, k}.validate();
  if (k == 0.0) throw DomainError("ellip_f_dk: k must be nonzero");
  const double s = std::sin(phi), c = std::cos(phi);
  const double kc2 = 1.0 - k * k;
  const double delta = std::sqrt(1.0 - k * k * s * s);
  return ellip_e(phi, k) / (k * kc2) - ellip_f(phi, k) / k - k * s * c / (kc2 * delta);
}

double ellip_e_dk(double phi, double k) {
  EllipticArgs{phi, k}.validate();
  if (k == 0.0) throw DomainError("ellip_e_dk: k must be nonzero");
  return (ellip_e(phi, k) - ellip_f(phi, k)) / k;
}

double oracle_quadrature(const std::function<double(double)>& integrand, double a, double b, double tol) {
  if (!(tol > 0.0)) throw DomainError("oracle_quadrature: tolerance must be positive");
  return integrate([&](double x) { return integrand(x); }, a, b, QuadratureOptions{tol, 15});
}

}  // namespace skyrme
