#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skyrme/errors.hpp"
#include "skyrme/profile.hpp"

using namespace skyrme;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

constexpr double kLm = 0.8150941506;

double random_radius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.05), std::log(20.0));
  return std::exp(u(rng));
}

}  // namespace

TEST_CASE("radius validation") {
  CHECK_THROWS_AS(Radius(0.0), DomainError);
  CHECK_THROWS_AS(Radius(-1.0), DomainError);
  CHECK_THROWS_AS(Radius(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(Radius(std::nan("")), DomainError);
  CHECK(Radius(2.5).value() == 2.5);
}

TEST_CASE("modulus set") {
  SUBCASE("L = 1") {
    const auto ms = modulus_from_radius(Radius(1.0));
    CHECK(std::abs(ms.k - 1.0 / sqrt2) <= 2e-16);
    CHECK(ms.Q == 1.5);
    CHECK(ms.P == 3.0);
  }
  SUBCASE("L = sqrt(2/3)") {
    const auto ms = modulus_from_radius(Radius(std::sqrt(2.0 / 3.0)));
    CHECK(std::abs(ms.k - 2.0 / std::sqrt(7.0)) <= 1e-15);
    CHECK(std::abs(ms.Q - 4.0 / 3.0) <= 1e-15);
    CHECK(std::abs(ms.P - 7.0 / 3.0) <= 1e-15);
    CHECK(std::abs(ms.phi_tilde - pi / 3) <= 1e-15);
  }
  SUBCASE("limits") {
    CHECK(modulus_from_radius(Radius(1e-6)).k < 1.0);
    CHECK(modulus_from_radius(Radius(1e-6)).k > 1.0 - 1e-11);
    CHECK(std::abs(modulus_from_radius(Radius(1e6)).k - 0.5) <= 1e-12);
  }
  SUBCASE("invariants") {
    std::mt19937_64 rng(201);
    for (int i = 0; i < 100; ++i) {
      const auto ms = modulus_from_radius(Radius(random_radius(rng)));
      CHECK(ms.k > 0.5);
      CHECK(ms.k < 1.0);
      CHECK(std::abs(ms.k * ms.k - ms.Q / ms.P) <= 1e-15);
      CHECK(std::abs(std::sin(ms.phi_tilde) * std::sqrt(ms.Q) - 1.0) <= 1e-15);
    }
  }
}

TEST_CASE("phi_of_f") {
  const auto ms1 = modulus_from_radius(Radius(1.0));
  CHECK(std::abs(phi_of_f(pi / 2, ms1) - pi / 2) <= 1e-7);
  CHECK(std::abs(std::sin(phi_of_f(pi / 4, ms1)) - std::sqrt(0.8)) <= 1e-15);
  CHECK(std::abs(phi_of_f(pi / 4, ms1) - 1.1071487177940904) <= 1e-14);
  CHECK(std::abs(std::sin(phi_of_f(1e-9, ms1)) - 1.0 / (2.0 * ms1.k)) <= 1e-12);
  CHECK_THROWS_AS(phi_of_f(0.0, ms1), DomainError);
  CHECK_THROWS_AS(phi_of_f(pi, ms1), DomainError);

  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> f(1e-6, pi - 1e-6);
  for (int i = 0; i < 200; ++i) {
    const auto ms = modulus_from_radius(Radius(random_radius(rng)));
    const double s = std::sin(phi_of_f(f(rng), ms));
    CHECK(s >= 1.0 / (2.0 * ms.k) - 1e-15);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("psi_of_f_exact") {
  const auto msm = modulus_from_radius(Radius(kLm));
  SUBCASE("frozen values") {
    CHECK(psi_of_f_exact(pi / 2, msm) == 0.0);
    CHECK(std::abs(psi_of_f_exact(3 * pi / 4, msm) - 0.90663567027360233456) <= 1e-13);
    CHECK(std::abs(psi_of_f_exact(pi / 4, msm) + 0.90663567027360233456) <= 1e-13);
  }
  SUBCASE("agrees with the direct integral over the shape function") {
    std::mt19937_64 rng(203);
    std::uniform_real_distribution<double> f(1e-7, pi - 1e-7);
    for (int i = 0; i < 100; ++i) {
      const double L = random_radius(rng), x = f(rng);
      CAPTURE(L);
      CAPTURE(x);
      const double ref = oracle::psi_of_f(x, L);
      CHECK(std::abs(psi_of_f_exact(x, modulus_from_radius(Radius(L))) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
  SUBCASE("odd under f -> pi - f and increasing") {
    std::mt19937_64 rng(204);
    std::uniform_real_distribution<double> f(1e-6, pi / 2);
    for (int i = 0; i < 100; ++i) {
      const auto ms = modulus_from_radius(Radius(random_radius(rng)));
      const double x = f(rng);
      CHECK(std::abs(psi_of_f_exact(x, ms) + psi_of_f_exact(pi - x, ms)) <= 1e-12 * std::abs(psi_of_f_exact(x, ms)) + 1e-15);
      CHECK(psi_of_f_exact(x, ms) < psi_of_f_exact(x + 1e-4, ms));
    }
  }
  SUBCASE("guard band") {
    CHECK_THROWS_AS(psi_of_f_exact(0.0, msm), DomainError);
    CHECK_THROWS_AS(psi_of_f_exact(pi, msm), DomainError);
    CHECK_THROWS_AS(psi_of_f_exact(5e-9, msm), DomainError);
    CHECK_THROWS_AS(psi_of_f_exact(pi - 5e-9, msm), DomainError);
    CHECK(std::isfinite(psi_of_f_exact(kEndpointGuard, msm)));
  }
}

TEST_CASE("f_of_psi") {
  const auto ms1 = modulus_from_radius(Radius(1.0));
  CHECK(f_of_psi(0.0, ms1) == pi / 2);
  CHECK(std::abs(f_of_psi(1.0, ms1) - 2.471409795038646087133) <= 1e-13);
  const double f10 = f_of_psi(10.0, ms1);
  CHECK(f10 > 2.0 * std::atan(std::exp(10.0 / sqrt2)));
  CHECK(f10 < 2.0 * std::atan(std::exp(10.0 * sqrt2)));
  CHECK(std::isfinite(f_of_psi(1e6, ms1)));
  CHECK(f_of_psi(-1e6, ms1) >= 0.0);
  CHECK_THROWS_AS(f_of_psi(std::nan(""), ms1), DomainError);

  SUBCASE("round trip") {
    std::mt19937_64 rng(205);
    std::uniform_real_distribution<double> f(1e-6, pi - 1e-6);
    for (int i = 0; i < 200; ++i) {
      const auto ms = modulus_from_radius(Radius(random_radius(rng)));
      const double x = f(rng);
      CHECK(std::abs(f_of_psi(psi_of_f_exact(x, ms), ms) - x) <= 1e-10);
    }
  }
  SUBCASE("tail continues smoothly past the guard point") {
    const auto ms = modulus_from_radius(Radius(kLm));
    const double psi_guard = psi_of_f_exact(kEndpointGuard, ms);
    const double inside = f_of_psi(psi_guard + 1e-6, ms), outside = f_of_psi(psi_guard - 1e-6, ms);
    CHECK(outside < inside);
    CHECK(std::abs(inside - outside) <= 1e-13);
  }
}

TEST_CASE("limiting profiles") {
  const auto e0 = limiting_profiles(0.0);
  CHECK(e0.lower == pi / 2);
  CHECK(e0.upper == pi / 2);
  const auto e1 = limiting_profiles(1.0);
  CHECK(std::abs(e1.lower - 2.0 * std::atan(std::exp(1.0 / sqrt2))) <= 1e-15);
  CHECK(std::abs(e1.upper - 2.0 * std::atan(std::exp(sqrt2))) <= 1e-15);
  CHECK(std::abs(e1.lower - 2.2254) <= 1e-4);
  CHECK(std::abs(e1.upper - 2.6646) <= 1e-4);
  const auto far = limiting_profiles(60.0);
  CHECK(std::abs(far.lower - pi) <= 1e-12);
  CHECK(std::abs(far.upper - pi) <= 1e-12);

  SUBCASE("exact profile lies strictly between, and interpolates in L") {
    std::mt19937_64 rng(206);
    std::uniform_real_distribution<double> psi(-10.0, 10.0);
    for (int i = 0; i < 50; ++i) {
      const double L1 = random_radius(rng), L2 = random_radius(rng);
      const auto ms1 = modulus_from_radius(Radius(std::min(L1, L2)));
      const auto ms2 = modulus_from_radius(Radius(std::max(L1, L2) * 1.01));
      for (int j = 0; j < 20; ++j) {
        const double x = psi(rng);
        const auto env = limiting_profiles(x);
        const double a = f_of_psi(x, ms1), b = f_of_psi(x, ms2);
        CHECK(env.lower < a);
        CHECK(a < env.upper);
        if (x > 0.0) CHECK(a < b);
        if (x < 0.0) CHECK(a > b);
      }
    }
  }
  SUBCASE("uniform limits") {
    // Small L approaches 2 arctan e^{psi/sqrt2}, large L 2 arctan e^{sqrt2 psi}.
    auto gap = [](double L, double slope) {
      const auto ms = modulus_from_radius(Radius(L));
      double worst = 0.0;
      for (double x = -15.0; x <= 15.0; x += 0.1) {
        worst = std::max(worst, std::abs(f_of_psi(x, ms) - 2.0 * std::atan(std::exp(slope * x))));
      }
      return worst;
    };
    // The gaps close like L and 1/L^2 respectively.
    const double s1 = gap(0.1, 1.0 / sqrt2), s2 = gap(0.01, 1.0 / sqrt2), s3 = gap(0.001, 1.0 / sqrt2);
    CHECK(s2 / s1 == doctest::Approx(0.1).epsilon(0.05));
    CHECK(s3 / s2 == doctest::Approx(0.1).epsilon(0.05));
    CHECK(s3 < 1e-3);
    const double b1 = gap(10.0, sqrt2), b2 = gap(100.0, sqrt2);
    CHECK(b2 / b1 == doctest::Approx(0.01).epsilon(0.05));
    CHECK(b2 < 1e-4);
  }
}

TEST_CASE("test profile slope") {
  CHECK(std::abs(g_of_l(Radius(std::sqrt(2.0 / 3.0))) - 1.0) <= 1e-15);
  CHECK(std::abs(g_of_l(Radius(1.0)) - std::sqrt(8.0 / 7.0)) <= 1e-15);
  CHECK(std::abs(g_of_l(Radius(1e8)) - sqrt2) <= 1e-12);
  CHECK(std::abs(g_of_l(Radius(1e-8)) - 1.0 / sqrt2) <= 1e-12);
  double prev = 0.0;
  for (double L = 0.01; L < 100.0; L *= 1.1) {
    const double g = g_of_l(Radius(L));
    CHECK(g > prev);
    prev = g;
  }
  CHECK(std::abs(approx_profile(0.7, Radius(1.0)) - 2.0 * std::atan(std::exp(std::sqrt(8.0 / 7.0) * 0.7))) <= 1e-15);
  CHECK(approx_profile(0.0, Radius(3.0)) == pi / 2);
}

TEST_CASE("conformal coordinate") {
  CHECK(chi_of_psi(0.0) == pi / 2);
  CHECK(std::abs(chi_of_psi(std::log(1.0)) - 2.0 * std::atan(1.0)) <= 1e-16);
  CHECK(std::abs(psi_of_chi(pi / 2)) <= 2e-16);
  CHECK_THROWS_AS(psi_of_chi(0.0), DomainError);
  CHECK_THROWS_AS(psi_of_chi(pi), DomainError);
  CHECK_THROWS_AS(psi_of_chi(-1.0), DomainError);
  // The inverse is conditioned by 1/sin(chi): near the poles chi itself is
  // rounded by one ulp, which is what bounds the round trip.
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    const double chi = chi_of_psi(x);
    const double ulp = std::nextafter(chi, 4.0) - chi;
    CHECK(std::abs(psi_of_chi(chi) - x) <= 1e-14 + ulp / std::sin(chi));
  }
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid({12.0, 2001});
  CHECK(g.size() == 2001);
  CHECK(g.front() == -12.0);
  CHECK(g.back() == 12.0);
  CHECK(g[1000] == 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
  CHECK_THROWS_AS(uniform_grid({12.0, 1}), DomainError);
  CHECK_THROWS_AS(uniform_grid({0.0, 11}), DomainError);
}

TEST_CASE("grid derivative") {
  const auto g = uniform_grid({3.0, 301});
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::sin(g[i]);
  const auto d = grid_derivative(g, v);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(d[i] - std::cos(g[i])));
  CHECK(worst < 1e-7);

  std::vector<double> nonuniform{0.0, 0.1, 0.3, 0.35, 0.7, 1.0}, sq(nonuniform.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = nonuniform[i] * nonuniform[i];
  const auto dq = grid_derivative(nonuniform, sq);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(std::abs(dq[i] - 2.0 * nonuniform[i]) <= 1e-12);
  CHECK_THROWS_AS(grid_derivative(nonuniform, std::vector<double>(3)), DomainError);
}

TEST_CASE("sampled exact profile") {
  const Radius L(kLm);
  const auto p = sample_exact_profile(L);
  CHECK(p.size() == 2001);
  CHECK(p.is_strictly_increasing());
  CHECK(p.f()[1000] == pi / 2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.f()[i] > 0.0);
    CHECK(p.f()[i] < pi);
    CHECK(p.f_prime()[i] > 0.0);
    CHECK(std::abs(p.f()[i] + p.f()[p.size() - 1 - i] - pi) <= 1e-10);
  }

  SUBCASE("sample derivative matches first integral") {
    const auto d = grid_derivative(p.psi(), p.f());
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < p.size(); ++i) worst = std::max(worst, std::abs(d[i] - p.f_prime()[i]));
    CHECK(worst < 1e-7);
  }
  SUBCASE("shift") {
    const auto q = sample_exact_profile(L, GridSpec{12.0, 2001}, 0.6);
    const auto ms = modulus_from_radius(L);
    CHECK(std::abs(q.f()[1000] - f_of_psi(-0.6, ms)) <= 1e-14);
    const std::vector<double> at{0.6, 1.0};
    CHECK(std::abs(sample_exact_profile(L, at, 0.6).f()[0] - pi / 2) <= 1e-15);
  }
  SUBCASE("constructor validation") {
    CHECK_THROWS_AS(SampledProfile({0.0, 1.0}, {0.0}, {0.0, 0.0}, L), DomainError);
    CHECK_THROWS_AS(SampledProfile({0.0, 0.0, 1.0}, {0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}, L), DomainError);
    CHECK_THROWS_AS(SampledProfile({0.0, 1.0, 2.0}, {0.0, std::nan(""), 2.0}, {1.0, 1.0, 1.0}, L), DomainError);
  }
}

TEST_CASE("topological charge") {
  const Radius L(kLm);
  CHECK(topological_charge(sample_exact_profile(L, GridSpec{20.0, 2001})) == 1);
  const auto g = uniform_grid({10.0, 101});
  CHECK(topological_charge(SampledProfile(g, std::vector<double>(g.size(), 0.0), L)) == 0);

  const auto p = sample_exact_profile(L, GridSpec{20.0, 2001});
  std::vector<double> reflected(p.f().rbegin(), p.f().rend());
  CHECK(topological_charge(SampledProfile(std::vector<double>(p.psi().begin(), p.psi().end()), reflected, L)) == -1);

  CHECK_THROWS_AS(topological_charge(sample_exact_profile(L, GridSpec{2.0, 101})), DomainError);
}
