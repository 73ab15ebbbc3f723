#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "skyrme/errors.hpp"
#include "skyrme/ode_dynamics.hpp"

using namespace skyrme;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST_CASE("right-hand side") {
  CHECK(std::abs(rhs_second_order({0.0, pi / 4, 0.0}, Radius(1.0)) - 0.75) <= 1e-15);
  CHECK(std::abs(rhs_second_order({0.0, pi / 2, 1.3}, Radius(0.7))) <= 1e-15);
  CHECK(rhs_second_order({0.0, 0.0, 0.0}, Radius(2.0)) == 0.0);
  CHECK(std::abs(rhs_second_order({0.0, pi, 0.0}, Radius(2.0))) <= 1e-15);
}

TEST_CASE("conserved quantity") {
  for (double L : {0.3, 1.0, 4.0}) {
    CHECK(std::abs(conserved_c({0.0, pi / 2, 0.0}, Radius(L)) + (2 * L * L + 1)) <= 1e-14 * (2 * L * L + 1));
    const double fp0 = std::sqrt((2 * L * L + 1) / (L * L + 2));
    CHECK(std::abs(conserved_c({0.0, pi / 2, fp0}, Radius(L))) <= 1e-14 * (2 * L * L + 1));
  }
  CHECK(conserved_c({0.0, 0.0, 0.0}, Radius(1.0)) == 0.0);
  CHECK(std::abs(conserved_c({0.0, pi / 2, 2.0}, Radius(1.0)) - 9.0) <= 1e-14);
}

TEST_CASE("C is constant along the equation of motion") {
  // dC/dpsi = 2 F' [(L^2 + 2 s^2) F'' + F'^2 sin 2F - (L^2 + s^2) sin 2F]
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> f(-4.0, 4.0), fp(-3.0, 3.0), logL(std::log(0.1), std::log(10.0));
  for (int i = 0; i < 200; ++i) {
    const Radius L(std::exp(logL(rng)));
    const ShootState s{0.0, f(rng), fp(rng)};
    const double a = rhs_second_order(s, L), h = 1e-5;
    const double c_plus = conserved_c({h, s.f + h * s.f_prime + 0.5 * h * h * a, s.f_prime + h * a}, L);
    const double c_minus = conserved_c({-h, s.f - h * s.f_prime + 0.5 * h * h * a, s.f_prime - h * a}, L);
    const double scale = 1.0 + std::abs(conserved_c(s, L)) + L.value() * L.value() * s.f_prime * s.f_prime;
    CHECK(std::abs(c_plus - c_minus) / (2 * h) <= 1e-6 * scale);
  }
}

TEST_CASE("first-integral slope") {
  CHECK(std::abs(first_integral_fprime(pi / 2, Radius(1.0)) - 1.0) <= 1e-15);
  CHECK(first_integral_fprime(0.0, Radius(1.0)) == 0.0);
  std::mt19937_64 rng(402);
  std::uniform_real_distribution<double> f(0.01, pi - 0.01), logL(std::log(0.05), std::log(20.0));
  for (int i = 0; i < 500; ++i) {
    const double x = f(rng), s2 = std::sin(x) * std::sin(x);
    const Radius L(std::exp(logL(rng)));
    const double fp = first_integral_fprime(x, L);
    CHECK(fp * fp > 0.5 * s2);
    CHECK(fp * fp <= 2.0 * s2 * (1 + 1e-15));
    CHECK(std::abs(conserved_c({0.0, x, fp}, L)) <= 1e-13 * (1 + 2 * L.value() * L.value()));
  }
  CHECK(std::abs(first_integral_fprime(0.3, Radius(1e4)) - sqrt2 * std::sin(0.3)) <= 1e-8);
  CHECK(std::abs(first_integral_fprime(0.3, Radius(1e-4)) - std::sin(0.3) / sqrt2) <= 1e-6);
}

TEST_CASE("shooting reproduces the inverted profile") {
  for (double Lv : {0.5, 0.8150941506, 2.0}) {
    const Radius L(Lv);
    const auto p = shoot(L, 6.0);
    const auto ms = modulus_from_radius(L);
    REQUIRE(p.size() == 2001);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = p.psi()[i];
      CHECK(std::abs(p.f()[i] - f_of_psi(x, ms)) <= 1e-6);
      CHECK(std::abs(conserved_c({x, p.f()[i], p.f_prime()[i]}, L)) <= 1e-8);
      if (x != 0.0) {
        const Envelope env = limiting_profiles(x);
        CHECK(env.lower < p.f()[i]);
        CHECK(p.f()[i] < env.upper);
      }
    }
    CHECK(topological_charge(shoot(L, 20.0)) == 1);
  }
}

TEST_CASE("shooting options and errors") {
  ShootOptions opts;
  opts.n_grid = 101;
  CHECK(shoot(Radius(1.0), 4.0, opts).size() == 101);
  CHECK_THROWS_AS(shoot(Radius(1.0), 0.0), DomainError);
  CHECK_THROWS_AS(shoot(Radius(1.0), std::nan("")), DomainError);
  opts.c_budget = 1e-30;
  CHECK_THROWS_AS(shoot(Radius(1.0), 12.0, opts), ConvergenceError);
}

TEST_CASE("classification examples") {
  const Radius L(1.0);
  const auto up = classify_by_c(pi / 2, 2.0, L);
  CHECK(up.kind == Trajectory::divergent);
  CHECK(std::abs(up.c - 9.0) <= 1e-14);
  const auto down = classify_by_c(pi / 2, 0.5, L);
  CHECK(down.kind == Trajectory::oscillatory);
  CHECK(std::abs(down.c + 2.25) <= 1e-14);
  const auto sep = classify_by_c(pi / 2, 1.0, L);
  CHECK(sep.kind == Trajectory::separatrix);
  CHECK(to_string(Trajectory::divergent) == "divergent");
  CHECK(to_string(Trajectory::oscillatory) == "oscillatory");
  CHECK(to_string(Trajectory::separatrix) == "separatrix");
}

TEST_CASE("classification follows the sign of C") {
  std::mt19937_64 rng(403);
  std::uniform_real_distribution<double> f0(0.05, pi - 0.05), fp0(-3.0, 3.0), logL(std::log(0.2), std::log(5.0));
  std::uniform_int_distribution<int> strip(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const Radius L(std::exp(logL(rng)));
    const double f = f0(rng) + strip(rng) * pi, fp = fp0(rng);
    const double c = conserved_c({0.0, f, fp}, L);
    const auto cls = classify_by_c(f, fp, L);
    CAPTURE(f);
    CAPTURE(fp);
    CHECK(cls.c == c);
    CHECK(cls.kind == (c > 0.0 ? Trajectory::divergent : Trajectory::oscillatory));
  }
}

TEST_CASE("classification near the separatrix") {
  for (double Lv : {0.4, 1.0, 3.0}) {
    const Radius L(Lv);
    const double fp = first_integral_fprime(pi / 2, L);
    CHECK(classify_by_c(pi / 2, fp * (1 + 1e-5), L).kind == Trajectory::divergent);
    CHECK(classify_by_c(pi / 2, fp * (1 - 1e-5), L).kind == Trajectory::oscillatory);
  }
}

TEST_CASE("classification input validation") {
  CHECK_THROWS_AS(classify_by_c(std::nan(""), 0.0, Radius(1.0)), DomainError);
  CHECK_THROWS_AS(classify_by_c(1.0, INFINITY, Radius(1.0)), DomainError);
  ClassifyOptions opts;
  opts.window = 0.0;
  CHECK_THROWS_AS(classify_by_c(1.0, 0.0, Radius(1.0), opts), DomainError);
}
