#include "skyrme/ode_dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "skyrme/errors.hpp"

namespace skyrme {
namespace {

using std::numbers::pi;
namespace odeint = boost::numeric::odeint;

using State = std::array<double, 2>;  // (F, F')

struct SecondOrderSystem {
  Radius L;
  void operator()(const State& x, State& dxdt, double psi) const {
    dxdt[0] = x[1];
    dxdt[1] = rhs_second_order({psi, x[0], x[1]}, L);
  }
};

// Integrates from t = 0 through the increasing `times`, recording (F, F').
std::vector<State> integrate_forward(const SecondOrderSystem& sys, State x0, const std::vector<double>& times,
                                     const ShootOptions& opts) {
  std::vector<State> out;
  out.reserve(times.size());
  auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_fehlberg78<State>());
  try {
    odeint::integrate_times(stepper, sys, x0, times.begin(), times.end(), 1e-3,
                            [&](const State& x, double) { out.push_back(x); });
  } catch (const std::overflow_error& e) {
    throw ConvergenceError(std::string("shoot: step control failed: ") + e.what());
  }
  return out;
}

}  // namespace

double rhs_second_order(const ShootState& s, Radius radius) {
  const double L2 = radius.value() * radius.value();
  const double sf = std::sin(s.f);
  const double s2f = std::sin(2.0 * s.f);
  const double sin2 = sf * sf;
  return ((1.0 + sin2 / L2) * s2f - (s.f_prime * s.f_prime / L2) * s2f) / (1.0 + 2.0 * sin2 / L2);
}

double conserved_c(const ShootState& s, Radius radius) {
  const double L2 = radius.value() * radius.value();
  const double sf = std::sin(s.f);
  const double sin2 = sf * sf;
  return (L2 + 2.0 * sin2) * s.f_prime * s.f_prime - sin2 * (2.0 * L2 + sin2);
}

double first_integral_fprime(double f, Radius radius) {
  const double L2 = radius.value() * radius.value();
  const double sf = std::sin(f);
  const double sin2 = sf * sf;
  return std::abs(sf) * std::sqrt((2.0 * L2 + sin2) / (L2 + 2.0 * sin2));
}

SampledProfile shoot(Radius L, double psi_max, const ShootOptions& opts) {
  if (!std::isfinite(psi_max) || !(psi_max > 0.0)) throw DomainError("shoot: psi_max must be finite and > 0");
  const auto grid = uniform_grid({psi_max, opts.n_grid});
  const double L2 = L.value() * L.value();
  const double fp0 = std::sqrt((2.0 * L2 + 1.0) / (L2 + 2.0));
  const SecondOrderSystem sys{L};

  // Backward branch via the reflection G(t) = F(-t), which obeys the same equation.
  std::vector<double> fwd_times{0.0}, bwd_times{0.0};
  for (double p : grid) {
    if (p > 0.0) fwd_times.push_back(p);
  }
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    if (*it < 0.0) bwd_times.push_back(-*it);
  }
  const auto fwd = integrate_forward(sys, {pi / 2, fp0}, fwd_times, opts);
  const auto bwd = integrate_forward(sys, {pi / 2, -fp0}, bwd_times, opts);

  std::vector<double> f(grid.size()), fp(grid.size());
  std::size_t next_bwd = bwd.size() - 1;
  std::size_t next_fwd = 1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) {
      f[i] = bwd[next_bwd][0];
      fp[i] = -bwd[next_bwd][1];
      --next_bwd;
    } else if (grid[i] == 0.0) {
      f[i] = pi / 2;
      fp[i] = fp0;
    } else {
      f[i] = fwd[next_fwd][0];
      fp[i] = fwd[next_fwd][1];
      ++next_fwd;
    }
  }

  double worst = 0.0;
  double worst_psi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(f[i]) || !std::isfinite(fp[i])) {
      throw ConvergenceError("shoot: non-finite state at psi = " + std::to_string(grid[i]));
    }
    const double c = std::abs(conserved_c({grid[i], f[i], fp[i]}, L));
    if (c > worst) {
      worst = c;
      worst_psi = grid[i];
    }
  }
  if (worst > opts.c_budget) {
    std::ostringstream msg;
    msg << "shoot: |C| = " << worst << " at psi = " << worst_psi << " exceeds budget " << opts.c_budget;
    throw ConvergenceError(msg.str());
  }
  return SampledProfile(grid, std::move(f), std::move(fp), L);
}

std::string_view to_string(Trajectory t) {
  switch (t) {
    case Trajectory::separatrix: return "separatrix";
    case Trajectory::divergent: return "divergent";
    case Trajectory::oscillatory: return "oscillatory";
  }
  return "unknown";
}

Classification classify_by_c(double f0, double fp0, Radius L, const ClassifyOptions& opts) {
  if (!std::isfinite(f0) || !std::isfinite(fp0)) throw DomainError("classify_by_c: initial data must be finite");
  if (!(opts.window > 0.0)) throw DomainError("classify_by_c: window must be > 0");

  Classification result;
  result.window = opts.window;
  result.c = conserved_c({0.0, f0, fp0}, L);
  const double L2 = L.value() * L.value();
  if (std::abs(result.c) <= opts.separatrix_scale * (1.0 + 2.0 * L2)) {
    result.kind = Trajectory::separatrix;
    return result;
  }
  result.kind = result.c > 0.0 ? Trajectory::divergent : Trajectory::oscillatory;

  // Strip (n pi, (n + 1) pi) holding the initial angle.
  const double strip = std::floor(f0 / pi);
  const double lo = strip * pi, hi = lo + pi, mid = lo + pi / 2;
  const double escape = opts.escape * pi;

  const SecondOrderSystem sys{L};
  bool left_strip = false;
  bool fprime_flipped = false;
  int midline_crossings = 0;

  for (double direction : {1.0, -1.0}) {
    // Reflection t = -psi handles the backward half.
    State x{f0, direction * fp0};
    auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x, 0.0, 1e-3);
    double prev_offset = f0 - mid;
    const double sign0 = fp0;
    while (stepper.current_time() < opts.window) {
      stepper.do_step(sys);
      const State& s = stepper.current_state();
      if (!std::isfinite(s[0]) || !std::isfinite(s[1])) {
        throw ClassificationError("classify_by_c: non-finite state during integration");
      }
      const double offset = s[0] - mid;
      if ((offset > 0.0) != (prev_offset > 0.0)) ++midline_crossings;
      prev_offset = offset;
      if (s[0] <= lo || s[0] >= hi) left_strip = true;
      if (sign0 != 0.0 && direction * s[1] * sign0 <= 0.0) fprime_flipped = true;
      if (std::abs(s[0] - pi / 2) > escape) break;
    }
  }

  std::ostringstream why;
  if (result.kind == Trajectory::divergent) {
    if (fprime_flipped || !left_strip) {
      why << "classify_by_c: C = " << result.c << " > 0 but the trajectory "
          << (fprime_flipped ? "turned back" : "stayed inside its strip") << " within |psi| <= " << opts.window;
      throw ClassificationError(why.str());
    }
  } else {
    if (left_strip || midline_crossings < 2) {
      why << "classify_by_c: C = " << result.c << " < 0 but the trajectory "
          << (left_strip ? "left its strip" : "did not oscillate about the strip midline") << " within |psi| <= "
          << opts.window;
      throw ClassificationError(why.str());
    }
  }
  return result;
}

}  // namespace skyrme
