#include "skyrme/io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace skyrme {
namespace {

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string profile_csv(const SampledProfile& p) {
  std::string out = "psi,F,chi\n";
  const auto psi = p.psi();
  const auto f = p.f();
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += format_double(psi[i]) + ',' + format_double(f[i]) + ',' + format_double(chi_of_psi(psi[i])) + '\n';
  }
  return out;
}

std::string energy_scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "L,E_total,E_over_12pi2,E_sigma,E_skyrme\n";
  for (const auto& r : rows) {
    out += format_double(r.L) + ',' + format_double(r.exact.total) + ',' +
           format_double(r.exact.total_bogomolny_units) + ',' + format_double(r.exact.sigma_term) + ',' +
           format_double(r.exact.skyrme_term) + '\n';
  }
  return out;
}

std::string shoot_csv(const SampledProfile& p) {
  std::string out = "psi,F,chi,C\n";
  const auto psi = p.psi();
  const auto f = p.f();
  const auto fp = p.f_prime();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double c = conserved_c({psi[i], f[i], fp[i]}, p.radius());
    out += format_double(psi[i]) + ',' + format_double(f[i]) + ',' + format_double(chi_of_psi(psi[i])) + ',' +
           format_double(c) + '\n';
  }
  return out;
}

std::string spectrum_json(const StabilityReport& r) {
  nlohmann::ordered_json j;
  j["L"] = r.L;
  j["psi_max"] = r.psi_max;
  j["n_grid"] = r.n_grid;
  j["eigenvalues"] = r.eigenvalues;
  j["overlap_with_Fprime"] = r.overlap_with_fprime;
  j["ground_state_nodes"] = r.ground_state_nodes;
  j["lambda0_doubled_grid"] = r.lambda0_refined;
  j["lambda1_doubling_shift"] = r.doubling_shift;
  return dump(j);
}

std::string classification_json(const Classification& c) {
  nlohmann::ordered_json j;
  j["C"] = c.c;
  j["class"] = std::string(to_string(c.kind));
  j["window"] = c.window;
  return dump(j);
}

}  // namespace skyrme
