#include "swnoon/experiment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swnoon {

double hartree_to_mhz(double hartree) { return hartree * kHartreeMHz; }
double mhz_to_hartree(double mhz) { return mhz / kHartreeMHz; }

EnergyShift energy_shift(int principal_n, double distance_um, const VdwCoefficients& coeffs) {
  if (!(distance_um > 0.0) || !std::isfinite(distance_um)) {
    throw std::invalid_argument("pair distance must be > 0, got " + std::to_string(distance_um));
  }
  if (principal_n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
  const double n = principal_n;
  const double r = distance_um * kBohrPerMicron;
  const double r3 = r * r * r;
  const double shift_au = -std::pow(n, 11) * coeffs.polynomial(n) / (r3 * r3);
  EnergyShift s;
  s.magnitude_mhz = hartree_to_mhz(std::abs(shift_au));
  s.sign = shift_au < 0.0 ? -1 : 1;
  s.in_fit_range = principal_n >= kFitMinPrincipal && principal_n <= kFitMaxPrincipal;
  return s;
}

EnergyShift min_pair_shift(int principal_n, double radius_um, const VdwCoefficients& coeffs) {
  if (!(radius_um > 0.0)) throw std::invalid_argument("ensemble radius must be > 0");
  return energy_shift(principal_n, 2.0 * radius_um, coeffs);
}

double atom_number(double density_cm3, double radius_um) {
  if (!(density_cm3 >= 0.0) || !(radius_um >= 0.0)) {
    throw std::invalid_argument("density and radius must be >= 0");
  }
  const double r_cm = radius_um * 1e-4;
  return density_cm3 * (4.0 / 3.0) * std::numbers::pi * r_cm * r_cm * r_cm;
}

void EnsembleSpec::validate() const {
  if (!(radius_um > 0.0)) throw std::invalid_argument("ensemble radius must be > 0");
  if (!(density_cm3 > 0.0)) throw std::invalid_argument("atomic density must be > 0");
  if (principal_n < kFitMinPrincipal || principal_n > kFitMaxPrincipal) {
    throw std::invalid_argument("principal quantum number " + std::to_string(principal_n) +
                                " outside the van der Waals fit range [" + std::to_string(kFitMinPrincipal) +
                                ", " + std::to_string(kFitMaxPrincipal) + "]");
  }
}

FeasibilityReport feasibility_report(const EnsembleSpec& ensemble, const FeasibilityTargets& targets, int order,
                                     double lifetime_us, const Brackets& brackets) {
  ensemble.validate();
  FeasibilityReport r;
  r.ensemble = ensemble;
  r.shift = min_pair_shift(ensemble.principal_n, ensemble.radius_um);
  r.atom_count = atom_number(ensemble.density_cm3, ensemble.radius_um);
  if (r.atom_count < 1.0) throw std::invalid_argument("ensemble holds fewer than one atom");
  r.budget = success_probability(order, r.atom_count, angular_from_mhz(r.shift.magnitude_mhz),
                                 decay_rate_from_lifetime(lifetime_us), brackets);
  r.fidelity = r.budget.fidelity;
  r.shift_margin_mhz = r.shift.magnitude_mhz - targets.shift_mhz;
  r.error_margin = targets.error - r.budget.e_protocol;
  r.shift_ok = r.shift.magnitude_mhz >= targets.shift_mhz * (1.0 - targets.shift_tolerance);
  r.error_ok = r.budget.e_protocol <= targets.error;
  r.pass = r.shift_ok && r.error_ok;
  return r;
}

}  // namespace swnoon
