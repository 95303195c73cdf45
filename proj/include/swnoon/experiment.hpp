#pragma once

// Feasibility numbers for a Rydberg ensemble: van der Waals shift, atom count.

#include "swnoon/error_budget.hpp"

namespace swnoon {

/// Fit of the van der Waals shift, -n^11 (c0 + c1 n + c2 n^2) / r^6, in atomic units.
struct VdwCoefficients {
  double c0 = 13.0;
  double c1 = -0.85;
  double c2 = 0.0034;

  double polynomial(double n) const { return c0 + n * (c1 + n * c2); }
};

inline constexpr int kFitMinPrincipal = 30;
inline constexpr int kFitMaxPrincipal = 150;

inline constexpr double kHartreeMHz = 6.579683920502e9;    // E_h / h
inline constexpr double kBohrPerMicron = 1.0 / 5.29177210903e-5;

double hartree_to_mhz(double hartree);
double mhz_to_hartree(double mhz);

struct EnergyShift {
  double magnitude_mhz = 0.0;
  int sign = 1;              // +1 repulsive
  bool in_fit_range = true;  // false: principal number outside the fit's range
};

EnergyShift energy_shift(int principal_n, double distance_um, const VdwCoefficients& coeffs = {});

/// Shift between the two farthest atoms of a sphere of radius R (distance 2R).
EnergyShift min_pair_shift(int principal_n, double radius_um, const VdwCoefficients& coeffs = {});

/// density * 4/3 pi R^3, density in cm^-3.
double atom_number(double density_cm3, double radius_um);

struct EnsembleSpec {
  double radius_um = 3.8;
  double density_cm3 = 1.7e12;
  int principal_n = 100;

  void validate() const;
};

struct FeasibilityTargets {
  double shift_mhz = 300.0;
  double error = 0.03;
  /// Relative shortfall of the shift tolerated against `shift_mhz`.
  double shift_tolerance = 0.10;
};

struct FeasibilityReport {
  EnsembleSpec ensemble;
  EnergyShift shift;
  double atom_count = 0.0;
  ErrorBudget budget;
  double fidelity = 0.0;
  double shift_margin_mhz = 0.0;  // shift - target
  double error_margin = 0.0;      // target - E(l)
  bool shift_ok = false;
  bool error_ok = false;
  bool pass = false;
};

/// Shift and atom number from the ensemble, E(l) and F at those values.
FeasibilityReport feasibility_report(const EnsembleSpec& ensemble, const FeasibilityTargets& targets, int order,
                                     double lifetime_us, const Brackets& brackets = {});

}  // namespace swnoon
