#pragma once

// Error-channel amplitude systems for a finite blockade shift and a finite
// Rydberg lifetime. All rates are angular (rad/us); gamma in 1/us.

#include <vector>

#include "swnoon/integrator.hpp"

namespace swnoon {

struct OdeParams {
  double atom_count = 400.0;     // N
  double rabi = 1.0;             // single-atom g<->r Rabi frequency
  double transfer_rabi = 1.0;    // r<->s Rabi frequency
  double shift = 0.0;            // blockade shift Delta_e
  double decay = 0.0;            // gamma
  int order = 1;                 // q, spin-wave order for the transfer system

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;
};

/// pi/(sqrt(N) Omega)
double excitation_duration(double atom_count, double rabi);
/// pi/(sqrt(q) Omega~)
double transfer_duration(int order, double transfer_rabi);

/// Hamiltonians (H, with dc/dt = -i H c) of the three systems.
Generator same_mode_hamiltonian(const OdeParams& p);
Generator cross_mode_hamiltonian(const OdeParams& p);  // 2-level, third row/col zero
Generator transfer_hamiltonian(const OdeParams& p);

/// |c1(dt)|^2 from |0>: single excitation created without a second one.
double integrate_same_mode(const OdeParams& p, const IntegratorOptions& opt = {});
/// |c0(dt)|^2 from |0>: ground held while the other mode's Rydberg atom blocks.
double integrate_cross_mode(const OdeParams& p, const IntegratorOptions& opt = {});
/// |c~0(dt~_q)|^2 from c~1 = 1: Rydberg excitation stored as the q-th spin wave.
double integrate_transfer(const OdeParams& p, const IntegratorOptions& opt = {});

/// exp(-gamma dt)
double decay_survival(double decay, double duration);

/// gamma in 1/us from a Rydberg lifetime in us (angular convention, gamma = 1/tau).
double decay_rate_from_lifetime(double lifetime_us);
/// MHz -> rad/us
double angular_from_mhz(double mhz);

struct ChannelProbabilities {
  double p_i = 1.0;
  double p_ii = 1.0;
  double p_iii = 1.0;
  std::vector<double> p_iv;  // index q-1
  std::vector<double> p_v;   // index q-1
};

}  // namespace swnoon
