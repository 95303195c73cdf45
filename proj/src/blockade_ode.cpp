#include "swnoon/blockade_ode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace swnoon {

namespace {

using C = std::complex<double>;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Ladder 0 <-> 1 <-> 2 with couplings a, b, decay gamma/2 on level 1 and gamma
// on level 2, level 2 detuned by the blockade shift.
Generator ladder(double a, double b, double shift, double decay) {
  Generator h{};
  h[0][1] = h[1][0] = C{-0.5 * a, 0.0};
  h[1][1] = C{0.0, -0.5 * decay};
  h[1][2] = h[2][1] = C{-0.5 * b, 0.0};
  h[2][2] = C{shift, -decay};
  return h;
}

Amplitudes propagate(const Generator& h, std::size_t start, double duration, const IntegratorOptions& opt) {
  Amplitudes init;
  init.c[start] = 1.0;
  return integrate_general(generator_from_hamiltonian(h), init, duration, opt);
}

}  // namespace

void OdeParams::validate() const {
  require(std::isfinite(atom_count) && atom_count >= 1.0, "atom count must be >= 1");
  require(std::isfinite(rabi) && rabi > 0.0, "Rabi frequency must be > 0");
  require(std::isfinite(transfer_rabi) && transfer_rabi > 0.0, "transfer Rabi frequency must be > 0");
  require(std::isfinite(shift) && shift >= 0.0, "blockade shift must be >= 0");
  require(std::isfinite(decay) && decay >= 0.0, "decay rate must be >= 0");
  require(order >= 1, "spin-wave order must be >= 1");
}

double excitation_duration(double atom_count, double rabi) {
  return std::numbers::pi / (std::sqrt(atom_count) * rabi);
}

double transfer_duration(int order, double transfer_rabi) {
  return std::numbers::pi / (std::sqrt(static_cast<double>(order)) * transfer_rabi);
}

Generator same_mode_hamiltonian(const OdeParams& p) {
  return ladder(std::sqrt(p.atom_count) * p.rabi, std::sqrt(2.0 * p.atom_count) * p.rabi, p.shift, p.decay);
}

Generator cross_mode_hamiltonian(const OdeParams& p) {
  Generator h{};
  const double a = std::sqrt(p.atom_count) * p.rabi;
  h[0][1] = h[1][0] = C{-0.5 * a, 0.0};
  h[1][1] = C{p.shift, -0.5 * p.decay};
  return h;
}

Generator transfer_hamiltonian(const OdeParams& p) {
  const double q = static_cast<double>(p.order);
  return ladder(std::sqrt(q) * p.transfer_rabi, std::sqrt(2.0 * (q - 1.0)) * p.transfer_rabi, p.shift,
                p.decay);
}

double integrate_same_mode(const OdeParams& p, const IntegratorOptions& opt) {
  p.validate();
  return propagate(same_mode_hamiltonian(p), 0, excitation_duration(p.atom_count, p.rabi), opt).probability(1);
}

double integrate_cross_mode(const OdeParams& p, const IntegratorOptions& opt) {
  p.validate();
  return propagate(cross_mode_hamiltonian(p), 0, excitation_duration(p.atom_count, p.rabi), opt).probability(0);
}

double integrate_transfer(const OdeParams& p, const IntegratorOptions& opt) {
  p.validate();
  return propagate(transfer_hamiltonian(p), 1, transfer_duration(p.order, p.transfer_rabi), opt).probability(0);
}

double decay_survival(double decay, double duration) {
  if (!(decay >= 0.0) || !(duration >= 0.0)) {
    throw std::invalid_argument("decay rate and duration must be >= 0");
  }
  return std::exp(-decay * duration);
}

double decay_rate_from_lifetime(double lifetime_us) {
  if (!(lifetime_us > 0.0)) throw std::invalid_argument("Rydberg lifetime must be > 0");
  return 1.0 / lifetime_us;
}

double angular_from_mhz(double mhz) { return 2.0 * std::numbers::pi * mhz; }

}  // namespace swnoon
