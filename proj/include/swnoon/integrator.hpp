#pragma once

// Adaptive Dormand-Prince 5(4) for three-level linear amplitude systems
//   dc/dt = G c,  G constant.

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace swnoon {

struct Amplitudes {
  std::array<std::complex<double>, 3> c{};

  double probability(std::size_t i) const { return std::norm(c[i]); }
  double total_probability() const { return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]); }
};

/// Row-major 3x3 complex generator.
using Generator = std::array<std::array<std::complex<double>, 3>, 3>;

/// Builds G = -i H from a (possibly non-Hermitian) Hamiltonian.
Generator generator_from_hamiltonian(const Generator& hamiltonian);

struct IntegratorOptions {
  double tolerance = 1e-12;          // absolute local error per step
  std::size_t max_steps = 10'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Raised for step-size underflow, step budget exhaustion or non-finite input.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Amplitudes integrate_general(const Generator& generator, const Amplitudes& initial, double duration,
                             const IntegratorOptions& options = {}, IntegrationStats* stats = nullptr);

}  // namespace swnoon
