#pragma once

// Data-parallel inner loops of the fringe fit. Each kernel has a scalar
// reference and an AVX2+FMA variant; the variant is picked once at startup from
// CPUID and can be overridden for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace swnoon::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True when the variant was compiled in and the CPU can run it.
bool available(Isa isa);

/// Variant used by the free functions below.
Isa active();

/// Throws std::invalid_argument if `isa` is not available.
void set_active(Isa isa);

/// p(1-p) below this is clamped when forming binomial weights.
inline constexpr double kVarianceFloor = 1e-12;

/// Weighted normal-equation sums for the offset of p(x) = sin^2(kappa (x - x0) / 2).
struct FringeSums {
  double information = 0.0;  // sum w J^2
  double score = 0.0;        // sum w J r
  double cost = 0.0;         // sum w r^2
};

struct KernelTable {
  void (*sincos)(const double* x, double* s, double* c, std::size_t n);
  void (*fringe_model)(const double* x, std::size_t n, double x0, double kappa, double* p);
  FringeSums (*fringe_normal_equations)(const double* x, const double* fraction, const double* shots,
                                        std::size_t n, double x0, double kappa);
};

/// Table of a specific variant; throws std::invalid_argument if unavailable.
const KernelTable& table(Isa isa);

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);

/// p_i = sin^2(kappa (x_i - x0) / 2)
void fringe_model(std::span<const double> x, double x0, double kappa, std::span<double> p);

/// With r_i = fraction_i - p_i, J_i = dp_i/dx0 and w_i = shots_i / max(p_i (1 - p_i), floor).
FringeSums fringe_normal_equations(std::span<const double> x, std::span<const double> fraction,
                                   std::span<const double> shots, double x0, double kappa);

}  // namespace swnoon::kernels
