#pragma once

// Detector simulation and displacement estimation from ionization counts.

#include <cstdint>
#include <span>
#include <stdexcept>

namespace swnoon {

/// Binomial(shots, probability) draw, reproducible for a fixed seed.
std::int64_t simulate_counts(double probability, std::int64_t shots, std::uint64_t seed);

/// Independent seed for the index-th setting of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// One displacement setting and its ionization record. Counts may be fractional
/// (expected counts) when fitting noiseless model values.
struct FringeSample {
  double setting_um = 0.0;
  double shots = 0.0;
  double count = 0.0;
};

struct DisplacementEstimate {
  double offset_um = 0.0;   // x0 in [0, period)
  double stderr_um = 0.0;   // from the inverse Fisher information at x0
  double period_um = 0.0;
  bool ambiguous = false;   // settings span at least one period
  int iterations = 0;
};

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted least-squares fit of p(x) = sin^2(l dk (x - x0) / 2) to the
/// observed fractions, binomial weights re-evaluated at every iterate.
/// `dk_projection` is the fringe wave vector projected on the scan direction.
DisplacementEstimate estimate_displacement(std::span<const FringeSample> samples, int order,
                                           double dk_projection);

/// Distance between a and b on a circle of circumference `period`.
double circular_distance(double a, double b, double period);

}  // namespace swnoon
