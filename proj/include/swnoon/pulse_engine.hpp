#pragma once

// Ideal-case pulse protocol: perfect blockade, no decay, fixed atom number.

#include <numbers>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "swnoon/collective_state.hpp"
#include "swnoon/wave_vector.hpp"

namespace swnoon {

enum class Transition : std::uint8_t { g_ra, g_rb, ra_sa, rb_sb };

constexpr bool is_collective(Transition t) { return t == Transition::g_ra || t == Transition::g_rb; }

/// Beam that drives `t`.
Beam beam_of(Transition t);

struct PulseSpec {
  Transition transition = Transition::g_ra;
  double area = std::numbers::pi;  // rad
  WaveCombination wave{};

  /// Pulse on `t` with the wave vector of its own beam.
  static PulseSpec on(Transition t, double area);
  PulseSpec inverse() const { return {transition, -area, wave}; }
};

struct Displace {
  Displacement dx;
};
struct IonizeMeasure {};

using ProtocolEvent = std::variant<PulseSpec, Displace, IonizeMeasure>;

/// Two-level rotation R(area) inside every affected branch pair:
///   |lower> -> cos(a/2)|lower> - i sin(a/2)|upper>
///   |upper> -> -i sin(a/2)|lower> + cos(a/2)|upper>
/// g<->r_l: lower has no r_l, upper adds one r_l carrying the pulse k. A branch
/// holding the other Rydberg excitation is blocked.
/// r_l<->s_l: lower holds the r_l excitation, upper has it stored in s_l with
/// k_r - k_pulse. s_l -> r_l is blocked when the other Rydberg level is occupied.
CollectiveState apply_pulse(const CollectiveState& state, const PulseSpec& pulse);

/// Multiplies every branch by exp(i K.dx), K the branch's total stored k.
CollectiveState displace(const CollectiveState& state, const Displacement& dx,
                         const BeamGeometry& geometry);

/// Pulses preparing the order-l NOON state from |0>; 4l+2 pulses for l >= 2.
std::vector<ProtocolEvent> build_generation_sequence(int order);

/// Mirror of the generation sequence that recombines the two arms onto the
/// r_a / s_a pair, followed by IonizeMeasure.
std::vector<ProtocolEvent> build_readout_sequence(int order);

/// Exact inverse of the full generation sequence (maps the NOON state to |0>).
std::vector<ProtocolEvent> build_inverse_generation_sequence(int order);

std::size_t pulse_count(std::span<const ProtocolEvent> events);

struct RunResult {
  CollectiveState state;
  std::optional<double> detection_probability;
};

/// Folds the events over `initial`. IonizeMeasure must be last.
RunResult run(std::span<const ProtocolEvent> events, const CollectiveState& initial,
              const BeamGeometry& geometry = BeamGeometry::counter_propagating());

/// k_{gr_a s_a} - k_{gr_b s_b}; the relative phase of the two NOON arms is l * dk.dx.
WaveVector fringe_wave_vector(const BeamGeometry& geometry);

/// 2 pi / (l |dk . direction|), um.
double fringe_period(int order, const BeamGeometry& geometry, const Displacement& direction);

struct FringeResult {
  Displacement displacement;
  double detection_probability = 0.0;
};

/// Generate, displace by origin + s * direction for each s, read out.
std::vector<FringeResult> fringe_scan(int order, const Displacement& direction,
                                      std::span<const double> displacements,
                                      const BeamGeometry& geometry = BeamGeometry::counter_propagating(),
                                      const Displacement& origin = {});

}  // namespace swnoon
