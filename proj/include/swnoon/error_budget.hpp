#pragma once

// Rabi-frequency optimization and the protocol error budget.

#include <functional>
#include <numbers>
#include <string_view>
#include <vector>

#include "swnoon/blockade_ode.hpp"

namespace swnoon {

/// Search interval for a Rabi frequency, rad/us.
struct RabiBracket {
  double lo = 2.0 * std::numbers::pi * 0.01;
  double hi = 2.0 * std::numbers::pi * 50.0;

  void validate() const;
};

enum class OptimumStatus { interior, boundary_low, boundary_high };
std::string_view to_string(OptimumStatus s);

struct OptimizationResult {
  double best_rabi = 0.0;
  double best_product = 0.0;
  std::size_t evaluations = 0;
  RabiBracket bracket;
  OptimumStatus status = OptimumStatus::interior;
};

inline constexpr std::size_t kCoarseGridPoints = 64;
inline constexpr double kGoldenRelativeWidth = 1e-4;

/// Maximizes f on [lo, hi]: 64-point log grid, then golden-section search in
/// log space around the best grid point down to a relative width of 1e-4.
OptimizationResult maximize_on_bracket(const std::function<double(double)>& f, const RabiBracket& bracket);

/// pI * pII * pIII as a function of the single-atom Rabi frequency.
double excitation_product(double atom_count, double shift, double decay, double rabi);
/// pIV_q * pV_q as a function of the transfer Rabi frequency.
double transfer_product(int order, double shift, double decay, double transfer_rabi);

OptimizationResult optimize_excitation_rabi(double atom_count, double shift, double decay,
                                            const RabiBracket& bracket = {});
OptimizationResult optimize_transfer_rabi(int order, double shift, double decay,
                                          const RabiBracket& bracket = {});

struct Brackets {
  RabiBracket excitation;
  RabiBracket transfer;
};

struct ErrorBudget {
  int order = 1;
  ChannelProbabilities channel;
  OptimizationResult excitation;
  std::vector<OptimizationResult> transfer;  // index q-1
  double p_success = 1.0;
  double e_protocol = 0.0;
  double e_atom_number = 0.0;
  double fidelity = 1.0;

  /// True when any optimum sits on its bracket edge, except the q = 1 transfer
  /// at the upper edge, which is expected.
  bool has_boundary_optimum() const;
};

/// P(l) = prod_q (pIV_q pV_q) * (pI pII pIII)^l from stored channel values.
double compose_success(const ChannelProbabilities& channel, int order);

/// Optimizes every channel and composes P(l), E(l), the atom-number error and F.
ErrorBudget success_probability(int order, double atom_count, double shift, double decay,
                                const Brackets& brackets = {});

/// pi^2 / (16 N): a single collective pi pulse misses because N is uncertain.
double per_pulse_atom_number_error(double atom_count);
/// pi^2 l / (8 N)
double atom_number_error(int order, double atom_count);

/// 1 - 2 (eN + E), clamped to [0, 1].
double fidelity_from_errors(double atom_number_err, double protocol_err);
double interferometer_fidelity(int order, double atom_count, double shift, double decay,
                               const Brackets& brackets = {});

struct SweepRow {
  int order = 0;
  double lifetime_us = 0.0;
  double delta_e_mhz = 0.0;
  double p_success = 0.0;
  double e_total = 0.0;
  bool boundary_optimum = false;
};

/// E(l) over the (order, lifetime, shift) grid, sorted ascending by that key.
/// Transfer optimizations for q = 1..max(order) are shared across orders.
std::vector<SweepRow> sweep_error_vs_shift(std::vector<int> orders, std::vector<double> shifts_mhz,
                                           std::vector<double> lifetimes_us, double atom_count,
                                           const Brackets& brackets = {});

}  // namespace swnoon
