#include "swnoon/error_budget.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "swnoon/parallel.hpp"

namespace swnoon {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1/golden ratio

}  // namespace

void RabiBracket::validate() const {
  if (!(lo > 0.0) || !std::isfinite(hi) || !(hi > lo)) {
    throw std::invalid_argument("Rabi bracket needs 0 < lo < hi, got [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

std::string_view to_string(OptimumStatus s) {
  switch (s) {
    case OptimumStatus::interior: return "interior";
    case OptimumStatus::boundary_low: return "boundary-low";
    case OptimumStatus::boundary_high: return "boundary-high";
  }
  return "?";
}

OptimizationResult maximize_on_bracket(const std::function<double(double)>& f, const RabiBracket& bracket) {
  bracket.validate();
  OptimizationResult r;
  r.bracket = bracket;

  const double u_lo = std::log(bracket.lo);
  const double u_hi = std::log(bracket.hi);
  const double du = (u_hi - u_lo) / static_cast<double>(kCoarseGridPoints - 1);
  auto grid_x = [&](std::size_t i) {
    if (i == 0) return bracket.lo;
    if (i == kCoarseGridPoints - 1) return bracket.hi;
    return std::exp(u_lo + du * static_cast<double>(i));
  };

  std::size_t best_i = 0;
  double best_f = -1.0;
  for (std::size_t i = 0; i < kCoarseGridPoints; ++i) {
    const double v = f(grid_x(i));
    ++r.evaluations;
    if (v > best_f) {
      best_f = v;
      best_i = i;
    }
  }
  r.best_rabi = grid_x(best_i);
  r.best_product = best_f;

  // Golden section on u = ln(rabi) over the neighbouring grid cells.
  double a = std::log(grid_x(best_i == 0 ? 0 : best_i - 1));
  double b = std::log(grid_x(std::min(best_i + 1, kCoarseGridPoints - 1)));
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  r.evaluations += 2;
  while (b - a > kGoldenRelativeWidth) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(std::exp(x2));
    }
    ++r.evaluations;
  }
  const double u_best = f1 >= f2 ? x1 : x2;
  const double f_best = std::max(f1, f2);
  if (f_best > r.best_product) {
    r.best_product = f_best;
    r.best_rabi = std::exp(u_best);
  }

  if (u_best - u_lo <= kGoldenRelativeWidth || r.best_rabi == bracket.lo) {
    r.status = OptimumStatus::boundary_low;
  } else if (u_hi - u_best <= kGoldenRelativeWidth || r.best_rabi == bracket.hi) {
    r.status = OptimumStatus::boundary_high;
  }
  return r;
}

double excitation_product(double atom_count, double shift, double decay, double rabi) {
  OdeParams p;
  p.atom_count = atom_count;
  p.rabi = rabi;
  p.shift = shift;
  p.decay = decay;
  return integrate_same_mode(p) * integrate_cross_mode(p) *
         decay_survival(decay, excitation_duration(atom_count, rabi));
}

double transfer_product(int order, double shift, double decay, double transfer_rabi) {
  OdeParams p;
  p.order = order;
  p.transfer_rabi = transfer_rabi;
  p.shift = shift;
  p.decay = decay;
  return integrate_transfer(p) * decay_survival(decay, transfer_duration(order, transfer_rabi));
}

namespace {

void check_rates(double shift, double decay) {
  if (!(shift >= 0.0) || !(decay >= 0.0)) throw std::invalid_argument("shift and decay must be >= 0");
  if (shift == 0.0 && decay > 0.0) {
    throw std::invalid_argument("a decaying system needs a nonzero blockade shift to have an optimum");
  }
}

}  // namespace

OptimizationResult optimize_excitation_rabi(double atom_count, double shift, double decay,
                                            const RabiBracket& bracket) {
  check_rates(shift, decay);
  if (!(atom_count >= 1.0)) throw std::invalid_argument("atom count must be >= 1");
  return maximize_on_bracket([&](double rabi) { return excitation_product(atom_count, shift, decay, rabi); },
                             bracket);
}

OptimizationResult optimize_transfer_rabi(int order, double shift, double decay, const RabiBracket& bracket) {
  check_rates(shift, decay);
  if (order < 1) throw std::invalid_argument("spin-wave order must be >= 1");
  return maximize_on_bracket([&](double rabi) { return transfer_product(order, shift, decay, rabi); },
                             bracket);
}

bool ErrorBudget::has_boundary_optimum() const {
  if (excitation.status != OptimumStatus::interior) return true;
  // The q = 1 transfer is a bare two-level pulse whose product rises with the
  // Rabi frequency, so it always sits on the upper edge.
  for (std::size_t i = 0; i < transfer.size(); ++i) {
    const auto st = transfer[i].status;
    if (st == OptimumStatus::interior || (i == 0 && st == OptimumStatus::boundary_high)) continue;
    return true;
  }
  return false;
}

double compose_success(const ChannelProbabilities& channel, int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (channel.p_iv.size() < static_cast<std::size_t>(order) ||
      channel.p_v.size() < static_cast<std::size_t>(order)) {
    throw std::invalid_argument("channel table shorter than the requested order");
  }
  double transfer = 1.0;
  for (int q = 0; q < order; ++q) transfer *= channel.p_iv[q] * channel.p_v[q];
  return transfer * std::pow(channel.p_i * channel.p_ii * channel.p_iii, order);
}

double per_pulse_atom_number_error(double atom_count) {
  if (!(atom_count >= 1.0)) throw std::invalid_argument("atom count must be >= 1");
  return std::numbers::pi * std::numbers::pi / (16.0 * atom_count);
}

double atom_number_error(int order, double atom_count) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  return 2.0 * order * per_pulse_atom_number_error(atom_count);
}

double fidelity_from_errors(double atom_number_err, double protocol_err) {
  const double f = 1.0 - 2.0 * (atom_number_err + protocol_err);
  if (std::isnan(f)) return 0.0;
  return std::clamp(f, 0.0, 1.0);
}

namespace {

struct ChannelTable {
  OptimizationResult excitation;
  std::vector<OptimizationResult> transfer;
  ChannelProbabilities channel;
};

ChannelTable optimize_channels(int max_order, double atom_count, double shift, double decay,
                               const Brackets& brackets) {
  ChannelTable t;
  t.excitation = optimize_excitation_rabi(atom_count, shift, decay, brackets.excitation);
  t.transfer.resize(static_cast<std::size_t>(max_order));
  parallel_for(t.transfer.size(), [&](std::size_t i) {
    t.transfer[i] = optimize_transfer_rabi(static_cast<int>(i) + 1, shift, decay, brackets.transfer);
  });

  // Split the optimal products back into their channel factors.
  OdeParams p;
  p.atom_count = atom_count;
  p.rabi = t.excitation.best_rabi;
  p.shift = shift;
  p.decay = decay;
  t.channel.p_i = integrate_same_mode(p);
  t.channel.p_ii = integrate_cross_mode(p);
  t.channel.p_iii = decay_survival(decay, excitation_duration(atom_count, p.rabi));
  for (int q = 1; q <= max_order; ++q) {
    p.order = q;
    p.transfer_rabi = t.transfer[q - 1].best_rabi;
    t.channel.p_iv.push_back(integrate_transfer(p));
    t.channel.p_v.push_back(decay_survival(decay, transfer_duration(q, p.transfer_rabi)));
  }
  return t;
}

ErrorBudget budget_from_table(const ChannelTable& t, int order, double atom_count) {
  ErrorBudget b;
  b.order = order;
  b.excitation = t.excitation;
  b.transfer.assign(t.transfer.begin(), t.transfer.begin() + order);
  b.channel.p_i = t.channel.p_i;
  b.channel.p_ii = t.channel.p_ii;
  b.channel.p_iii = t.channel.p_iii;
  b.channel.p_iv.assign(t.channel.p_iv.begin(), t.channel.p_iv.begin() + order);
  b.channel.p_v.assign(t.channel.p_v.begin(), t.channel.p_v.begin() + order);
  b.p_success = compose_success(b.channel, order);
  b.e_protocol = 1.0 - b.p_success;
  b.e_atom_number = atom_number_error(order, atom_count);
  b.fidelity = fidelity_from_errors(b.e_atom_number, b.e_protocol);
  return b;
}

}  // namespace

ErrorBudget success_probability(int order, double atom_count, double shift, double decay,
                                const Brackets& brackets) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  return budget_from_table(optimize_channels(order, atom_count, shift, decay, brackets), order, atom_count);
}

double interferometer_fidelity(int order, double atom_count, double shift, double decay,
                               const Brackets& brackets) {
  return success_probability(order, atom_count, shift, decay, brackets).fidelity;
}

std::vector<SweepRow> sweep_error_vs_shift(std::vector<int> orders, std::vector<double> shifts_mhz,
                                           std::vector<double> lifetimes_us, double atom_count,
                                           const Brackets& brackets) {
  if (orders.empty() || shifts_mhz.empty() || lifetimes_us.empty()) {
    throw std::invalid_argument("sweep needs non-empty order, shift and lifetime lists");
  }
  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(orders);
  sort_unique(shifts_mhz);
  sort_unique(lifetimes_us);
  if (orders.front() < 1) throw std::invalid_argument("sweep orders must be >= 1");
  const int max_order = orders.back();

  const std::size_t n_tau = lifetimes_us.size();
  const std::size_t n_shift = shifts_mhz.size();
  std::vector<ChannelTable> tables(n_tau * n_shift);
  parallel_for(tables.size(), [&](std::size_t cell) {
    const double tau = lifetimes_us[cell / n_shift];
    const double mhz = shifts_mhz[cell % n_shift];
    try {
      tables[cell] = optimize_channels(max_order, atom_count, angular_from_mhz(mhz),
                                       decay_rate_from_lifetime(tau), brackets);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep cell lifetime_us=" + std::to_string(tau) +
                               " delta_e_mhz=" + std::to_string(mhz) + ": " + e.what());
    }
  });

  std::vector<SweepRow> rows;
  rows.reserve(orders.size() * tables.size());
  for (int l : orders) {
    for (std::size_t it = 0; it < n_tau; ++it) {
      for (std::size_t is = 0; is < n_shift; ++is) {
        const ErrorBudget b = budget_from_table(tables[it * n_shift + is], l, atom_count);
        rows.push_back({l, lifetimes_us[it], shifts_mhz[is], b.p_success, b.e_protocol,
                        b.has_boundary_optimum()});
      }
    }
  }
  return rows;
}

}  // namespace swnoon
