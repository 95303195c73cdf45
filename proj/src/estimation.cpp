#include "swnoon/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swnoon/kernels.hpp"

namespace swnoon {

namespace {

constexpr std::size_t kOffsetGrid = 720;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 40;
// Stop once the step is this fraction of the standard error.
constexpr double kStepTolerance = 1e-6;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace

std::int64_t simulate_counts(double probability, std::int64_t shots, std::uint64_t seed) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("detection probability must lie in [0, 1], got " + std::to_string(probability));
  }
  if (shots < 1) throw std::invalid_argument("shot count must be positive");
  if (probability == 0.0) return 0;
  if (probability == 1.0) return shots;
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> dist(shots, probability);
  return dist(rng);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double circular_distance(double a, double b, double period) {
  const double d = wrap(a - b, period);
  return std::min(d, period - d);
}

DisplacementEstimate estimate_displacement(std::span<const FringeSample> samples, int order,
                                           double dk_projection) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (!(std::abs(dk_projection) > 0.0) || !std::isfinite(dk_projection)) {
    throw std::invalid_argument("fringe wave-vector projection must be finite and nonzero");
  }

  std::vector<double> x, frac, shots;
  std::set<double> distinct;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.setting_um) || !(s.shots > 0.0) || !(s.count >= 0.0) || s.count > s.shots) {
      throw std::invalid_argument("sample " + std::to_string(i) + " needs shots > 0 and 0 <= count <= shots");
    }
    x.push_back(s.setting_um);
    frac.push_back(s.count / s.shots);
    shots.push_back(s.shots);
    distinct.insert(s.setting_um);
  }
  if (distinct.size() < 3) throw std::invalid_argument("need at least 3 distinct displacement settings");

  const double kappa = std::abs(order * dk_projection);
  DisplacementEstimate est;
  est.period_um = 2.0 * std::numbers::pi / kappa;
  est.ambiguous = *distinct.rbegin() - *distinct.begin() >= est.period_um;

  auto sums = [&](double x0) { return kernels::fringe_normal_equations(x, frac, shots, x0, kappa); };

  double best_x0 = 0.0;
  double best_cost = sums(0.0).cost;
  for (std::size_t j = 1; j < kOffsetGrid; ++j) {
    const double x0 = est.period_um * static_cast<double>(j) / kOffsetGrid;
    const double c = sums(x0).cost;
    if (c < best_cost) {
      best_cost = c;
      best_x0 = x0;
    }
  }

  // Fisher scoring on the binomial likelihood. score/information is the
  // scoring step; the negative log-likelihood is the merit for backtracking
  // because the chi^2 weights move with x0.
  std::vector<double> model(x.size());
  auto nll = [&](double at) {
    kernels::fringe_model(x, at, kappa, model);
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double hits = frac[i] * shots[i];
      const double misses = shots[i] - hits;
      if (hits > 0.0) v -= hits * std::log(std::max(model[i], std::numeric_limits<double>::min()));
      if (misses > 0.0) v -= misses * std::log(std::max(1.0 - model[i], std::numeric_limits<double>::min()));
    }
    return v;
  };

  double x0 = best_x0;
  kernels::FringeSums cur = sums(x0);
  double cur_nll = nll(x0);
  bool converged = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    est.iterations = it + 1;
    if (!(cur.information > 0.0)) {
      converged = true;  // flat direction: every setting sits on a fringe extremum
      break;
    }
    double step = cur.score / cur.information;
    if (std::abs(step) <= kStepTolerance / std::sqrt(cur.information) ||
        std::abs(step) <= 1e-14 * est.period_um) {
      converged = true;
      break;
    }
    double trial_nll = nll(x0 + step);
    int halvings = 0;
    while (trial_nll >= cur_nll && halvings < kMaxHalvings) {
      step *= 0.5;
      trial_nll = nll(x0 + step);
      ++halvings;
    }
    if (trial_nll >= cur_nll) {
      converged = true;  // no descent left at machine precision
      break;
    }
    x0 += step;
    cur_nll = trial_nll;
    cur = sums(x0);
  }
  if (!converged) {
    throw EstimationError("displacement fit did not converge in " + std::to_string(kMaxIterations) +
                          " iterations");
  }

  est.offset_um = wrap(x0, est.period_um);
  est.stderr_um = cur.information > 0.0 ? 1.0 / std::sqrt(cur.information)
                                        : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace swnoon
