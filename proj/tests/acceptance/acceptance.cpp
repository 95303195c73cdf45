// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Each criterion carries its own wall-clock budget; exceeding it is a failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/expm.hpp"
#include "oracles/two_level.hpp"
#include "swnoon/blockade_ode.hpp"
#include "swnoon/cli/commands.hpp"
#include "swnoon/error_budget.hpp"
#include "swnoon/estimation.hpp"
#include "swnoon/experiment.hpp"
#include "swnoon/pulse_engine.hpp"

using namespace swnoon;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Fringe wave vector along x, from the default beam numbers.
constexpr double kDkX = (8.0 - (-7.9)) - ((-8.0) - 7.9);

Outcome fringe_law() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto geometry = BeamGeometry::counter_propagating();
  double worst = 0.0;
  for (int l : {1, 2, 3, 5, 20}) {
    const auto gen = build_generation_sequence(l);
    const auto readout = build_readout_sequence(l);
    const auto prepared = run(gen, CollectiveState::vacuum(), geometry).state;
    for (int i = 0; i < 32; ++i) {
      const Displacement dx{u(rng), u(rng), u(rng)};
      const auto shifted = run(std::vector<ProtocolEvent>{Displace{dx}}, prepared, geometry).state;
      const double p = *run(readout, shifted, geometry).detection_probability;
      const double s = std::sin(0.5 * l * kDkX * dx.x);
      worst = std::max(worst, std::abs(p - s * s));
    }
  }
  o.require(worst <= 1e-9, fmt("max deviation %.3g", worst));
  o.detail = o.ok ? fmt("max |p - sin^2| = %.3g", worst) : o.detail;
  return o;
}

Outcome pulse_counts() {
  Outcome o;
  for (int l = 2; l <= 25; ++l) {
    const auto n = pulse_count(build_generation_sequence(l));
    o.require(n == static_cast<std::size_t>(4 * l + 2), "order " + std::to_string(l) + " has " + std::to_string(n));
  }
  if (o.ok) o.detail = "4l+2 pulses for l = 2..25";
  return o;
}

Outcome noon_preparation() {
  Outcome o;
  double worst = 0.0;
  for (int l = 1; l <= 25; ++l) {
    const auto s = run(build_generation_sequence(l), CollectiveState::vacuum()).state;
    const double wa = std::norm(s.amplitude(fock_config(Mode::s_a, l, kStoredA)));
    const double wb = std::norm(s.amplitude(fock_config(Mode::s_b, l, kStoredB)));
    worst = std::max({worst, std::abs(wa + wb - 1.0), std::abs(wa - 0.5), std::abs(wb - 0.5)});
  }
  o.require(worst <= 1e-10, fmt("max weight deviation %.3g", worst));
  if (o.ok) o.detail = fmt("max weight deviation %.3g for l = 1..25", worst);
  return o;
}

Outcome atom_number_errors() {
  Outcome o;
  const double e = atom_number_error(20, 400);
  const double p = per_pulse_atom_number_error(400);
  o.require(std::abs(e - 0.061685) <= 1e-6, fmt("eN(20, 400) = %.8f", e));
  o.require(std::abs(p - 1.5421e-3) <= 1e-7, fmt("per pulse = %.8g", p));
  if (o.ok) o.detail = fmt("eN = %.7f", e) + fmt(", per pulse = %.6g", p);
  return o;
}

Outcome order20_error_anchor() {
  Outcome o;
  const auto b = success_probability(20, 400, kTwoPi * 300, decay_rate_from_lifetime(300));
  o.require(b.e_protocol <= 0.05, fmt("E(20) = %.4f", b.e_protocol));
  if (o.ok) o.detail = fmt("E(20) = %.4f", b.e_protocol);
  return o;
}

Outcome fidelity_budget() {
  Outcome o;
  std::string d;
  for (double tau : {300.0, 400.0}) {
    const double f = interferometer_fidelity(20, 400, kTwoPi * 300, decay_rate_from_lifetime(tau));
    o.require(f >= 0.80 && f <= 0.84, fmt("F(tau=%g)", tau) + fmt(" = %.4f", f));
    d += fmt("F(tau=%g us)", tau) + fmt(" = %.4f ", f);
  }
  if (o.ok) o.detail = d;
  return o;
}

Outcome sweep_properties() {
  Outcome o;
  const std::vector<int> orders = {5, 10, 15, 20};
  const std::vector<double> shifts = {20, 50, 100, 200, 300, 400};
  const std::vector<double> taus = {300, 400};
  const auto rows = sweep_error_vs_shift(orders, shifts, taus, 400);
  auto e = [&](std::size_t io, std::size_t it, std::size_t is) {
    return rows[(io * taus.size() + it) * shifts.size() + is].e_total;
  };
  for (std::size_t io = 0; io < orders.size(); ++io) {
    for (std::size_t it = 0; it < taus.size(); ++it) {
      for (std::size_t is = 0; is < shifts.size(); ++is) {
        const std::string at = "l=" + std::to_string(orders[io]) + fmt(" tau=%g", taus[it]) + fmt(" de=%g", shifts[is]);
        if (is > 0) o.require(e(io, it, is) < e(io, it, is - 1), "not decreasing in shift at " + at);
        if (io > 0) o.require(e(io, it, is) >= e(io - 1, it, is), "decreasing in order at " + at);
        if (it > 0) o.require(e(io, it, is) < e(io, it - 1, is), "tau=400 not below tau=300 at " + at);
      }
    }
  }
  if (o.ok) o.detail = fmt("%g rows; E(20, 300 us, 20 MHz) = ", static_cast<double>(rows.size())) +
                       fmt("%.4f", e(3, 0, 0)) + fmt(", E(20, 300 us, 400 MHz) = %.4f", e(3, 0, 5));
  return o;
}

Outcome ode_oracles() {
  Outcome o;
  // Damped, detuned two-level system against its eigen-decomposition.
  double worst2 = 0.0;
  for (double shift_mhz : {0.0, 3.0, 30.0, 300.0}) {
    for (double tau : {10.0, 300.0}) {
      Generator h{};
      const double a = 0.5 * kTwoPi * 4.0;
      h[0][1] = h[1][0] = -a;
      h[1][1] = {kTwoPi * shift_mhz, -0.5 / tau};
      const double t = std::numbers::pi / (2 * a);
      const auto got = integrate_general(generator_from_hamiltonian(h), Amplitudes{{std::complex<double>{1.0, 0.0}}}, t);
      oracle::TwoLevel tl{0.0, -a, -a, h[1][1]};
      const auto want = tl.evolve({1.0, 0.0}, t);
      for (int i = 0; i < 2; ++i) worst2 = std::max(worst2, std::abs(got.c[i] - want[i]));
    }
  }
  o.require(worst2 <= 1e-10, fmt("two-level deviation %.3g", worst2));

  // Undamped three-level ladders against the matrix exponential.
  double worst3 = 0.0, norm_drift = 0.0;
  for (double shift_mhz : {0.0, 20.0, 300.0}) {
    for (double n : {2.0, 400.0}) {
      OdeParams p;
      p.atom_count = n;
      p.rabi = kTwoPi * 0.3;
      p.transfer_rabi = kTwoPi * 0.3;
      p.shift = kTwoPi * shift_mhz;
      p.decay = 0.0;
      p.order = 7;
      for (int which = 0; which < 2; ++which) {
        const Generator h = which == 0 ? same_mode_hamiltonian(p) : transfer_hamiltonian(p);
        const double t = which == 0 ? excitation_duration(n, p.rabi) : transfer_duration(p.order, p.transfer_rabi);
        const Amplitudes init = which == 0 ? Amplitudes{{std::complex<double>{1.0, 0.0}}}
                                           : Amplitudes{{std::complex<double>{}, std::complex<double>{1.0, 0.0}}};
        const auto got = integrate_general(generator_from_hamiltonian(h), init, t);
        oracle::Mat<3> hm{};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) hm[i][j] = h[i][j];
        const auto want = oracle::propagate(hm, oracle::Vec<3>{init.c[0], init.c[1], init.c[2]}, t);
        for (int i = 0; i < 3; ++i) worst3 = std::max(worst3, std::abs(got.c[i] - want[i]));
        norm_drift = std::max(norm_drift, std::abs(got.total_probability() - 1.0));
      }
    }
  }
  o.require(worst3 <= 1e-8, fmt("three-level deviation %.3g", worst3));
  o.require(norm_drift <= 1e-10, fmt("norm drift %.3g", norm_drift));
  if (o.ok) o.detail = fmt("2-level %.2g", worst2) + fmt(", 3-level %.2g", worst3) + fmt(", norm %.2g", norm_drift);
  return o;
}

Outcome optimizer_oracle() {
  Outcome o;
  // Shifts up to 200 MHz keep the 4096-point reference grid inside the budget
  // on a single core; the bracket is the default one.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> log_shift(std::log(20.0), std::log(200.0));
  std::uniform_real_distribution<double> atoms(100.0, 1000.0);
  std::uniform_real_distribution<double> lifetime(100.0, 1000.0);
  const RabiBracket br;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double shift = kTwoPi * std::exp(log_shift(rng));
    const double n = atoms(rng);
    const double gamma = 1.0 / lifetime(rng);
    const auto r = optimize_excitation_rabi(n, shift, gamma, br);
    double brute = 0.0;
    const double ratio = std::log(br.hi / br.lo);
    for (int i = 0; i < 4096; ++i) {
      const double rabi = br.lo * std::exp(ratio * i / 4095.0);
      brute = std::max(brute, excitation_product(n, shift, gamma, rabi));
    }
    const double rel = std::abs(r.best_product - brute) / brute;
    worst = std::max(worst, rel);
    o.require(rel <= 1e-3, fmt("tuple %g", k) + fmt(" relative gap %.3g", rel));
    o.require(r.best_product >= brute - 1e-3 * brute, "optimizer below the grid");
  }
  if (o.ok) o.detail = fmt("max relative gap %.3g over 10 tuples", worst);
  return o;
}

Outcome ensemble_checks() {
  Outcome o;
  const auto s = energy_shift(100, 7.6);
  const double n = atom_number(1.7e12, 3.8);
  o.require(std::abs(s.magnitude_mhz - 300.0) <= 30.0, fmt("shift %.2f MHz", s.magnitude_mhz));
  o.require(std::abs(n - 391.0) <= 1.0, fmt("N = %.2f", n));
  if (o.ok) o.detail = fmt("shift %.1f MHz", s.magnitude_mhz) + fmt(", N = %.1f", n);
  return o;
}

Outcome estimation_round_trip() {
  Outcome o;
  const Displacement dir{1.0, 0.0, 0.0};
  const auto geometry = BeamGeometry::counter_propagating();
  const double dk = phase(fringe_wave_vector(geometry), dir);
  double se[2] = {0.0, 0.0};
  int slot = 0;
  for (int l : {1, 20}) {
    const double period = fringe_period(l, geometry, dir);
    const double x0 = 0.29 * period;
    // Same phase layout in both orders: 8 settings over 0.9 of a period.
    std::vector<double> settings(8), rel(8);
    for (int i = 0; i < 8; ++i) {
      settings[i] = 0.9 * period * i / 7.0;
      rel[i] = settings[i] - x0;
    }
    const auto fringe = fringe_scan(l, dir, rel, geometry);
    std::vector<FringeSample> samples;
    for (int i = 0; i < 8; ++i) {
      const double p = fringe[i].detection_probability;
      samples.push_back({settings[i], 1e5, static_cast<double>(simulate_counts(p, 100000, stream_seed(7, i)))});
    }
    const auto est = estimate_displacement(samples, l, dk);
    const double err = circular_distance(est.offset_um, x0, period);
    o.require(err <= 3 * est.stderr_um, "l=" + std::to_string(l) + fmt(" error %.3g", err) + fmt(" vs stderr %.3g", est.stderr_um));
    se[slot++] = est.stderr_um;
  }
  o.require(se[1] <= 0.1 * se[0], fmt("stderr ratio %.3g", se[1] / se[0]));
  if (o.ok) o.detail = fmt("stderr l=1 %.3g um", se[0]) + fmt(", l=20 %.3g um", se[1]) + fmt(", ratio %.3f", se[1] / se[0]);
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "swnoon_acceptance";
  fs::create_directories(dir);
  auto produce = [&](const std::vector<std::string>& base, const std::string& name) {
    auto args = base;
    args.push_back("--out");
    args.push_back((dir / name).string());
    std::ostringstream out, err;
    const int rc = cli::run_cli(args, out, err);
    std::ifstream f(dir / name, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return std::make_pair(rc, s.str());
  };
  const std::vector<std::vector<std::string>> runs = {
      {"fringe", "--order", "20", "--shots", "100000", "--seed", "42", "--min", "-0.01", "--max", "0.01", "--steps", "64"},
      {"generate", "--order", "6", "--seed", "42"},
      {"error-sweep", "--orders", "2,3", "--shifts-mhz", "50,100", "--lifetimes-us", "300", "--seed", "42"},
  };
  int idx = 0;
  for (const auto& r : runs) {
    const auto a = produce(r, "run" + std::to_string(idx) + "a.csv");
    const auto b = produce(r, "run" + std::to_string(idx) + "b.csv");
    o.require(a.first == 0 && b.first == 0, r[0] + " exited nonzero");
    o.require(!a.second.empty() && a.second == b.second, r[0] + " output differs between runs");
    ++idx;
  }
  if (o.ok) o.detail = "fringe, generate and error-sweep CSVs byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "fringe law", 5, fringe_law},
      {2, "pulse count", 1, pulse_counts},
      {3, "NOON preparation", 5, noon_preparation},
      {4, "atom-number error", 1, atom_number_errors},
      {5, "E(20) anchor", 60, order20_error_anchor},
      {6, "fidelity budget", 60, fidelity_budget},
      {7, "E(l) sweep properties", 600, sweep_properties},
      {8, "ODE oracles", 10, ode_oracles},
      {9, "optimizer oracle", 60, optimizer_oracle},
      {10, "ensemble parameters", 1, ensemble_checks},
      {11, "estimation round trip", 30, estimation_round_trip},
      {12, "determinism", 5, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail += fmt(" (over the %g s budget)", c.budget_s);
    }
    failed += o.ok ? 0 : 1;
    std::printf("criterion %2d %-24s %s  %.2fs  %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
