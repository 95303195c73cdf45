#include "swnoon/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "swnoon/blockade_ode.hpp"
#include "swnoon/cli/config.hpp"
#include "swnoon/cli/csv.hpp"
#include "swnoon/collective_state.hpp"
#include "swnoon/error_budget.hpp"
#include "swnoon/estimation.hpp"
#include "swnoon/experiment.hpp"
#include "swnoon/pulse_engine.hpp"

namespace swnoon::cli {

namespace {

// Flag name -> RunConfig key. Flags are kept as strings so that they can be
// layered over the config file with the same parser.
const std::vector<std::pair<std::string, std::string>>& override_flags() {
  static const std::vector<std::pair<std::string, std::string>> flags = {
      {"--order", "order"},
      {"--atoms", "atom_count"},
      {"--shift-mhz", "energy_shift_mhz"},
      {"--lifetime-us", "lifetime_us"},
      {"--k-gr-a", "k_gr_a"},
      {"--k-ra-sa", "k_ra_sa"},
      {"--k-gr-b", "k_gr_b"},
      {"--k-rb-sb", "k_rb_sb"},
      {"--displacement", "displacement"},
      {"--shots", "shots"},
      {"--seed", "seed"},
      {"--out", "out"},
  };
  return flags;
}

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

// Writes `body` to cfg.out, or to stdout when no path is set.
void emit(const Context& ctx, const std::string& body) {
  if (ctx.cfg.out.empty()) {
    ctx.out << body;
    return;
  }
  std::ofstream f(ctx.cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + ctx.cfg.out + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write to " + ctx.cfg.out + " failed");
}

Displacement unit_direction(const std::string& text) {
  const Displacement d = parse_displacement(text, "--direction");
  const double n = d.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw UsageError("--direction must be a non-zero vector");
  return (1.0 / n) * d;
}

// ---- generate -------------------------------------------------------------

struct GenerateOpts {
  bool pulses_only = false;
};

int cmd_generate(Context& ctx, const GenerateOpts& o) {
  const auto& cfg = ctx.cfg;
  const auto seq = build_generation_sequence(cfg.order);
  if (o.pulses_only) {
    ctx.out << pulse_count(seq) << '\n';
    return kExitOk;
  }
  CollectiveState state = run(seq, CollectiveState::vacuum(), cfg.beams).state;
  if (cfg.displacement.norm() > 0.0) state = displace(state, cfg.displacement, cfg.beams);

  const CollectiveState target = noon_state(cfg.order);
  double subspace = 0.0;
  for (const auto& [c, a] : target.branches()) subspace += std::norm(state.amplitude(c));
  const double n = norm(state);

  std::ostringstream csv;
  csv << "s_a,s_b,r_a,r_b,k_s_a,k_s_b,amplitude_re,amplitude_im,weight\n";
  for (const auto& [c, a] : state.branches()) {
    csv << c.occ(Mode::s_a) << ',' << c.occ(Mode::s_b) << ',' << c.occ(Mode::r_a) << ',' << c.occ(Mode::r_b)
        << ',' << c.k(Mode::s_a).to_string() << ',' << c.k(Mode::s_b).to_string() << ','
        << format_number(a.real()) << ',' << format_number(a.imag()) << ',' << format_number(std::norm(a))
        << '\n';
  }

  ctx.out << "order=" << cfg.order << " pulses=" << pulse_count(seq) << " branches=" << state.size() << '\n';
  if (cfg.out.empty()) {
    ctx.out << csv.str();
  } else {
    emit(ctx, csv.str());
  }
  ctx.out << "norm=" << format_number(n) << '\n';
  ctx.out << "noon_subspace_weight=" << format_number(subspace) << '\n';
  ctx.out << "noon_overlap=" << format_number(std::abs(overlap(target, state))) << '\n';
  return kExitOk;
}

// ---- fringe ---------------------------------------------------------------

struct FringeOpts {
  double min = -0.1;
  double max = 0.1;
  int steps = 101;
  std::string direction = "1,0,0";
  double offset = 0.0;
  double efficiency = 1.0;
};

int cmd_fringe(Context& ctx, const FringeOpts& o) {
  const auto& cfg = ctx.cfg;
  if (o.steps < 2) throw UsageError("--steps must be >= 2");
  if (!std::isfinite(o.min) || !std::isfinite(o.max) || !(o.max > o.min)) {
    throw UsageError("--max must be greater than --min");
  }
  if (!(o.efficiency >= 0.0 && o.efficiency <= 1.0)) throw UsageError("--efficiency must lie in [0, 1]");
  const Displacement dir = unit_direction(o.direction);

  std::vector<double> settings(static_cast<std::size_t>(o.steps));
  const double step = (o.max - o.min) / (o.steps - 1);
  for (int i = 0; i < o.steps; ++i) settings[i] = i + 1 == o.steps ? o.max : o.min + i * step;

  // The engine sees the physical displacement origin + (s - x0) * direction.
  std::vector<double> shifted(settings.size());
  std::transform(settings.begin(), settings.end(), shifted.begin(), [&](double s) { return s - o.offset; });
  const auto results = fringe_scan(cfg.order, dir, shifted, cfg.beams, cfg.displacement);
  const WaveVector dk = fringe_wave_vector(cfg.beams);

  const bool with_counts = cfg.shots > 0;
  std::ostringstream csv;
  csv << "displacement_um,probability" << (with_counts ? ",counts" : "") << ",expected_sin2\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double p = results[i].detection_probability;
    const double half = 0.5 * cfg.order * phase(dk, results[i].displacement);
    const double expected = std::sin(half) * std::sin(half);
    csv << format_number(settings[i]) << ',' << format_number(p);
    if (with_counts) {
      const double detected = std::clamp(o.efficiency * p, 0.0, 1.0);
      csv << ',' << simulate_counts(detected, cfg.shots, stream_seed(cfg.seed, i));
    }
    csv << ',' << format_number(expected) << '\n';
  }
  emit(ctx, csv.str());
  return kExitOk;
}

// ---- error-sweep ----------------------------------------------------------

struct SweepOpts {
  std::string orders = "5,10,15,20";
  std::string shifts = "20,50,100,200,300,400";
  std::string lifetimes = "300,400";
  std::string plot_script;
};

std::string plot_script_for(const std::string& csv_path) {
  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
        "# E(l) against the Rydberg energy shift; one panel per lifetime.\n"
        "import csv\n"
        "import sys\n"
        "from collections import defaultdict\n\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n\n"
        "path = sys.argv[1] if len(sys.argv) > 1 else \""
     << csv_path
     << "\"\n"
        "series = defaultdict(list)\n"
        "with open(path, newline=\"\") as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        key = (float(row[\"lifetime_us\"]), int(row[\"order\"]))\n"
        "        series[key].append((float(row[\"delta_e_mhz\"]), float(row[\"e_total\"])))\n\n"
        "lifetimes = sorted({k[0] for k in series})\n"
        "fig, axes = plt.subplots(1, len(lifetimes), figsize=(5 * len(lifetimes), 4), sharey=True, squeeze=False)\n"
        "for ax, tau in zip(axes[0], lifetimes):\n"
        "    for (t, order), pts in sorted(series.items()):\n"
        "        if t != tau:\n"
        "            continue\n"
        "        pts.sort()\n"
        "        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\", label=f\"l = {order}\")\n"
        "    ax.set_title(f\"tau = {tau:g} us\")\n"
        "    ax.set_xlabel(\"energy shift (MHz)\")\n"
        "    ax.legend()\n"
        "axes[0][0].set_ylabel(\"E(l)\")\n"
        "fig.tight_layout()\n"
        "fig.savefig(path.rsplit(\".\", 1)[0] + \".png\", dpi=150)\n";
  return py.str();
}

int cmd_error_sweep(Context& ctx, const SweepOpts& o) {
  const auto& cfg = ctx.cfg;
  const auto orders = parse_int_list(o.orders, "--orders");
  const auto shifts = parse_double_list(o.shifts, "--shifts-mhz");
  const auto lifetimes = parse_double_list(o.lifetimes, "--lifetimes-us");
  if (orders.empty() || shifts.empty() || lifetimes.empty()) throw UsageError("sweep ranges must be non-empty");
  for (int l : orders) {
    if (l < 1) throw UsageError("--orders entries must be >= 1");
  }
  for (double v : shifts) {
    if (!(v > 0.0)) throw UsageError("--shifts-mhz entries must be positive");
  }
  for (double v : lifetimes) {
    if (!(v > 0.0)) throw UsageError("--lifetimes-us entries must be positive");
  }

  const auto rows = sweep_error_vs_shift(orders, shifts, lifetimes, cfg.atom_count);
  std::ostringstream csv;
  csv << kSweepHeader << '\n';
  std::size_t boundary = 0;
  for (const auto& r : rows) {
    csv << r.order << ',' << format_number(r.lifetime_us) << ',' << format_number(r.delta_e_mhz) << ','
        << format_number(r.p_success) << ',' << format_number(r.e_total) << '\n';
    boundary += r.boundary_optimum ? 1 : 0;
  }
  emit(ctx, csv.str());
  if (boundary > 0) {
    ctx.err << "swnoon: warning: " << boundary << " row(s) have a Rabi optimum on the search bracket edge\n";
  }

  std::string script = o.plot_script;
  if (script.empty() && !cfg.out.empty()) script = cfg.out + ".plot.py";
  if (!script.empty()) {
    std::ofstream f(script, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + script + " for writing");
    f << plot_script_for(cfg.out.empty() ? "sweep.csv" : cfg.out);
  }
  return kExitOk;
}

// ---- estimate -------------------------------------------------------------

struct EstimateOpts {
  std::string path;
  std::string direction = "1,0,0";
};

int cmd_estimate(Context& ctx, const EstimateOpts& o) {
  const auto& cfg = ctx.cfg;
  std::ifstream in(o.path, std::ios::binary);
  if (!in) throw UsageError("cannot open counts file " + o.path);
  const CsvTable t = read_csv(in, o.path);

  const auto col_x = t.column("displacement_um");
  auto col_n = t.column("count");
  if (!col_n) col_n = t.column("counts");
  const auto col_shots = t.column("shots");
  if (!col_x) throw UsageError(o.path + ":1: missing column displacement_um");
  if (!col_n) throw UsageError(o.path + ":1: missing column count");
  if (!col_shots && cfg.shots <= 0) {
    throw UsageError(o.path + ":1: no shots column; pass --shots or set shots in the config");
  }
  if (t.rows.empty()) throw UsageError(o.path + ": no data rows");

  std::vector<FringeSample> samples;
  samples.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const std::string where = o.path + ":" + std::to_string(t.line_numbers[i]);
    const auto& row = t.rows[i];
    FringeSample s;
    s.setting_um = parse_double(row[*col_x], where + ": displacement_um");
    s.count = parse_double(row[*col_n], where + ": count");
    s.shots = col_shots ? parse_double(row[*col_shots], where + ": shots") : static_cast<double>(cfg.shots);
    if (!(s.shots > 0.0) || s.count < 0.0 || s.count > s.shots) {
      throw UsageError(where + ": need 0 <= count <= shots and shots > 0");
    }
    samples.push_back(s);
  }

  const Displacement dir = unit_direction(o.direction);
  const double dk = phase(fringe_wave_vector(cfg.beams), dir);
  if (dk == 0.0) throw UsageError("fringe wave vector is orthogonal to --direction");
  const auto est = estimate_displacement(samples, cfg.order, dk);

  ctx.out << "order=" << cfg.order << '\n';
  ctx.out << "offset_um=" << format_number(est.offset_um) << '\n';
  ctx.out << "stderr_um=" << format_number(est.stderr_um) << '\n';
  ctx.out << "period_um=" << format_number(est.period_um) << '\n';
  ctx.out << "iterations=" << est.iterations << '\n';
  if (est.ambiguous) {
    ctx.err << "swnoon: warning: settings span at least one fringe period (" << format_number(est.period_um)
            << " um); offset is only defined modulo the period\n";
  }
  return kExitOk;
}

// ---- feasibility ----------------------------------------------------------

struct FeasibilityOpts {
  int n = 0;
  double radius_um = 0.0;
  double density_cm3 = 0.0;
  double target_shift_mhz = FeasibilityTargets{}.shift_mhz;
  double target_error = FeasibilityTargets{}.error;
};

int cmd_feasibility(Context& ctx, const FeasibilityOpts& o) {
  const auto& cfg = ctx.cfg;
  EnsembleSpec ensemble{o.radius_um, o.density_cm3, o.n};
  try {
    ensemble.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  FeasibilityTargets targets;
  targets.shift_mhz = o.target_shift_mhz;
  targets.error = o.target_error;
  const auto r = feasibility_report(ensemble, targets, cfg.order, cfg.lifetime_us);

  auto& out = ctx.out;
  out << "principal_n=" << ensemble.principal_n << '\n';
  out << "radius_um=" << format_number(ensemble.radius_um) << '\n';
  out << "density_cm3=" << format_number(ensemble.density_cm3) << '\n';
  out << "min_pair_shift_mhz=" << format_number(r.shift.magnitude_mhz) << '\n';
  out << "shift_sign=" << (r.shift.sign > 0 ? "repulsive" : "attractive") << '\n';
  if (!r.shift.in_fit_range) out << "shift_note=principal number outside the fitted range\n";
  out << "atom_number=" << format_number(r.atom_count) << '\n';
  out << "order=" << cfg.order << '\n';
  out << "lifetime_us=" << format_number(cfg.lifetime_us) << '\n';
  out << "p_success=" << format_number(r.budget.p_success) << '\n';
  out << "e_protocol=" << format_number(r.budget.e_protocol) << '\n';
  out << "e_atom_number=" << format_number(r.budget.e_atom_number) << '\n';
  out << "fidelity=" << format_number(r.fidelity) << '\n';
  out << "shift_check=" << (r.shift_ok ? "pass" : "fail") << '\n';
  out << "error_check=" << (r.error_ok ? "pass" : "fail") << '\n';
  out << "verdict=" << (r.pass ? "pass" : "fail") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for spin-wave NOON states in Rydberg-blockaded ensembles", "swnoon"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::map<std::string, std::string> flag_values;
  for (const auto& [flag, key] : override_flags()) {
    app.add_option(flag, flag_values[key], "overrides '" + key + "'");
  }

  GenerateOpts gen;
  auto* sc_gen = app.add_subcommand("generate", "prepare the NOON state and print its branches");
  sc_gen->add_flag("--pulses", gen.pulses_only, "print only the number of pulses");

  FringeOpts fr;
  auto* sc_fr = app.add_subcommand("fringe", "scan the displacement and record the readout probability");
  sc_fr->add_option("--min", fr.min, "first setting, um")->capture_default_str();
  sc_fr->add_option("--max", fr.max, "last setting, um")->capture_default_str();
  sc_fr->add_option("--steps", fr.steps, "number of settings")->capture_default_str();
  sc_fr->add_option("--direction", fr.direction, "scan direction x,y,z")->capture_default_str();
  sc_fr->add_option("--offset", fr.offset, "true offset x0 of the settings, um")->capture_default_str();
  sc_fr->add_option("--efficiency", fr.efficiency, "detector efficiency applied to counts")->capture_default_str();

  SweepOpts sw;
  auto* sc_sw = app.add_subcommand("error-sweep", "E(l) over orders, energy shifts and lifetimes");
  sc_sw->add_option("--orders", sw.orders)->capture_default_str();
  sc_sw->add_option("--shifts-mhz", sw.shifts)->capture_default_str();
  sc_sw->add_option("--lifetimes-us", sw.lifetimes)->capture_default_str();
  sc_sw->add_option("--plot-script", sw.plot_script, "matplotlib script path (default: <out>.plot.py)");

  EstimateOpts es;
  auto* sc_es = app.add_subcommand("estimate", "fit the displacement offset to a counts CSV");
  sc_es->add_option("counts", es.path, "CSV with displacement_um, count and optionally shots")->required();
  sc_es->add_option("--direction", es.direction, "scan direction x,y,z")->capture_default_str();

  FeasibilityOpts fe;
  auto* sc_fe = app.add_subcommand("feasibility", "check an ensemble against the shift and error targets");
  sc_fe->add_option("--n", fe.n, "principal quantum number")->required();
  sc_fe->add_option("--radius-um", fe.radius_um, "ensemble radius, um")->required();
  sc_fe->add_option("--density-cm3", fe.density_cm3, "atomic density, cm^-3")->required();
  sc_fe->add_option("--target-shift-mhz", fe.target_shift_mhz)->capture_default_str();
  sc_fe->add_option("--target-error", fe.target_error)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("swnoon");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    Context ctx{RunConfig{}, out, err};
    if (!config_path.empty()) {
      for (const auto& [k, v] : read_config_file(config_path)) apply_setting(ctx.cfg, k, v);
    }
    for (const auto& [flag, key] : override_flags()) {
      if (app.count(flag) > 0) apply_setting(ctx.cfg, key, flag_values[key]);
    }
    ctx.cfg.validate();

    if (sc_gen->parsed()) return cmd_generate(ctx, gen);
    if (sc_fr->parsed()) return cmd_fringe(ctx, fr);
    if (sc_sw->parsed()) return cmd_error_sweep(ctx, sw);
    if (sc_es->parsed()) return cmd_estimate(ctx, es);
    if (sc_fe->parsed()) return cmd_feasibility(ctx, fe);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    err << "swnoon: usage-error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "swnoon: usage-error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EstimationError& e) {
    err << "swnoon: estimation-error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "swnoon: runtime-error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace swnoon::cli
