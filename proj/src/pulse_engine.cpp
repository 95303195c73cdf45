#include "swnoon/pulse_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swnoon {

namespace {

struct Levels {
  Mode rydberg;
  Mode other_rydberg;
  Mode storage;
};

Levels levels_of(Transition t) {
  switch (t) {
    case Transition::g_ra:
    case Transition::ra_sa:
      return {Mode::r_a, Mode::r_b, Mode::s_a};
    case Transition::g_rb:
    case Transition::rb_sb:
      return {Mode::r_b, Mode::r_a, Mode::s_b};
  }
  throw std::invalid_argument("undefined transition " + std::to_string(static_cast<int>(t)));
}

enum class Role { unaffected, lower, upper };

struct Pairing {
  Role role = Role::unaffected;
  BasisConfig partner;
};

Pairing pair_collective(const BasisConfig& c, const Levels& lv, const WaveCombination& k) {
  if (c.occ(lv.rydberg) == 1) {
    return {Role::upper, c.with(lv.rydberg, 0, {})};
  }
  if (c.occ(lv.other_rydberg) != 0) return {};  // blockaded
  return {Role::lower, c.with(lv.rydberg, 1, k)};
}

Pairing pair_single_atom(const BasisConfig& c, const Levels& lv, const WaveCombination& k) {
  const auto n_s = c.occ(lv.storage);
  if (c.occ(lv.rydberg) == 1) {
    BasisConfig p = c;
    p.occupation[index(lv.storage)] = n_s + 1;
    p.wave[index(lv.storage)] = c.k(lv.storage) + (c.k(lv.rydberg) - k);
    p.occupation[index(lv.rydberg)] = 0;
    p.wave[index(lv.rydberg)] = {};
    return {Role::lower, p};
  }
  if (n_s == 0 || c.occ(lv.other_rydberg) != 0) return {};
  const auto& stored = c.k(lv.storage);
  if (!stored.divisible_by(n_s)) {
    throw std::domain_error("storage mode holds excitations with unequal wave vectors");
  }
  const auto per = stored.divided_by(n_s);
  BasisConfig p = c;
  p.occupation[index(lv.storage)] = n_s - 1;
  p.wave[index(lv.storage)] = stored - per;
  p.occupation[index(lv.rydberg)] = 1;
  p.wave[index(lv.rydberg)] = per + k;
  return {Role::upper, p};
}

}  // namespace

Beam beam_of(Transition t) {
  switch (t) {
    case Transition::g_ra: return Beam::g_ra;
    case Transition::g_rb: return Beam::g_rb;
    case Transition::ra_sa: return Beam::ra_sa;
    case Transition::rb_sb: return Beam::rb_sb;
  }
  throw std::invalid_argument("undefined transition " + std::to_string(static_cast<int>(t)));
}

PulseSpec PulseSpec::on(Transition t, double area) {
  return {t, area, WaveCombination::of(beam_of(t))};
}

CollectiveState apply_pulse(const CollectiveState& state, const PulseSpec& pulse) {
  const Levels lv = levels_of(pulse.transition);
  const bool collective = is_collective(pulse.transition);
  const double c = std::cos(0.5 * pulse.area);
  const Complex mis{0.0, -std::sin(0.5 * pulse.area)};

  CollectiveState::BranchMap out;
  for (const auto& [cfg, amp] : state.branches()) {
    if (cfg.rydberg_count() > 1) {
      throw std::logic_error("branch violates the single-Rydberg blockade invariant");
    }
    const Pairing p = collective ? pair_collective(cfg, lv, pulse.wave)
                                 : pair_single_atom(cfg, lv, pulse.wave);
    if (p.role == Role::unaffected) {
      out[cfg] += amp;
      continue;
    }
    // The rotation is symmetric in lower/upper apart from which side is which,
    // so each branch contributes cos to itself and -i sin to its partner.
    out[cfg] += c * amp;
    out[canonical(p.partner)] += mis * amp;
  }
  return CollectiveState::from_map(std::move(out));
}

CollectiveState displace(const CollectiveState& state, const Displacement& dx,
                         const BeamGeometry& geometry) {
  CollectiveState::BranchMap out;
  for (const auto& [cfg, amp] : state.branches()) {
    const double ph = phase(geometry.materialize(cfg.total_wave()), dx);
    out.emplace(cfg, amp * std::polar(1.0, ph));
  }
  return CollectiveState::from_map(std::move(out));
}

std::vector<ProtocolEvent> build_generation_sequence(int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1, got " + std::to_string(order));
  constexpr double pi = std::numbers::pi;
  std::vector<ProtocolEvent> seq;
  seq.reserve(static_cast<std::size_t>(4 * order + 2));
  auto add = [&](Transition t, double area) { seq.emplace_back(PulseSpec::on(t, area)); };

  // Split one r_a excitation between r_a and s_a.
  add(Transition::g_ra, pi);
  add(Transition::ra_sa, pi / 2);
  // Hand the r_a arm over to r_b.
  add(Transition::g_rb, pi);
  add(Transition::g_ra, pi);
  add(Transition::g_rb, pi);
  // Each block adds one stored excitation to both arms.
  for (int i = 0; i < order - 1; ++i) {
    add(Transition::g_ra, pi);
    add(Transition::rb_sb, pi);
    add(Transition::g_rb, pi);
    add(Transition::ra_sa, pi);
  }
  // Store the trailing r_b excitation.
  add(Transition::rb_sb, pi);
  return seq;
}

std::vector<ProtocolEvent> build_inverse_generation_sequence(int order) {
  const auto gen = build_generation_sequence(order);
  std::vector<ProtocolEvent> seq;
  seq.reserve(gen.size());
  for (auto it = gen.rbegin(); it != gen.rend(); ++it) {
    seq.emplace_back(std::get<PulseSpec>(*it).inverse());
  }
  return seq;
}

std::vector<ProtocolEvent> build_readout_sequence(int order) {
  auto seq = build_inverse_generation_sequence(order);
  seq.pop_back();  // no final k_gra pulse
  // The closing pi/2 on r_a<->s_a turns with the same sense as the opening one,
  // so the arms interfere as 1 +- exp(i l dk.dx) with s_a bright at dx = 0.
  auto& closing = std::get<PulseSpec>(seq.back());
  closing = closing.inverse();
  seq.emplace_back(IonizeMeasure{});
  return seq;
}

std::size_t pulse_count(std::span<const ProtocolEvent> events) {
  std::size_t n = 0;
  for (const auto& e : events) n += std::holds_alternative<PulseSpec>(e) ? 1 : 0;
  return n;
}

RunResult run(std::span<const ProtocolEvent> events, const CollectiveState& initial,
              const BeamGeometry& geometry) {
  RunResult r{initial, std::nullopt};
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (r.detection_probability) {
      throw std::invalid_argument("event " + std::to_string(i) + " follows IonizeMeasure");
    }
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (std::is_same_v<T, PulseSpec>) {
            r.state = apply_pulse(r.state, ev);
          } else if constexpr (std::is_same_v<T, Displace>) {
            r.state = displace(r.state, ev.dx, geometry);
          } else {
            const double n = norm(r.state);
            r.detection_probability = n > 0.0 ? rydberg_probability(r.state) / (n * n) : 0.0;
          }
        },
        events[i]);
  }
  return r;
}

WaveVector fringe_wave_vector(const BeamGeometry& geometry) {
  return geometry.materialize(kStoredA) - geometry.materialize(kStoredB);
}

double fringe_period(int order, const BeamGeometry& geometry, const Displacement& direction) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const double proj = std::abs(phase(fringe_wave_vector(geometry), direction));
  if (proj == 0.0) throw std::domain_error("fringe wave vector is orthogonal to the scan direction");
  return 2.0 * std::numbers::pi / (order * proj);
}

std::vector<FringeResult> fringe_scan(int order, const Displacement& direction,
                                      std::span<const double> displacements,
                                      const BeamGeometry& geometry, const Displacement& origin) {
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("scan direction must be a unit vector");
  }
  const auto gen = build_generation_sequence(order);
  const auto readout = build_readout_sequence(order);
  const CollectiveState prepared = run(gen, CollectiveState::vacuum(), geometry).state;

  std::vector<FringeResult> out;
  out.reserve(displacements.size());
  for (double s : displacements) {
    const Displacement dx = origin + s * direction;
    const auto shifted = displace(prepared, dx, geometry);
    const auto r = run(readout, shifted, geometry);
    out.push_back({dx, *r.detection_probability});
  }
  return out;
}

}  // namespace swnoon
