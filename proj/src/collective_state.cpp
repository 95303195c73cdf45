#include "swnoon/collective_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swnoon {

std::string WaveCombination::to_string() const {
  static constexpr const char* kNames[4] = {"k_gra", "k_rasa", "k_grb", "k_rbsb"};
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto c = coeff[i];
    if (c == 0) continue;
    if (c < 0) os << (first ? "-" : " - ");
    else if (!first) os << " + ";
    if (std::abs(c) != 1) os << std::abs(c) << '*';
    os << kNames[i];
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::s_a: return "s_a";
    case Mode::s_b: return "s_b";
    case Mode::r_a: return "r_a";
    case Mode::r_b: return "r_b";
  }
  return "?";
}

BasisConfig BasisConfig::with(Mode m, std::int32_t count, const WaveCombination& per_excitation) const {
  if (count < 0) throw std::invalid_argument("negative mode occupation");
  BasisConfig c = *this;
  c.occupation[index(m)] = count;
  c.wave[index(m)] = count * per_excitation;
  return c;
}

BasisConfig canonical(BasisConfig c) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (c.occupation[i] == 0) c.wave[i] = WaveCombination{};
  }
  return c;
}

CollectiveState CollectiveState::vacuum() {
  BranchMap m;
  m.emplace(BasisConfig{}, Complex{1.0, 0.0});
  return CollectiveState(std::move(m));
}

CollectiveState CollectiveState::from_map(BranchMap branches) {
  BranchMap out;
  for (auto& [cfg, amp] : branches) out[canonical(cfg)] += amp;
  std::erase_if(out, [](const auto& kv) { return std::norm(kv.second) < kPruneThreshold; });
  return CollectiveState(std::move(out));
}

CollectiveState CollectiveState::from_branches(
    const std::vector<std::pair<BasisConfig, Complex>>& branches) {
  BranchMap m;
  for (const auto& [cfg, amp] : branches) m[canonical(cfg)] += amp;
  return from_map(std::move(m));
}

Complex CollectiveState::amplitude(const BasisConfig& c) const {
  const auto it = branches_.find(canonical(c));
  return it == branches_.end() ? Complex{} : it->second;
}

CollectiveState CollectiveState::scaled(Complex factor) const {
  BranchMap m = branches_;
  for (auto& [cfg, amp] : m) amp *= factor;
  return from_map(std::move(m));
}

double norm(const CollectiveState& s) {
  double acc = 0.0;
  for (const auto& [cfg, amp] : s.branches()) acc += std::norm(amp);
  return std::sqrt(acc);
}

Complex overlap(const CollectiveState& a, const CollectiveState& b) {
  Complex acc{};
  // Walk the smaller map, look up in the larger.
  const bool a_small = a.size() <= b.size();
  const auto& small = a_small ? a.branches() : b.branches();
  const auto& large = a_small ? b.branches() : a.branches();
  for (const auto& [cfg, amp] : small) {
    const auto it = large.find(cfg);
    if (it == large.end()) continue;
    acc += a_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return acc;
}

double mode_population(const CollectiveState& s, Mode m) {
  double acc = 0.0;
  for (const auto& [cfg, amp] : s.branches()) acc += std::norm(amp) * cfg.occ(m);
  return acc;
}

double occupied_probability(const CollectiveState& s, Mode m) {
  double acc = 0.0;
  for (const auto& [cfg, amp] : s.branches()) {
    if (cfg.occ(m) >= 1) acc += std::norm(amp);
  }
  return acc;
}

double rydberg_probability(const CollectiveState& s) {
  double acc = 0.0;
  for (const auto& [cfg, amp] : s.branches()) {
    if (cfg.rydberg_count() >= 1) acc += std::norm(amp);
  }
  return acc;
}

BasisConfig fock_config(Mode m, std::int32_t order, const WaveCombination& per_excitation) {
  return BasisConfig{}.with(m, order, per_excitation);
}

CollectiveState noon_state(std::int32_t order) {
  if (order < 1) throw std::invalid_argument("NOON order must be >= 1");
  const double h = 1.0 / std::sqrt(2.0);
  return CollectiveState::from_branches({
      {fock_config(Mode::s_a, order, kStoredA), Complex{h, 0.0}},
      {fock_config(Mode::s_b, order, kStoredB), Complex{h, 0.0}},
  });
}

}  // namespace swnoon
