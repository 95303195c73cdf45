#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "swnoon/wave_vector.hpp"

namespace swnoon {

using Complex = std::complex<double>;

/// Excitation modes. r_a/r_b are Rydberg levels, s_a/s_b metastable storage.
enum class Mode : std::uint8_t { s_a = 0, s_b = 1, r_a = 2, r_b = 3 };

inline constexpr std::array<Mode, 4> kAllModes{Mode::s_a, Mode::s_b, Mode::r_a, Mode::r_b};

constexpr bool is_rydberg(Mode m) { return m == Mode::r_a || m == Mode::r_b; }
constexpr std::size_t index(Mode m) { return static_cast<std::size_t>(m); }
std::string_view to_string(Mode m);

/// Occupation record of the four modes plus the k-sum each mode carries.
struct BasisConfig {
  std::array<std::int32_t, 4> occupation{};
  std::array<WaveCombination, 4> wave{};

  std::int32_t occ(Mode m) const { return occupation[index(m)]; }
  const WaveCombination& k(Mode m) const { return wave[index(m)]; }

  std::int32_t rydberg_count() const { return occ(Mode::r_a) + occ(Mode::r_b); }
  WaveCombination total_wave() const {
    return wave[0] + wave[1] + wave[2] + wave[3];
  }

  /// `count` excitations in `m`, each carrying `per_excitation`.
  BasisConfig with(Mode m, std::int32_t count, const WaveCombination& per_excitation) const;

  friend auto operator<=>(const BasisConfig&, const BasisConfig&) = default;
};

/// Empty modes carry the zero k-sum.
BasisConfig canonical(BasisConfig c);

/// Branches with |amp|^2 below this are dropped after every event.
inline constexpr double kPruneThreshold = 1e-24;

/// Superposition over basis configurations. Immutable once built.
class CollectiveState {
 public:
  using BranchMap = std::map<BasisConfig, Complex>;

  CollectiveState() = default;

  /// Collective ground state |0>.
  static CollectiveState vacuum();

  /// Sums duplicate configurations, canonicalizes and prunes.
  static CollectiveState from_branches(const std::vector<std::pair<BasisConfig, Complex>>& branches);
  static CollectiveState from_map(BranchMap branches);

  const BranchMap& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  bool empty() const { return branches_.empty(); }

  /// Amplitude of a configuration (0 when absent).
  Complex amplitude(const BasisConfig& c) const;

  CollectiveState scaled(Complex factor) const;

 private:
  explicit CollectiveState(BranchMap b) : branches_(std::move(b)) {}
  BranchMap branches_;
};

double norm(const CollectiveState& s);

/// <a|b>
Complex overlap(const CollectiveState& a, const CollectiveState& b);

/// Expected occupation of `m`.
double mode_population(const CollectiveState& s, Mode m);

/// Probability that `m` holds at least one excitation.
double occupied_probability(const CollectiveState& s, Mode m);

/// Probability that any Rydberg level is occupied (what field ionization sees).
double rydberg_probability(const CollectiveState& s);

/// |order, k>_mode with each excitation carrying `per_excitation`.
BasisConfig fock_config(Mode m, std::int32_t order, const WaveCombination& per_excitation);

/// (|l, k_a>_{s_a} + |l, k_b>_{s_b}) / sqrt(2) with the composite stored wave vectors.
CollectiveState noon_state(std::int32_t order);

}  // namespace swnoon
