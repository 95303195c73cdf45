#pragma once

// Spatial frequencies of the four excitation beams and the exact integer
// bookkeeping used to label stored spin waves.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace swnoon {

/// Spatial angular frequency, rad/um.
struct WaveVector {
  double kx = 0.0;
  double ky = 0.0;
  double kz = 0.0;

  constexpr WaveVector& operator+=(const WaveVector& o) {
    kx += o.kx; ky += o.ky; kz += o.kz;
    return *this;
  }
  constexpr WaveVector& operator-=(const WaveVector& o) {
    kx -= o.kx; ky -= o.ky; kz -= o.kz;
    return *this;
  }
  friend constexpr WaveVector operator+(WaveVector a, const WaveVector& b) { return a += b; }
  friend constexpr WaveVector operator-(WaveVector a, const WaveVector& b) { return a -= b; }
  friend constexpr WaveVector operator*(double s, const WaveVector& v) {
    return {s * v.kx, s * v.ky, s * v.kz};
  }
  friend constexpr bool operator==(const WaveVector&, const WaveVector&) = default;

  double norm() const { return std::sqrt(kx * kx + ky * ky + kz * kz); }
  bool finite() const { return std::isfinite(kx) && std::isfinite(ky) && std::isfinite(kz); }
};

/// Cloud displacement, um.
struct Displacement {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Displacement operator*(double s, const Displacement& d) {
    return {s * d.x, s * d.y, s * d.z};
  }
  friend constexpr Displacement operator+(const Displacement& a, const Displacement& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr bool operator==(const Displacement&, const Displacement&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Phase k.dx in radians.
constexpr double phase(const WaveVector& k, const Displacement& dx) {
  return k.kx * dx.x + k.ky * dx.y + k.kz * dx.z;
}

/// The four beams of the double-Lambda scheme.
enum class Beam : std::uint8_t { g_ra = 0, ra_sa = 1, g_rb = 2, rb_sb = 3 };

/// Integer combination of the four beam wave vectors. Stored spin waves are
/// labelled this way so that branches with equal k-sums compare equal exactly.
struct WaveCombination {
  std::array<std::int32_t, 4> coeff{};

  static constexpr WaveCombination of(Beam b) {
    WaveCombination w;
    w.coeff[static_cast<std::size_t>(b)] = 1;
    return w;
  }

  constexpr WaveCombination& operator+=(const WaveCombination& o) {
    for (std::size_t i = 0; i < 4; ++i) coeff[i] += o.coeff[i];
    return *this;
  }
  constexpr WaveCombination& operator-=(const WaveCombination& o) {
    for (std::size_t i = 0; i < 4; ++i) coeff[i] -= o.coeff[i];
    return *this;
  }
  friend constexpr WaveCombination operator+(WaveCombination a, const WaveCombination& b) { return a += b; }
  friend constexpr WaveCombination operator-(WaveCombination a, const WaveCombination& b) { return a -= b; }
  friend constexpr WaveCombination operator*(std::int32_t s, WaveCombination w) {
    for (auto& c : w.coeff) c *= s;
    return w;
  }
  friend constexpr auto operator<=>(const WaveCombination&, const WaveCombination&) = default;

  constexpr bool is_zero() const {
    return coeff[0] == 0 && coeff[1] == 0 && coeff[2] == 0 && coeff[3] == 0;
  }
  /// True when every coefficient is a multiple of n.
  constexpr bool divisible_by(std::int32_t n) const {
    for (auto c : coeff) {
      if (c % n != 0) return false;
    }
    return true;
  }
  constexpr WaveCombination divided_by(std::int32_t n) const {
    WaveCombination w = *this;
    for (auto& c : w.coeff) c /= n;
    return w;
  }

  std::string to_string() const;
};

/// k_{g r_l} - k_{r_l s_l}: the wave vector carried by one stored s_a excitation.
inline constexpr WaveCombination kStoredA =
    WaveCombination::of(Beam::g_ra) - WaveCombination::of(Beam::ra_sa);
/// Same for mode b.
inline constexpr WaveCombination kStoredB =
    WaveCombination::of(Beam::g_rb) - WaveCombination::of(Beam::rb_sb);

/// Numeric wave vectors of the four beams.
struct BeamGeometry {
  std::array<WaveVector, 4> beams{};

  const WaveVector& operator[](Beam b) const { return beams[static_cast<std::size_t>(b)]; }
  WaveVector& operator[](Beam b) { return beams[static_cast<std::size_t>(b)]; }

  WaveVector materialize(const WaveCombination& w) const {
    WaveVector k;
    for (std::size_t i = 0; i < 4; ++i) k += static_cast<double>(w.coeff[i]) * beams[i];
    return k;
  }

  /// Counter-propagating a/b modes along x, |k_a - k_b| = 31.8 rad/um.
  static BeamGeometry counter_propagating() {
    BeamGeometry g;
    g[Beam::g_ra] = {8.0, 0.0, 0.0};
    g[Beam::ra_sa] = {-7.9, 0.0, 0.0};
    g[Beam::g_rb] = {-8.0, 0.0, 0.0};
    g[Beam::rb_sb] = {7.9, 0.0, 0.0};
    return g;
  }
};

}  // namespace swnoon
