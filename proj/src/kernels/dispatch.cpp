#include <atomic>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace swnoon::kernels {

namespace {

bool cpu_supports_avx2() {
#if defined(SWNOON_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_available() { return cpu_supports_avx2() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{best_available()};
  return slot;
}

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (got != expected) {
    throw std::invalid_argument(std::string(what) + ": span length " + std::to_string(got) +
                                " != " + std::to_string(expected));
  }
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_supports_avx2();
  }
  return false;
}

Isa active() { return active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!available(isa)) throw std::invalid_argument("kernel variant " + std::string(to_string(isa)) + " unavailable");
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) throw std::invalid_argument("kernel variant " + std::string(to_string(isa)) + " unavailable");
#if defined(SWNOON_HAVE_AVX2_TU)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  require_size(x.size(), s.size(), "sincos");
  require_size(x.size(), c.size(), "sincos");
  table(active()).sincos(x.data(), s.data(), c.data(), x.size());
}

void fringe_model(std::span<const double> x, double x0, double kappa, std::span<double> p) {
  require_size(x.size(), p.size(), "fringe_model");
  table(active()).fringe_model(x.data(), x.size(), x0, kappa, p.data());
}

FringeSums fringe_normal_equations(std::span<const double> x, std::span<const double> fraction,
                                   std::span<const double> shots, double x0, double kappa) {
  require_size(x.size(), fraction.size(), "fringe_normal_equations");
  require_size(x.size(), shots.size(), "fringe_normal_equations");
  return table(active()).fringe_normal_equations(x.data(), fraction.data(), shots.data(), x.size(), x0, kappa);
}

}  // namespace swnoon::kernels
