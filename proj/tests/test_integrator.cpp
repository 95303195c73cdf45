#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/expm.hpp"
#include "swnoon/integrator.hpp"

using namespace swnoon;
using Complex = std::complex<double>;

namespace {

oracle::Mat<3> to_oracle(const Generator& h) {
  oracle::Mat<3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = h[i][j];
  return m;
}

Generator random_hermitian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Generator h{};
  for (int i = 0; i < 3; ++i) {
    h[i][i] = n(rng);
    for (int j = i + 1; j < 3; ++j) {
      h[i][j] = {n(rng), n(rng)};
      h[j][i] = std::conj(h[i][j]);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("zero generator leaves the state unchanged") {
  const Amplitudes a{{Complex{0.3, 0.1}, Complex{0.0, -0.2}, Complex{0.5, 0.0}}};
  const auto b = integrate_general(Generator{}, a, 10.0);
  for (int i = 0; i < 3; ++i) CHECK(b.c[i] == a.c[i]);
}

TEST_CASE("diagonal generator is a pure phase rotation") {
  Generator h{};
  h[0][0] = 2.0;
  h[1][1] = -0.5;
  h[2][2] = 1.5;
  const Amplitudes a{{Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{0.6, 0.8}}};
  const double t = 1.0;
  const auto b = integrate_general(generator_from_hamiltonian(h), a, t);
  for (int i = 0; i < 3; ++i) {
    const Complex want = a.c[i] * std::polar(1.0, -h[i][i].real() * t);
    CHECK(std::abs(b.c[i] - want) < 1e-11);
    CHECK(std::abs(std::abs(b.c[i]) - std::abs(a.c[i])) < 1e-12);
  }
}

TEST_CASE("random Hermitian generators agree with the matrix exponential") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Generator h = random_hermitian(rng, 2.0);
    const Amplitudes a{{Complex{1.0, 0.0}, Complex{}, Complex{}}};
    const double t = 1.5;
    const auto got = integrate_general(generator_from_hamiltonian(h), a, t);
    const auto want = oracle::propagate(to_oracle(h), oracle::Vec<3>{1.0, 0.0, 0.0}, t);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(got.c[i] - want[i]) < 1e-9);
    CHECK(std::abs(got.total_probability() - 1.0) < 1e-10);
  }
}

TEST_CASE("integrator rejects bad input") {
  Generator g{};
  g[0][0] = std::nan("");
  CHECK_THROWS_AS(integrate_general(g, Amplitudes{}, 1.0), IntegrationError);
  CHECK_THROWS_AS(integrate_general(Generator{}, Amplitudes{}, 1.0, {0.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(integrate_general(Generator{}, Amplitudes{}, -1.0), std::invalid_argument);
}

TEST_CASE("step budget exhaustion is reported") {
  Generator h{};
  h[0][1] = h[1][0] = 100.0;
  IntegratorOptions opt;
  opt.max_steps = 5;
  CHECK_THROWS_AS(integrate_general(generator_from_hamiltonian(h), Amplitudes{{Complex{1.0, 0.0}}}, 100.0, opt),
                  IntegrationError);
}

TEST_CASE("local error control keeps every accepted step within tolerance") {
  std::mt19937_64 rng(3);
  const Generator h = random_hermitian(rng, 5.0);
  IntegrationStats st;
  const auto out = integrate_general(generator_from_hamiltonian(h), Amplitudes{{Complex{1.0, 0.0}}}, 4.0, {}, &st);
  CHECK(st.accepted > 0);
  // The accumulated global error is bounded by steps * tolerance for a unitary flow.
  const auto want = oracle::propagate(to_oracle(h), oracle::Vec<3>{1.0, 0.0, 0.0}, 4.0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(out.c[i] - want[i]) < 1e-12 * static_cast<double>(st.accepted) * 10);
}
