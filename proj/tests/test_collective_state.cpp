#include <doctest.h>

#include <cmath>

#include "swnoon/collective_state.hpp"

using namespace swnoon;

TEST_CASE("vacuum is a single normalized branch") {
  const auto v = CollectiveState::vacuum();
  CHECK(v.size() == 1);
  CHECK(norm(v) == doctest::Approx(1.0));
  CHECK(rydberg_probability(v) == 0.0);
}

TEST_CASE("duplicate configurations merge and cancel exactly") {
  const BasisConfig a = fock_config(Mode::s_a, 2, kStoredA);
  const auto s = CollectiveState::from_branches({{a, {0.5, 0.0}}, {a, {-0.5, 0.0}}});
  CHECK(s.empty());

  const auto t = CollectiveState::from_branches({{a, {0.25, 0.0}}, {a, {0.5, 0.0}}});
  REQUIRE(t.size() == 1);
  CHECK(t.amplitude(a).real() == doctest::Approx(0.75));
}

TEST_CASE("empty modes are canonicalized to the zero k-sum") {
  BasisConfig c;
  c.wave[index(Mode::r_b)] = WaveCombination::of(Beam::g_rb);
  const auto s = CollectiveState::from_branches({{c, {1.0, 0.0}}});
  CHECK(s.amplitude(BasisConfig{}).real() == doctest::Approx(1.0));
}

TEST_CASE("tiny branches are pruned") {
  const BasisConfig a = fock_config(Mode::s_a, 1, kStoredA);
  const auto s = CollectiveState::from_branches({{a, {1e-13, 0.0}}, {BasisConfig{}, {1.0, 0.0}}});
  CHECK(s.size() == 1);
}

TEST_CASE("noon state has two equal-weight branches") {
  for (int l : {1, 2, 7, 25}) {
    const auto n = noon_state(l);
    REQUIRE(n.size() == 2);
    CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(n.amplitude(fock_config(Mode::s_a, l, kStoredA))) == doctest::Approx(0.5));
    CHECK(std::norm(n.amplitude(fock_config(Mode::s_b, l, kStoredB))) == doctest::Approx(0.5));
    CHECK(mode_population(n, Mode::s_a) == doctest::Approx(0.5 * l));
    CHECK(occupied_probability(n, Mode::s_b) == doctest::Approx(0.5));
  }
}

TEST_CASE("overlap is conjugate linear in the first argument") {
  const auto n = noon_state(3);
  const auto m = n.scaled({0.0, 1.0});
  const auto o = overlap(n, m);
  CHECK(o.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(o.imag() == doctest::Approx(1.0));
}

TEST_CASE("wave combination arithmetic") {
  const auto w = 3 * kStoredA;
  CHECK(w.divisible_by(3));
  CHECK_FALSE(w.divisible_by(2));
  CHECK(w.divided_by(3) == kStoredA);
  CHECK(w.to_string() == "3*k_gra - 3*k_rasa");
  CHECK(WaveCombination{}.to_string() == "0");
  const auto k = BeamGeometry::counter_propagating().materialize(kStoredA - kStoredB);
  CHECK(k.kx == doctest::Approx(31.8));
}
