#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helix/errors.hpp"
#include "helix/model.hpp"

using namespace helix;

namespace {

PhysicalParams fig_params() {
  PhysicalParams p;  // hbar = mu = e = k = 1
  p.omega = 1.0;
  p.B0 = 0.5;
  p.PhiB = 0.5;
  return p;
}

}  // namespace

TEST_CASE("a_phi") {
  PhysicalParams p;
  p.B0 = 0.0;
  p.PhiB = 0.0;
  CHECK(a_phi(1.0, p) == 0.0);

  p.PhiB = 2.0 * std::numbers::pi;
  CHECK(a_phi(0.3, p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a_phi(7.0, p) == doctest::Approx(1.0).epsilon(1e-15));

  p.B0 = 0.5;
  p.PhiB = 0.5;
  CHECK(a_phi(1.0, p) == doctest::Approx(-0.1704225284540523).epsilon(1e-14));
}

TEST_CASE("external_potential") {
  CHECK(external_potential(2.0, Free{}) == 0.0);
  CHECK(external_potential(1.0, Kratzer{1.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(external_potential(1.0, Cornell{1.0, 0.02}) == doctest::Approx(1.02).epsilon(1e-15));

  // Morse expansion evaluates to -D exactly at its minimum r0.
  const MorseSmall ms{2.5, 0.7, 3.0};
  CHECK(external_potential(ms.r0, ms) == doctest::Approx(-ms.D).epsilon(1e-13));
  CHECK(ms.d1() == doctest::Approx(ms.D * (ms.a * ms.a * ms.r0 * ms.r0 - 1.0)));
}

TEST_CASE("morse expansion is stationary at r0 with curvature 2 D a^2") {
  const MorseSmall ms{1.3, 0.4, 5.0};
  const double h = 1e-5;
  const double d1 = (external_potential(ms.r0 + h, ms) - external_potential(ms.r0 - h, ms)) /
                    (2.0 * h);
  const double d2 = (external_potential(ms.r0 + h, ms) - 2.0 * external_potential(ms.r0, ms) +
                     external_potential(ms.r0 - h, ms)) /
                    (h * h);
  CHECK(std::abs(d1) < 1e-8);
  CHECK(d2 == doctest::Approx(2.0 * ms.D * ms.a * ms.a).epsilon(1e-5));
  CHECK(d2 > 0.0);
}

TEST_CASE("v1 spec values") {
  CHECK(v1(1.0, fig_params(), 1) == doctest::Approx(1.0290438382046723).epsilon(1e-14));
}

TEST_CASE("v1 reduction chain") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> radius(0.05, 15.0);

  // e -> 0 removes any B0/PhiB dependence
  for (int i = 0; i < 50; ++i) {
    const double r = radius(rng);
    PhysicalParams p = fig_params();
    p.e = 0.0;
    PhysicalParams q = p;
    q.B0 = 3.7;
    q.PhiB = -2.0;
    const int m = (i % 7) - 3;
    CHECK(v1(r, p, m) == doctest::Approx(v1(r, q, m)).epsilon(1e-14));
    const double geometric =
        m * m / (r * r) + p.k * p.k * (1.0 + p.omega * p.omega) - 2.0 * m * p.omega * p.k / r;
    CHECK(v1(r, p, m) == doctest::Approx(geometric).epsilon(1e-13));
  }

  // additionally k -> 0 leaves the bare centrifugal term
  for (int i = 0; i < 50; ++i) {
    const double r = radius(rng);
    PhysicalParams p = fig_params();
    p.e = 0.0;
    p.k = 0.0;
    const int m = (i % 7) - 3;
    CHECK(v1(r, p, m) == doctest::Approx(m * m / (r * r)).epsilon(1e-13));
    PhysicalParams q = p;
    q.omega = 9.0;  // no omega dependence left
    CHECK(v1(r, p, m) == v1(r, q, m));
  }
}

TEST_CASE("v_eff spec values") {
  PhysicalParams p;
  p.e = 0.0;
  p.k = 0.0;
  p.B0 = 0.0;
  p.PhiB = 0.0;
  CHECK(v_eff(1.0, p, 0, Free{}) == doctest::Approx(-0.125).epsilon(1e-15));

  CHECK(v_eff(1.0, fig_params(), 1, Free{}) ==
        doctest::Approx(0.38952191910233613).epsilon(1e-14));
}

TEST_CASE("v_eff gauge-decoupled limit") {
  // With B0 = PhiB = 0 the charge does not matter.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> radius(0.05, 12.0);
  PhysicalParams p;
  p.B0 = 0.0;
  p.PhiB = 0.0;
  p.e = 1.0;
  PhysicalParams q = p;
  q.e = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double r = radius(rng);
    CHECK(v_eff(r, p, 2, Free{}) == doctest::Approx(v_eff(r, q, 2, Free{})).epsilon(1e-14));
  }
}

TEST_CASE("kratzer shifts v_eff by exactly -2DA/r + DA^2/r^2") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> radius(0.05, 12.0);
  const Kratzer kr{1.7, 0.6};
  for (int i = 0; i < 40; ++i) {
    const double r = radius(rng);
    const double diff = v_eff(r, fig_params(), 1, kr) - v_eff(r, fig_params(), 1, Free{});
    const double expected = -2.0 * kr.D * kr.A / r + kr.D * kr.A * kr.A / (r * r);
    CHECK(diff == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("kratzer renormalizes the net 1/r^2 coefficient") {
  // v_eff(Kratzer) = -2DA/r + [ (hbar^2/2mu)(m^2 - 1/4) + D A^2 ] / r^2 + gauge terms;
  // with e = 0, k = 0 only the 1/r and 1/r^2 sectors survive.
  PhysicalParams p;
  p.e = 0.0;
  p.k = 0.0;
  const Kratzer kr{1.2, 0.9};
  const int m = 2;
  const double c2 = 0.5 * (m * m - 0.25) + kr.D * kr.A * kr.A;
  const double c1 = -2.0 * kr.D * kr.A;
  for (double r : {0.2, 1.0, 3.0, 8.0}) {
    CHECK(v_eff(r, p, m, kr) == doctest::Approx(c1 / r + c2 / (r * r)).epsilon(1e-12));
  }
}

TEST_CASE("u_of_r") {
  PhysicalParams p;  // hbar = mu = 1
  p.e = 0.0;
  p.k = 0.0;
  p.B0 = 0.0;
  p.PhiB = 0.0;
  CHECK(u_of_r(2.0, p, 0, Free{}) == doctest::Approx(-0.0625).epsilon(1e-15));

  // u = 2 v_eff pointwise when hbar = mu = 1
  for (double r : {0.3, 1.0, 4.0}) {
    CHECK(u_of_r(r, fig_params(), 1, Free{}) ==
          doctest::Approx(2.0 * v_eff(r, fig_params(), 1, Free{})).epsilon(1e-14));
  }
}

TEST_CASE("energy/lambda round trip") {
  PhysicalParams p;
  p.hbar = 0.7;
  p.mu = 2.3;
  for (double E : {-1.5, 0.0, 2.25, 17.0}) {
    CHECK(energy_from_lambda(lambda_from_energy(E, p), p) == doctest::Approx(E).epsilon(1e-15));
  }
}

TEST_CASE("parameter validation") {
  PhysicalParams p;
  p.hbar = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.hbar = 1.0;
  p.mu = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.mu = 1.0;
  p.omega = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(p.validate(), InvalidParameter);

  CHECK_THROWS_AS(validate(PotentialModel{Kratzer{-1.0, 1.0}}), InvalidParameter);
  CHECK_THROWS_AS(validate(PotentialModel{Kratzer{1.0, 0.0}}), InvalidParameter);
  CHECK_THROWS_AS(validate(PotentialModel{MorseSmall{1.0, -0.2, 5.0}}), InvalidParameter);
  CHECK_NOTHROW(validate(PotentialModel{Cornell{-3.0, 0.0}}));

  QuantumNumbers q;
  q.requested_levels = 0;
  CHECK_THROWS_AS(q.validate(), InvalidParameter);
}
