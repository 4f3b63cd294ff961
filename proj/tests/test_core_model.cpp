#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "stpulse/core_model.hpp"
#include "test_util.hpp"

using namespace stpulse;
using namespace stpulse::constants;
using std::complex;

namespace {

DeviceParams caption_params() {
  return DeviceParams::make(0.1, -0.44, 3.67, 2.5e-7, 0.5, 0.4);
}

}  // namespace

TEST_CASE("zeeman shift for the caption field values") {
  CHECK(delta_from_zeeman(-0.44, 3.67) == doctest::Approx(-0.093470789403288).epsilon(1e-14));
  CHECK(delta_from_zeeman(-0.44, 1.0) == doctest::Approx(-0.0254688799464).epsilon(1e-12));
  CHECK(delta_from_zeeman(0.0, 5.0) == 0.0);
}

TEST_CASE("near-degeneracy ratio sits a little above the rounded 0.06") {
  const DeviceParams p = caption_params();
  const double ratio = std::abs(p.j_mev + p.delta_mev()) / p.j_mev;
  CHECK(ratio == doctest::Approx(0.06529210596712007).epsilon(1e-13));
}

TEST_CASE("detuning rate equals (J+Delta)/hbar") {
  const DeviceParams p = caption_params();
  CHECK(p.detuning_rate() == doctest::Approx(9.919617120695923).epsilon(1e-13));
}

TEST_CASE("device validation rejects out-of-domain parameters") {
  CHECK_THROWS_AS(DeviceParams::make(-1.0, -0.44, 3.67, 2.5e-7, 0.5, 0.4), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.0, -0.44, 3.67, 2.5e-7, 0.5, 0.4), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.1, -0.44, 3.67, 2.5e-7, 0.5, 0.0), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.1, -0.44, 3.67, 0.0, 0.5, 0.4), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.1, -0.44, 3.67, 2.5e-7, 0.0, 0.4), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.1, -0.44, 3.67, 2.5e-7, -0.5, 0.4), ConfigError);
  // |J + Delta| >= J: field too strong (Delta <= -2J) or wrong-sign g (Delta >= 0)
  CHECK_THROWS_AS(DeviceParams::make(0.1, -0.44, 8.0, 2.5e-7, 0.5, 0.4), ConfigError);
  CHECK_THROWS_AS(DeviceParams::make(0.1, 0.44, 3.67, 2.5e-7, 0.5, 0.4), ConfigError);
}

TEST_CASE("spin state norm contract") {
  CHECK_NOTHROW(SpinState(1.0, 0.0));
  CHECK_THROWS_AS(SpinState(1.0, 1.0), ToleranceError);
  CHECK_THROWS_AS(SpinState::normalized(0.0, 0.0), ToleranceError);
  const SpinState s = SpinState::normalized(3.0, 4.0);
  CHECK(s.p1() == doctest::Approx(9.0 / 25.0).epsilon(1e-15));
  CHECK(s.p2() == doctest::Approx(16.0 / 25.0).epsilon(1e-15));
}

TEST_CASE("bloch round trip over random angles") {
  testutil::Rng rng(20240801);
  for (int i = 0; i < 500; ++i) {
    BlochAngles in{rng.uniform(0.01, pi - 0.01), rng.uniform(-pi + 0.01, pi - 0.01)};
    const BlochAngles out = SpinState::from_bloch(in).to_bloch();
    CHECK(out.theta == doctest::Approx(in.theta).epsilon(1e-12));
    CHECK(out.phi == doctest::Approx(in.phi).epsilon(1e-12));
  }
}

TEST_CASE("bloch poles map to the basis states") {
  const SpinState up = SpinState::from_bloch({0.0, 0.7});
  CHECK(std::abs(up.c2()) == 0.0);
  CHECK(up.p1() == doctest::Approx(1.0).epsilon(1e-15));
  const SpinState down = SpinState::from_bloch({pi, 0.3});
  CHECK(down.p2() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(down.to_bloch().theta == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("phase-invariant distance") {
  const SpinState a = SpinState::from_bloch({pi / 3, 0.2});
  const SpinState b(a.c1() * std::polar(1.0, 1.234), a.c2() * std::polar(1.0, 1.234));
  CHECK(distance_up_to_phase(a, a) <= 3e-8);
  CHECK(distance_up_to_phase(a, b) <= 3e-8);
  const SpinState e1(1.0, 0.0);
  const SpinState e2(0.0, 1.0);
  CHECK(distance_up_to_phase(e1, e2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(inner(e1, e2)) == 0.0);
}

TEST_CASE("hamiltonian matrix is hermitian with the stated elements") {
  testutil::Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    HamiltonianSample h{0.0, rng.uniform(-300, 300), rng.uniform(-300, 300),
                        rng.uniform(-300, 300)};
    h.x = rng.uniform(-300, 300);
    const Eigen::Matrix2cd m = hamiltonian_matrix(h);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(m(0, 0).real() == doctest::Approx(0.5 * hbar * h.z1).epsilon(1e-15));
    CHECK(m(1, 1).real() == doctest::Approx(0.5 * hbar * h.z2).epsilon(1e-15));
    CHECK(m(0, 1).real() == doctest::Approx(0.5 * hbar * h.x).epsilon(1e-14));
    CHECK(m(0, 1).imag() == doctest::Approx(0.5 * hbar * h.y).epsilon(1e-14));
  }
}

TEST_CASE("element rates for the caption device at zero drive") {
  const DeviceParams p = caption_params();
  const HamiltonianSample h = hamiltonian_at(p, 0.0, 0.0);
  CHECK(h.x == 0.0);
  CHECK(h.y == 0.0);
  CHECK(h.z1 == doctest::Approx(-227.89011719941914).epsilon(1e-13));
  CHECK(h.z2 == doctest::Approx(-208.05088295802724).epsilon(1e-13));
}

TEST_CASE("one-axis drive moves only the stated elements") {
  const DeviceParams p = caption_params();
  const HamiltonianSample base = hamiltonian_at(p, 0.0, 0.0);
  const double al = 0.013, ar = -0.007;
  const HamiltonianSample h = hamiltonian_at(p, al, ar);
  CHECK(h.z1 == base.z1);  // the left column of H never sees the drive
  CHECK(h.y == doctest::Approx(-p.alpha_over_beta * (al - ar) / (sqrt2 * hbar)).epsilon(1e-14));
  CHECK(h.z2 - base.z2 == doctest::Approx(-(al + ar) / hbar).epsilon(1e-14));
}

TEST_CASE("off-diagonal rate agrees between the scaled and raw gauge routes") {
  const DeviceParams p = caption_params();
  testutil::Rng rng(1234);
  for (int i = 0; i < 400; ++i) {
    const double al = rng.uniform(-0.1, 0.1);
    const double ar = rng.uniform(-0.1, 0.1);
    const double direct = hamiltonian_at(p, al, ar).y;
    const double raw = off_diagonal_rate_raw_gauge(p, al, ar);
    CHECK(raw == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("invariant eigenvalues are pinned regardless of the angles") {
  testutil::Rng rng(555);
  for (int i = 0; i < 300; ++i) {
    InvariantSample inv{rng.uniform(0.01, pi - 0.01), rng.uniform(-3, 3), 1.0, -0.44};
    const Eigen::Matrix2cd m = invariant_matrix(inv);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-18);
    const double expected = std::abs(inv.g_factor) * mu_bohr * inv.b_c_tesla / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-expected).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("invariant eigenstates are orthonormal eigenvectors") {
  testutil::Rng rng(808);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(0.001, pi - 0.001);
    const double phi = rng.uniform(-3.0, 3.0);
    const auto [plus, minus] = invariant_eigenstates(theta, phi);
    CHECK(std::abs(inner(plus, minus)) <= 1e-14);
    CHECK(std::abs(std::abs(inner(plus, plus)) - 1.0) <= 1e-14);

    InvariantSample inv{theta, phi, 1.0, -0.44};
    const Eigen::Matrix2cd m = invariant_matrix(inv);
    const double lam = inv.g_factor * mu_bohr * inv.b_c_tesla / 2.0;
    const Eigen::Vector2cd rp = m * plus.vec() - lam * plus.vec();
    const Eigen::Vector2cd rm = m * minus.vec() + lam * minus.vec();
    CHECK(rp.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(rm.cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("angle-built hamiltonians conserve the invariant for any rates") {
  testutil::Rng rng(31415);
  for (int i = 0; i < 300; ++i) {
    const double theta = rng.uniform(0.05, pi - 0.05);
    const double phi = rng.uniform(-1.4, 1.4);
    const double dtheta = rng.uniform(-40, 40);
    const double dphi = rng.uniform(-40, 40);
    const double rp = rng.uniform(-300, 300);
    const double rm = rng.uniform(-300, 300);
    const HamiltonianSample h =
        hamiltonian_from_angles(theta, phi, dtheta, dphi, rp, rm);
    const InvariantSample inv{theta, phi, 1.0, -0.44};
    CHECK(invariance_defect(h, inv, dtheta, dphi) <= 1e-10);
  }
}

TEST_CASE("a perturbed hamiltonian breaks the invariance") {
  HamiltonianSample h = hamiltonian_from_angles(1.0, 0.4, 10.0, -5.0, 100.0, 80.0);
  const InvariantSample inv{1.0, 0.4, 1.0, -0.44};
  REQUIRE(invariance_defect(h, inv, 10.0, -5.0) <= 1e-10);
  h.y += 1e-4;
  CHECK(invariance_defect(h, inv, 10.0, -5.0) > 1e-8);
}
