#include <doctest.h>

#include <cmath>

#include "nkdv/closed_form.hpp"
#include "nkdv/elliptic.hpp"
#include "nkdv/errors.hpp"
#include "nkdv/hamiltonian_ode.hpp"

using namespace nkdv;

namespace {

const TravelingWaveParams kSoliton = TravelingWaveParams::make(-1, 1);
const TravelingWaveParams kInner = TravelingWaveParams::make(1, -1);

double max_mismatch(const Trajectory& t, const WaveProfile& w, double xi_max) {
  double e = 0.0;
  for (const auto& s : t.states)
    if (s.xi <= xi_max) e = std::max(e, std::abs(s.U - w.eval(s.xi)));
  return e;
}

WaveProfile dn_profile() {
  ProfileConstants k;
  k.h = -0.125;
  return WaveProfile::make(kSoliton, CaseId::DN_26, Branch::plus, k);
}

}  // namespace

TEST_CASE("an equilibrium is a fixed point of both integrators") {
  for (Integrator m : {Integrator::leapfrog, Integrator::rk4}) {
    const auto t = integrate(kSoliton, {0.0, 0.0, 0.0}, 1e-2, 500, m);
    for (const auto& s : t.states) {
      CHECK(s.U == 0.0);
      CHECK(s.y == 0.0);
    }
    CHECK(t.max_energy_error == 0.0);
    const auto e = integrate(kSoliton, {1.0, 0.0, 0.0}, 1e-2, 500, m);
    CHECK(std::abs(e.states.back().U - 1.0) < 1e-14);
  }
}

TEST_CASE("trajectory bookkeeping") {
  IntegrateOptions opt;
  opt.stride = 10;
  const auto t = integrate(kSoliton, {1.0, 0.1, 2.0}, 1e-2, 95, Integrator::rk4, opt);
  CHECK(t.states.front().xi == 2.0);
  CHECK(t.states.size() == 10);  // initial plus steps 10, 20, ..., 90
  CHECK(t.states[3].xi == doctest::Approx(2.3));
  CHECK(t.stride == 10);
  CHECK(t.method == Integrator::rk4);
}

TEST_CASE("invalid integration requests") {
  CHECK_THROWS_AS(integrate(kSoliton, {1, 0, 0}, 0.0, 10, Integrator::rk4), InvalidInput);
  CHECK_THROWS_AS(integrate(kSoliton, {1, 0, 0}, -1e-3, 10, Integrator::rk4), InvalidInput);
  CHECK_THROWS_AS(integrate(kSoliton, {1, 0, 0}, 1e-3, 0, Integrator::rk4), InvalidInput);
  CHECK_THROWS_AS(integrate(kSoliton, {NAN, 0, 0}, 1e-3, 10, Integrator::rk4), InvalidInput);
}

TEST_CASE("soliton from its peak tracks the closed form") {
  // The homoclinic orbit is unstable at rate sqrt(g) = 1, so any error grows
  // like e^xi along it; the tolerance window is set by that growth.
  const auto sol = WaveProfile::make(kSoliton, CaseId::SOLITON_25, Branch::plus);
  const auto rk = integrate(kSoliton, {std::sqrt(2.0), 0.0, 0.0}, 1e-3, 20000, Integrator::rk4);
  CHECK(max_mismatch(rk, sol, 18.0) <= 1e-6);
  CHECK(max_mismatch(rk, sol, 20.0) <= 1e-5);
  const auto lf = integrate(kSoliton, {std::sqrt(2.0), 0.0, 0.0}, 1e-3, 20000, Integrator::leapfrog);
  CHECK(max_mismatch(lf, sol, 4.0) <= 1e-6);
  // Growth over two units of xi is close to e^2.
  const double ratio = max_mismatch(rk, sol, 16.0) / max_mismatch(rk, sol, 14.0);
  CHECK(ratio == doctest::Approx(std::exp(2.0)).epsilon(0.2));
}

TEST_CASE("breaking wave diverges and the partial trajectory tracks the closed form") {
  // h = 0 level through (1, 1/2): U = -2/(xi - 2), pole at xi = 2.
  const auto p = TravelingWaveParams::make(2, 0);
  ProfileConstants k;
  k.xi0 = -2.0;
  const auto exact = WaveProfile::make(p, CaseId::BREAKING_23, Branch::plus, k);
  REQUIRE(exact.eval(0.0) == doctest::Approx(1.0));
  REQUIRE(exact.eval_d1(0.0) == doctest::Approx(0.5));
  try {
    (void)integrate(p, {1.0, 0.5, 0.0}, 1e-4, 100000, Integrator::rk4);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    const auto& t = e.partial();
    CHECK(std::abs(e.last_valid().U) <= 1e8);
    CHECK(e.last_valid().xi < 2.001);
    CHECK(e.last_valid().xi > 1.99);
    for (const auto& s : t.states) {
      if (s.xi > 1.9) break;
      CHECK(std::abs(s.U - exact.eval(s.xi)) <= 1e-8 * (1.0 + std::abs(exact.eval(s.xi))));
    }
  }
}

TEST_CASE("dn period from the section crossings") {
  const auto dn = dn_profile();
  const double r1 = dn.amplitude();
  const auto t = integrate(kSoliton, {r1, 0.0, 0.0}, 1e-3, 30000, Integrator::rk4);
  const auto T = measure_period(t);
  REQUIRE(T.has_value());
  const double K = elliptic::complete_K(elliptic::Modulus(*dn.modulus()));
  const double expected = 2.0 * K * std::sqrt(2.0) / r1;
  CHECK(std::abs(*T - expected) / expected <= 1e-6);
  CHECK(*dn.period() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("sn period from the section crossings") {
  const double h = 0.125;
  const auto t = integrate(kInner, {0.0, std::sqrt(2.0 * h), 0.0}, 1e-3, 40000, Integrator::rk4);
  const auto T = measure_period(t);
  REQUIRE(T.has_value());
  const auto z = z_roots(kInner, h);
  const double z1 = std::sqrt(z->first_sq), z2 = std::sqrt(z->second_sq);
  const double expected = 4.0 * elliptic::complete_K(elliptic::Modulus(z2 / z1)) * std::sqrt(2.0) / z1;
  CHECK(std::abs(*T - expected) / expected <= 1e-6);
}

TEST_CASE("no period for a constant or too short trajectory") {
  CHECK_FALSE(measure_period(integrate(kSoliton, {0, 0, 0}, 1e-2, 1000, Integrator::leapfrog)).has_value());
  const auto dn = dn_profile();
  CHECK_FALSE(measure_period(integrate(kSoliton, {dn.amplitude(), 0, 0}, 1e-3, 2000, Integrator::rk4)).has_value());
  CHECK_FALSE(secular_energy_drift(integrate(kSoliton, {0, 0, 0}, 1e-2, 10, Integrator::rk4)).has_value());
}

TEST_CASE("energy behaviour on a periodic orbit") {
  const auto dn = dn_profile();
  const OdeState start{dn.amplitude(), 0.0, 0.0};
  IntegrateOptions opt;
  opt.stride = 10;
  const auto lf = integrate(kSoliton, start, 1e-3, 200000, Integrator::leapfrog, opt);
  const auto drift = secular_energy_drift(lf);
  REQUIRE(drift.has_value());
  CHECK(*drift <= 1e-9);
  // The leapfrog error itself is bounded and O(dxi^2), not growing.
  CHECK(lf.max_energy_error < 1e-6);
  const auto rk = integrate(kSoliton, start, 1e-3, 200000, Integrator::rk4, opt);
  CHECK(rk.max_energy_error <= 1e-8);
}

TEST_CASE("leapfrog is time reversible") {
  const auto dn = dn_profile();
  const auto fwd = integrate(kSoliton, {dn.amplitude(), 0.0, 0.0}, 1e-3, 5000, Integrator::leapfrog);
  const auto& end = fwd.states.back();
  // Flipping y reverses the flow of a reversible system.
  const auto back = integrate(kSoliton, {end.U, -end.y, 0.0}, 1e-3, 5000, Integrator::leapfrog);
  CHECK(std::abs(back.states.back().U - dn.amplitude()) <= 1e-10);
  CHECK(std::abs(back.states.back().y) <= 1e-10);
}

TEST_CASE("convergence orders against the dn closed form") {
  const auto dn = dn_profile();
  const double window = 5.0;
  for (Integrator m : {Integrator::leapfrog, Integrator::rk4}) {
    double prev = 0.0;
    for (double d : {2e-2, 1e-2, 5e-3}) {
      const auto t = integrate(kSoliton, {dn.amplitude(), 0.0, 0.0}, d, std::lround(window / d), m);
      const double err = max_mismatch(t, dn, window + 1e-9);
      if (prev > 0.0) {
        const double expected = m == Integrator::leapfrog ? 4.0 : 16.0;
        CHECK(prev / err == doctest::Approx(expected).epsilon(0.25));
      }
      prev = err;
    }
  }
}

TEST_CASE("integrator names") {
  CHECK(to_string(Integrator::leapfrog) == "leapfrog");
  CHECK(to_string(Integrator::rk4) == "rk4");
}
