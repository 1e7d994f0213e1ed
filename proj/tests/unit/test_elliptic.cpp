#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "nkdv/elliptic.hpp"
#include "nkdv/errors.hpp"

using namespace nkdv;
using elliptic::Modulus;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// F(phi, k) = int_0^phi dtheta / sqrt(1 - k^2 sin^2 theta) by adaptive Gauss-Kronrod.
double incomplete_F(double phi, double k) {
  auto integrand = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, phi, 15, 1e-15);
}

// Amplitude phi with F(phi, k) = x for 0 <= x <= K(k), by bracketing root search.
double amplitude(double x, double k) {
  auto f = [&](double phi) { return incomplete_F(phi, k) - x; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::bisect(f, 0.0, kHalfPi, tol, iters);
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("modulus validation and conversions") {
  CHECK_THROWS_AS(Modulus(-0.1), InvalidInput);
  CHECK_THROWS_AS(Modulus(1.1), InvalidInput);
  CHECK_THROWS_AS(Modulus(NAN), InvalidInput);
  CHECK_THROWS_AS(Modulus::from_parameter(2.0), InvalidInput);
  const Modulus m = Modulus::from_parameter(0.49);
  CHECK(m.k() == doctest::Approx(0.7));
  CHECK(m.parameter() == doctest::Approx(0.49));
  CHECK(m.complementary() == doctest::Approx(std::sqrt(0.51)));
}

TEST_CASE("K(0) is pi/2 and K(1) diverges") {
  CHECK(elliptic::complete_K(Modulus(0.0)) == doctest::Approx(kHalfPi).epsilon(1e-15));
  CHECK_THROWS_AS(elliptic::complete_K(Modulus(1.0)), NumericFailure);
}

TEST_CASE("K(k) against a quadrature oracle") {
  for (double k : {0.1, 0.5, 0.9, 0.99}) {
    const double oracle = incomplete_F(kHalfPi, k);
    CHECK(elliptic::complete_K(Modulus(k)) == doctest::Approx(oracle).epsilon(1e-12));
  }
  // Near k = 1 the integrand has an endpoint spike; tanh-sinh handles it, and
  // the modulus is passed with its complement to keep k' accurate.
  const double k = 0.999999;
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  boost::math::quadrature::tanh_sinh<double> ts;
  // 1 - k^2 sin^2 t = cos^2 t + k'^2 sin^2 t avoids cancellation near t = pi/2.
  const double oracle = ts.integrate(
      [kp](double t) { return 1.0 / std::sqrt(std::cos(t) * std::cos(t) + kp * kp * std::sin(t) * std::sin(t)); },
      0.0, kHalfPi);
  CHECK(elliptic::complete_K(Modulus::with_complement(k, kp)) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(elliptic::complete_K(Modulus(k)) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(oracle > 7.0);
}

TEST_CASE("jacobi values at the origin and in the degenerate limits") {
  for (double k : {0.0, 0.3, 0.999, 1.0}) {
    const auto v = elliptic::jacobi(0.0, Modulus(k));
    CHECK(v.sn == 0.0);
    CHECK(v.cn == 1.0);
    CHECK(v.dn == 1.0);
  }
  for (double x : {-3.0, -0.4, 0.9, 7.5}) {
    const auto z = elliptic::jacobi(x, Modulus(0.0));
    CHECK(z.sn == doctest::Approx(std::sin(x)).epsilon(1e-15));
    CHECK(z.cn == doctest::Approx(std::cos(x)).epsilon(1e-15));
    CHECK(z.dn == 1.0);
    const auto o = elliptic::jacobi(x, Modulus(1.0));
    CHECK(o.sn == doctest::Approx(std::tanh(x)).epsilon(1e-15));
    CHECK(o.cn == doctest::Approx(1.0 / std::cosh(x)).epsilon(1e-15));
    CHECK(o.dn == doctest::Approx(1.0 / std::cosh(x)).epsilon(1e-15));
  }
}

TEST_CASE("jacobi rejects non-finite arguments") {
  CHECK_THROWS_AS(elliptic::jacobi(INFINITY, Modulus(0.5)), InvalidInput);
  CHECK_THROWS_AS(elliptic::jacobi(NAN, Modulus(0.5)), InvalidInput);
}

TEST_CASE("moduli within 1e-12 of one use the hyperbolic limit") {
  const double k = 1.0 - 1e-13;
  const auto v = elliptic::jacobi(2.0, Modulus(k));
  CHECK(v.sn == doctest::Approx(std::tanh(2.0)).epsilon(1e-12));
  CHECK(v.dn == doctest::Approx(1.0 / std::cosh(2.0)).epsilon(1e-12));
}

TEST_CASE("jacobi at x = 0.8, k = 0.7 against an inverted incomplete integral") {
  const double k = 0.7;
  const double phi = amplitude(0.8, k);
  const auto v = elliptic::jacobi(0.8, Modulus(k));
  CHECK(std::abs(v.sn - std::sin(phi)) < 1e-10);
  CHECK(std::abs(v.cn - std::cos(phi)) < 1e-10);
  CHECK(std::abs(v.dn - std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi))) < 1e-10);
}

TEST_CASE("jacobi across the first quarter period against the inversion oracle") {
  for (double k : {0.2, 0.6, 0.95}) {
    const double K = incomplete_F(kHalfPi, k);
    for (double frac : {0.1, 0.45, 0.9}) {
      const double x = frac * K;
      const double phi = amplitude(x, k);
      const auto v = elliptic::jacobi(x, Modulus(k));
      CHECK(std::abs(v.sn - std::sin(phi)) < 1e-10);
      CHECK(std::abs(v.cn - std::cos(phi)) < 1e-10);
    }
  }
}

TEST_CASE("jacobi against an independent library on random arguments") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-20.0, 20.0), ks(0.0, 0.99);
  for (int i = 0; i < 500; ++i) {
    const double x = xs(rng), k = ks(rng);
    double cn = 0.0, dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(k, x, &cn, &dn);
    const auto v = elliptic::jacobi(x, Modulus(k));
    CHECK(std::abs(v.sn - sn) <= 1e-12);
    CHECK(std::abs(v.cn - cn) <= 1e-12);
    CHECK(std::abs(v.dn - dn) <= 1e-12);
  }
}

TEST_CASE("property: Pythagorean identities on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(-50.0, 50.0), ks(0.0, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const double x = xs(rng), k = ks(rng);
    const auto v = elliptic::jacobi(x, Modulus(k));
    CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) <= 1e-12);
    CHECK(std::abs(v.dn * v.dn - (1.0 - k * k * v.sn * v.sn)) <= 1e-12);
  }
}

TEST_CASE("property: periods 4K for sn and 2K for dn") {
  for (double k : {0.1, 0.5, 0.9, 0.99}) {
    const Modulus m(k);
    const double K = elliptic::complete_K(m);
    for (double x : {-2.3, 0.4, 1.7}) {
      const auto a = elliptic::jacobi(x, m);
      CHECK(std::abs(elliptic::jacobi(x + 4.0 * K, m).sn - a.sn) <= 1e-10);
      CHECK(std::abs(elliptic::jacobi(x + 4.0 * K, m).cn - a.cn) <= 1e-10);
      CHECK(std::abs(elliptic::jacobi(x + 2.0 * K, m).dn - a.dn) <= 1e-10);
      // Half periods flip sn and cn.
      CHECK(std::abs(elliptic::jacobi(x + 2.0 * K, m).sn + a.sn) <= 1e-10);
    }
    CHECK(elliptic::jacobi(K, m).sn == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(elliptic::jacobi(K, m).dn == doctest::Approx(m.complementary()).epsilon(1e-10));
  }
}

TEST_CASE("property: derivative identities by central differences") {
  for (double k : {0.3, 0.8}) {
    const Modulus m(k);
    for (double x : {-1.1, 0.35, 2.9}) {
      double prev[3] = {0, 0, 0};
      for (double d : {1e-2, 5e-3}) {
        const auto p = elliptic::jacobi(x + d, m);
        const auto q = elliptic::jacobi(x - d, m);
        const auto v = elliptic::jacobi(x, m);
        const double err[3] = {std::abs((p.sn - q.sn) / (2 * d) - v.cn * v.dn),
                               std::abs((p.cn - q.cn) / (2 * d) + v.sn * v.dn),
                               std::abs((p.dn - q.dn) / (2 * d) + k * k * v.sn * v.cn)};
        for (int j = 0; j < 3; ++j) {
          CHECK(err[j] < d * d);
          if (prev[j] > 1e-12) CHECK(prev[j] / err[j] == doctest::Approx(4.0).epsilon(0.1));
          prev[j] = err[j];
        }
      }
    }
  }
}
