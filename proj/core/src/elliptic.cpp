#include "nkdv/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nkdv/errors.hpp"

namespace nkdv::elliptic {

namespace {

constexpr int kMaxAgmIterations = 64;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// k' at 1 - k = 1e-12; closer to 1 the modulus is treated as exactly 1.
constexpr double kHyperbolicComplement = 1.4142135623730951e-6;

}  // namespace

Modulus::Modulus(double k) : k_(k), k_prime_(0.0) {
  if (!(k >= 0.0 && k <= 1.0)) throw InvalidInput("elliptic modulus must lie in [0, 1]");
  k_prime_ = std::sqrt((1.0 - k) * (1.0 + k));
}

Modulus Modulus::with_complement(double k, double k_prime) {
  Modulus m(k);
  if (!(k_prime >= 0.0 && k_prime <= 1.0)) throw InvalidInput("complementary modulus must lie in [0, 1]");
  m.k_prime_ = k_prime;
  return m;
}

Modulus Modulus::from_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw InvalidInput("elliptic parameter must lie in [0, 1]");
  return Modulus(std::sqrt(m));
}

double complete_K(Modulus k) {
  if (k.k() == 1.0) throw NumericFailure("K(k) diverges at k = 1");
  double a = 1.0;
  double b = k.complementary();
  for (int i = 0; i < kMaxAgmIterations; ++i) {
    if (std::abs(a - b) <= 4.0 * kEps * a) return std::numbers::pi / (a + b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  throw NumericFailure("AGM did not converge for K(k)");
}

JacobiValues jacobi(double x, Modulus k) {
  if (!std::isfinite(x)) throw InvalidInput("jacobi argument must be finite");
  if (x == 0.0) return {0.0, 1.0, 1.0};
  if (k.k() == 0.0) return {std::sin(x), std::cos(x), 1.0};
  if (k.complementary() < kHyperbolicComplement) {
    const double s = 1.0 / std::cosh(x);
    return {std::tanh(x), s, s};
  }

  // Descending Landen / AGM scale: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
  // c_{n+1} = (a_n - b_n)/2, then phi_N = 2^N a_N x and
  // phi_{n-1} = (phi_n + asin(c_n / a_n * sin phi_n)) / 2.
  std::array<double, kMaxAgmIterations + 1> a{};
  std::array<double, kMaxAgmIterations + 1> c{};
  a[0] = 1.0;
  c[0] = k.k();
  double b = k.complementary();
  int n = 0;
  while (std::abs(c[n]) > kEps * a[n]) {
    if (n == kMaxAgmIterations) throw NumericFailure("AGM did not converge for jacobi");
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  if (n == 0) {
    // k below machine epsilon: the trigonometric limit is exact to rounding.
    const double sn = std::sin(x);
    return {sn, std::cos(x), std::sqrt(1.0 - k.parameter() * sn * sn)};
  }
  double phi = std::ldexp(a[n] * x, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // 1 - k^2 sn^2 written as a sum of squares; no cancellation near cn = 0 or k = 1.
  const double kp = k.complementary();
  return {sn, cn, std::sqrt(cn * cn + kp * kp * sn * sn)};
}

}  // namespace nkdv::elliptic
