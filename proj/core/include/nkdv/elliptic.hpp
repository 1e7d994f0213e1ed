#pragma once

// Jacobi elliptic functions and the complete elliptic integral of the first
// kind, real argument, modulus convention k in [0, 1] (parameter m = k^2).

namespace nkdv::elliptic {

class Modulus {
 public:
  // Throws InvalidInput unless 0 <= k <= 1.
  explicit Modulus(double k);
  static Modulus from_parameter(double m);
  // Supplies k' directly when it is known more accurately than 1 - k^2.
  static Modulus with_complement(double k, double k_prime);

  double k() const noexcept { return k_; }
  double parameter() const noexcept { return k_ * k_; }
  // k' = sqrt(1 - k^2).
  double complementary() const noexcept { return k_prime_; }

 private:
  double k_;
  double k_prime_;
};

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

// K(k) by the arithmetic-geometric mean. Throws NumericFailure for k == 1.
double complete_K(Modulus k);

// sn, cn, dn evaluated together. Non-finite x throws InvalidInput.
JacobiValues jacobi(double x, Modulus k);

// Quarter period K(k); sn and cn have period 4K, dn has period 2K.
inline double quarter_period(Modulus k) { return complete_K(k); }

}  // namespace nkdv::elliptic
