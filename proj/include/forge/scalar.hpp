#pragma once
#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace forge {

// Element of Q(zeta_n). Rational part is stored inline; higher powers of zeta
// are kept sparse with exponents below the cyclotomic degree. Elements whose
// only nonzero coefficient is at exponent 0 are normalized to order 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : c0_(v) {}
  Scalar(const mpq_class& q) : c0_(q) { c0_.canonicalize(); }
  Scalar(long p, long q);

  static Scalar zeta(int n, long k = 1);

  int order() const { return n_; }
  bool is_zero() const { return hi_.empty() && c0_ == 0; }
  bool is_rational() const { return hi_.empty(); }
  bool is_one() const { return hi_.empty() && c0_ == 1; }
  const mpq_class& rational() const { return c0_; }
  // coefficient of z^k (k below the degree)
  mpq_class coeff(int k) const;
  // dense coefficient list of length phi(order)
  std::vector<mpq_class> coeffs() const;
  static Scalar from_coeffs(int n, const std::vector<mpq_class>& c);

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  // a += b*c without temporaries where possible
  void add_mul(const Scalar& b, const Scalar& c);

  std::string str() const;
  // text in "p/q" or "c*z^k" form; n is the field order used for z
  static Scalar parse(const std::string& text, int n);

 private:
  void normalize();
  int n_ = 1;
  mpq_class c0_;
  std::vector<std::pair<int, mpq_class>> hi_;
};

// Euler phi and cyclotomic polynomial coefficients (ascending, monic)
int euler_phi(int n);
const std::vector<long>& cyclotomic_poly(int n);

}  // namespace forge
