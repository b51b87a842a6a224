#pragma once

#include <string>
#include <vector>

#include "ncf/rational.hpp"

namespace ncf {

/// Element of Q(zeta_e), stored as its reduced residue modulo the e-th
/// cyclotomic polynomial (coefficients of 1, z, ..., z^{phi(e)-1}).
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int e, const Rational& q = 0);
  static Cyclotomic root(int e, long k);  // zeta_e^k
  static Cyclotomic from_coeffs(int e, std::vector<Rational> c);

  int order() const noexcept { return e_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
  Cyclotomic operator-() const { return *this * Rational(-1); }
  Cyclotomic inverse() const;  // InvalidArgument on zero
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// "a + b*z + c*z^2" with z a primitive e-th root of unity.
  std::string str() const;

 private:
  void unify(Cyclotomic& o);
  int e_;
  std::vector<Rational> c_;
};

/// Coefficients of the e-th cyclotomic polynomial, constant term first.
const std::vector<Rational>& cyclotomic_polynomial(int e);
int euler_phi(int e);

}  // namespace ncf
