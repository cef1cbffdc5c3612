#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fbdual/poly.hpp"

namespace fbd::exactnum {

/// Monic polynomial factor of a denominator. `irreducible` is set only when
/// irreducibility is certified (linear, or quadratic of rank >= 3).
struct DenFactor {
  Poly poly;
  int exp = 1;
  bool irreducible = false;
};

/// Element (p + q*omega)/D of the field Q(i,sqrt2)(k1,k2,k3,m,t)[omega] with
/// omega^2 = k1^2 + k2^2 + k3^2 + m^2.
///
/// The denominator D is stored as a product of pairwise coprime monic
/// polynomial factors; constants are folded into the numerator. After every
/// operation no factor of D divides both p and q, which makes the stored form
/// reduced. Equality is decided by subtraction, which does not depend on how
/// D is factored.
class OmegaElem {
 public:
  OmegaElem() = default;
  OmegaElem(const Scalar& c) : p_(c) {}  // NOLINT(google-explicit-constructor)
  OmegaElem(long c) : p_(c) {}           // NOLINT
  OmegaElem(Poly p) : p_(std::move(p)) {}  // NOLINT
  OmegaElem(Poly p, Poly q) : p_(std::move(p)), q_(std::move(q)) {}
  /// Reduces on construction.
  OmegaElem(Poly p, Poly q, std::vector<DenFactor> den);

  static OmegaElem omega() { return OmegaElem(Poly{}, Poly(1)); }
  static OmegaElem var(Var v) { return OmegaElem(Poly::var(v)); }
  static OmegaElem i() { return OmegaElem(Scalar::i()); }
  /// omega^2 as a polynomial: k1^2 + k2^2 + k3^2 + m^2.
  static const Poly& omega_squared();
  /// k1^2 + k2^2 + k3^2.
  static const Poly& k_squared();

  const Poly& p() const { return p_; }
  const Poly& q() const { return q_; }
  const std::vector<DenFactor>& denominator() const { return den_; }
  Poly denominator_poly() const;

  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
  bool is_one() const { return q_.is_zero() && den_.empty() && p_.is_one(); }
  /// Value as an exact scalar when the element is constant.
  std::optional<Scalar> as_scalar() const;

  OmegaElem operator-() const;
  OmegaElem& operator+=(const OmegaElem& o);
  OmegaElem& operator-=(const OmegaElem& o) { return *this += -o; }
  OmegaElem& operator*=(const OmegaElem& o) { return *this = *this * o; }
  OmegaElem& operator/=(const OmegaElem& o) { return *this = *this / o; }
  friend OmegaElem operator+(OmegaElem a, const OmegaElem& b) { return a += b; }
  friend OmegaElem operator-(OmegaElem a, const OmegaElem& b) { return a -= b; }
  friend OmegaElem operator*(const OmegaElem& a, const OmegaElem& b);
  friend OmegaElem operator/(const OmegaElem& a, const OmegaElem& b) { return a * b.inverse(); }
  friend bool operator==(const OmegaElem& a, const OmegaElem& b) { return (a - b).is_zero(); }

  /// Throws DivisionByZero when p^2 - q^2*omega^2 vanishes identically.
  OmegaElem inverse() const;

  /// Exact partial derivative; d(omega)/dv = (d omega^2/dv) / (2 omega).
  OmegaElem differentiate(Var v) const;
  /// Complex conjugation of coefficients (k, m, t, omega real).
  OmegaElem conj() const;
  /// Conjugation composed with k -> -k; the momentum-space image of C.
  OmegaElem conj_reflect() const;

  /// Double-precision value with omega = +sqrt(k^2 + m^2). Requires m > 0;
  /// throws EvalSingularity if a denominator vanishes at the point.
  std::complex<double> eval(const Point& pt) const;

  std::string to_string() const;

 private:
  Poly p_, q_;
  std::vector<DenFactor> den_;
};

/// Positive square root of an element, kept symbolic; only numeric values are
/// taken. Used for normalization factors such as 1/sqrt(2 omega (omega + m)).
struct Radical {
  OmegaElem radicand;
  double eval(const Point& pt) const;
};

/// True when `p` is certified irreducible over the algebraic closure.
bool certified_irreducible(const Poly& p);

OmegaElem arith(const OmegaElem& a, const OmegaElem& b, char op);

}  // namespace fbd::exactnum
