#pragma once

#include <complex>
#include <compare>
#include <string>

#include <gmpxx.h>

namespace fbd::exactnum {

using Rational = mpq_class;

/// Exact element a + b*sqrt2 + c*i + d*i*sqrt2 of the field Q(i, sqrt2).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational a) : a_(std::move(a)) {}  // NOLINT
  Scalar(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static Scalar i() { return {0, 0, 1, 0}; }
  static Scalar sqrt2() { return {0, 1, 0, 0}; }
  static Scalar inv_sqrt2() { return {0, Rational(1, 2), 0, 0}; }
  static Scalar rational(long num, long den) { return Scalar(Rational(num, den)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_real() const { return sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }

  /// i -> -i; sqrt2 is fixed.
  Scalar conj() const { return {a_, b_, -c_, -d_}; }
  Scalar real_part() const { return {a_, b_, 0, 0}; }
  Scalar imag_part() const { return {c_, d_, 0, 0}; }

  /// Throws DivisionByZero for zero.
  Scalar inverse() const;

  Scalar operator-() const { return {-a_, -b_, -c_, -d_}; }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  /// Arbitrary but total order, used only for deterministic sorting.
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  Rational a_, b_, c_, d_;
};

}  // namespace fbd::exactnum
