#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fbdual/scalar.hpp"

namespace fbd::exactnum {

/// Coefficient variables. The lexicographic order k1 > k2 > k3 > m > t is the
/// monomial order used by the canonical form.
enum class Var : int { k1 = 0, k2 = 1, k3 = 2, m = 3, t = 4 };
inline constexpr int kNumVars = 5;

/// Numeric values of the coefficient variables.
struct Point {
  std::array<double, 3> k{0.0, 0.0, 0.0};
  double m = 1.0;
  double t = 0.0;
};

/// Exponent vector packed into 12-bit fields, k1 in the most significant
/// position, so that integer comparison is lexicographic comparison.
class Monomial {
 public:
  static constexpr int kBits = 12;
  static constexpr std::uint64_t kMask = (1u << kBits) - 1;

  constexpr Monomial() = default;
  static Monomial var(Var v, int power = 1) { return Monomial{}.with(v, power); }

  int exp(Var v) const {
    return static_cast<int>((bits_ >> shift(v)) & kMask);
  }
  Monomial with(Var v, int power) const {
    Monomial r = *this;
    r.bits_ &= ~(kMask << shift(v));
    r.bits_ |= (static_cast<std::uint64_t>(power) & kMask) << shift(v);
    return r;
  }
  int total_degree() const;
  int k_degree() const { return exp(Var::k1) + exp(Var::k2) + exp(Var::k3); }
  bool is_one() const { return bits_ == 0; }
  bool divides(Monomial o) const;

  friend Monomial operator*(Monomial a, Monomial b) {
    Monomial r;
    r.bits_ = a.bits_ + b.bits_;
    return r;
  }
  /// Requires divisor.divides(*this).
  friend Monomial operator/(Monomial a, Monomial b) {
    Monomial r;
    r.bits_ = a.bits_ - b.bits_;
    return r;
  }
  friend auto operator<=>(Monomial a, Monomial b) = default;
  std::uint64_t bits() const { return bits_; }

 private:
  static constexpr int shift(Var v) { return kBits * (kNumVars - 1 - static_cast<int>(v)); }
  std::uint64_t bits_ = 0;
};

/// Sparse multivariate polynomial over Q(i, sqrt2) in k1, k2, k3, m, t.
/// Terms are kept sorted by decreasing monomial with no zero coefficients.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Scalar coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  Poly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT
  static Poly var(Var v) { return monomial(Monomial::var(v), Scalar(1)); }
  static Poly monomial(Monomial m, Scalar c);
  /// Builds from unsorted terms, merging duplicates.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coef.is_one(); }
  Scalar constant_value() const;

  int degree(Var v) const;
  int total_degree() const;
  bool depends_on(Var v) const { return degree(v) > 0; }
  const Term& leading() const { return terms_.front(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly scaled(const Scalar& c) const;
  Poly times_monomial(Monomial m) const;
  Poly pow(int n) const;

  /// Exact quotient if `d` divides this polynomial, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Scales so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  Poly derivative(Var v) const;
  Poly conj() const;
  /// Substitutes k_j -> -k_j for j = 1..3.
  Poly reflect_k() const;

  /// Coefficients with respect to `v`: exponent -> polynomial free of v.
  std::map<int, Poly> coefficients_in(Var v) const;

  std::complex<double> eval(const Point& p) const;
  std::string to_string() const;

  /// Total order used for deterministic sorting of factor lists.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor, normalized monic. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

const char* var_name(Var v);

}  // namespace fbd::exactnum
