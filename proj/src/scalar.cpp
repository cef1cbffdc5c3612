#include "fbdual/scalar.hpp"

#include <cmath>
#include <numbers>

#include "fbdual/errors.hpp"

namespace fbd::exactnum {

namespace {

std::strong_ordering cmp_q(const Rational& x, const Rational& y) {
  const int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// (x0 + x1 sqrt2) * (y0 + y1 sqrt2), skipping zero components.
void mul_q2(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1,
            Rational& r0, Rational& r1) {
  r0 = 0;
  r1 = 0;
  const bool x0z = sgn(x0) == 0, x1z = sgn(x1) == 0, y0z = sgn(y0) == 0, y1z = sgn(y1) == 0;
  if (!x0z && !y0z) r0 += x0 * y0;
  if (!x1z && !y1z) r0 += 2 * x1 * y1;
  if (!x0z && !y1z) r1 += x0 * y1;
  if (!x1z && !y0z) r1 += x1 * y0;
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (sgn(o.a_) != 0) a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  if (sgn(o.c_) != 0) c_ += o.c_;
  if (sgn(o.d_) != 0) d_ += o.d_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (sgn(o.a_) != 0) a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  if (sgn(o.c_) != 0) c_ -= o.c_;
  if (sgn(o.d_) != 0) d_ -= o.d_;
  return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  // (α + iβ)(γ + iδ) with α, β, γ, δ in Q(sqrt2).
  Scalar r;
  if (x.is_real() && y.is_real()) {
    mul_q2(x.a_, x.b_, y.a_, y.b_, r.a_, r.b_);
    return r;
  }
  Rational t0, t1;
  mul_q2(x.a_, x.b_, y.a_, y.b_, r.a_, r.b_);
  mul_q2(x.c_, x.d_, y.c_, y.d_, t0, t1);
  r.a_ -= t0;
  r.b_ -= t1;
  mul_q2(x.a_, x.b_, y.c_, y.d_, r.c_, r.d_);
  mul_q2(x.c_, x.d_, y.a_, y.b_, t0, t1);
  r.c_ += t0;
  r.d_ += t1;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  // 1/(α + iβ) = (α - iβ)/(α² + β²); 1/(r + s sqrt2) = (r - s sqrt2)/(r² - 2s²).
  Rational n0, n1, t0, t1;
  mul_q2(a_, b_, a_, b_, n0, n1);
  mul_q2(c_, d_, c_, d_, t0, t1);
  n0 += t0;
  n1 += t1;
  const Rational den = n0 * n0 - 2 * n1 * n1;
  const Rational i0 = n0 / den, i1 = -n1 / den;
  Scalar r;
  mul_q2(a_, b_, i0, i1, r.a_, r.b_);
  Rational mc = -c_, md = -d_;
  mul_q2(mc, md, i0, i1, r.c_, r.d_);
  return r;
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  if (auto c = cmp_q(x.a_, y.a_); c != 0) return c;
  if (auto c = cmp_q(x.b_, y.b_); c != 0) return c;
  if (auto c = cmp_q(x.c_, y.c_); c != 0) return c;
  return cmp_q(x.d_, y.d_);
}

std::complex<double> Scalar::to_complex() const {
  constexpr double r2 = std::numbers::sqrt2;
  return {a_.get_d() + b_.get_d() * r2, c_.get_d() + d_.get_d() * r2};
}

std::string Scalar::to_string() const {
  std::string out;
  auto part = [&out](const Rational& q, const char* unit) {
    if (sgn(q) == 0) return;
    std::string s = q.get_str();
    const bool neg = s.front() == '-';
    if (neg) s.erase(0, 1);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (*unit != '\0' && s == "1") {
      out += unit;
    } else {
      out += s;
      if (*unit != '\0') {
        out += "*";
        out += unit;
      }
    }
  };
  part(a_, "");
  part(b_, "sqrt2");
  part(c_, "i");
  part(d_, "i*sqrt2");
  return out.empty() ? "0" : out;
}

}  // namespace fbd::exactnum
