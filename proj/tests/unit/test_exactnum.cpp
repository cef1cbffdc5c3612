#include <cmath>
#include <random>

#include "doctest.h"
#include "fbdual/errors.hpp"
#include "fbdual/omega_elem.hpp"

using namespace fbd::exactnum;

namespace {

const OmegaElem w = OmegaElem::omega();
const OmegaElem k1 = OmegaElem::var(Var::k1);
const OmegaElem k2 = OmegaElem::var(Var::k2);
const OmegaElem k3 = OmegaElem::var(Var::k3);
const OmegaElem m = OmegaElem::var(Var::m);
const OmegaElem t = OmegaElem::var(Var::t);
const OmegaElem ksq = k1 * k1 + k2 * k2 + k3 * k3;

// Small random elements: numerators with coefficients in {0, ±1, ±2, ±i, sqrt2}
// over a few monomials, optionally divided by a random polynomial.
struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Scalar coef() {
    switch (pick(6)) {
      case 0: return Scalar(1);
      case 1: return Scalar(-1);
      case 2: return Scalar(2);
      case 3: return Scalar::i();
      case 4: return -Scalar::i();
      default: return Scalar::sqrt2();
    }
  }

  Poly poly(int terms) {
    std::vector<Poly::Term> ts;
    for (int i = 0; i < terms; ++i) {
      Monomial mono;
      for (int v = 0; v < kNumVars; ++v)
        if (pick(3) == 0) mono = mono.with(static_cast<Var>(v), 1 + pick(2));
      ts.push_back({mono, coef()});
    }
    return Poly::from_terms(std::move(ts));
  }

  OmegaElem elem() {
    OmegaElem e(poly(1 + pick(3)), pick(2) ? poly(1 + pick(2)) : Poly{});
    if (pick(2) == 0) {
      Poly d = poly(1 + pick(2)) + Poly(1 + pick(3));
      if (!d.is_zero()) e = e / OmegaElem(d);
    }
    return e;
  }
};

double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("omega squared reduces to k^2 + m^2") {
  CHECK(w * w == OmegaElem(OmegaElem::omega_squared()));
  CHECK((w * w).q().is_zero());
  CHECK((w * w).denominator().empty());
}

TEST_CASE("multiplicative identity") {
  Gen g(7);
  for (int i = 0; i < 10; ++i) {
    const OmegaElem x = g.elem();
    CHECK(x * OmegaElem(1) == x);
  }
}

TEST_CASE("(omega + m)(omega - m) = k^2") {
  const OmegaElem r = (w + m) * (w - m);
  CHECK(r == ksq);
  CHECK(r.q().is_zero());
}

TEST_CASE("division by zero") {
  CHECK_THROWS_AS(k1 / OmegaElem(0), fbd::DivisionByZero);
  const OmegaElem hidden_zero = (w + m) * (w - m) - ksq;
  CHECK(hidden_zero.is_zero());
  CHECK_THROWS_AS(k1 / hidden_zero, fbd::DivisionByZero);
}

TEST_CASE("inverse of omega + m is rationalized") {
  const OmegaElem inv = OmegaElem(1) / (w + m);
  CHECK(inv * (w + m) == OmegaElem(1));
  // (omega - m)/k^2
  CHECK(inv == (w - m) / ksq);
  REQUIRE(inv.denominator().size() == 1);
  CHECK(inv.denominator()[0].poly == OmegaElem::k_squared());
}

TEST_CASE("differentiate") {
  CHECK(w.differentiate(Var::k1) == k1 * w / (ksq + m * m));
  CHECK(m.differentiate(Var::k2).is_zero());
  CHECK((k1 * k2).differentiate(Var::k1) == k2);
  CHECK(w.differentiate(Var::t).is_zero());
  CHECK((t * w).differentiate(Var::t) == w);
  // quotient rule on 1/(omega + m)
  const OmegaElem f = OmegaElem(1) / (w + m);
  const OmegaElem expected = -(k1 / w) / ((w + m) * (w + m));
  CHECK(f.differentiate(Var::k1) == expected);
}

TEST_CASE("conj_reflect") {
  const OmegaElem ik1 = OmegaElem::i() * k1;
  CHECK(ik1.conj_reflect() == ik1);
  CHECK(w.conj_reflect() == w);
  CHECK((OmegaElem::i() * k1 * k2).conj_reflect() == -(OmegaElem::i() * k1 * k2));
  CHECK((k1 / (w + k2)).conj_reflect() == -k1 / (w - k2));
  Gen g(11);
  for (int i = 0; i < 10; ++i) {
    const OmegaElem x = g.elem();
    CHECK(x.conj_reflect().conj_reflect() == x);
  }
}

TEST_CASE("eval_numeric") {
  Point at0;
  at0.m = 1.0;
  CHECK(w.eval(at0).real() == doctest::Approx(1.0));
  const Radical n{OmegaElem(1) / (OmegaElem(2) * w * (w + m))};
  CHECK(n.eval(at0) == doctest::Approx(0.5));
  Point p;
  p.k = {3.0, 0.0, 0.0};
  p.m = 4.0;
  const OmegaElem e = k1 * w / (ksq + m * m);
  CHECK(e.eval(p).real() == doctest::Approx(0.6));
  CHECK(std::abs(e.eval(p).imag()) < 1e-15);
}

TEST_CASE("eval singularity") {
  Point at0;
  CHECK_THROWS_AS((OmegaElem(1) / k1).eval(at0), fbd::EvalSingularity);
  CHECK_THROWS_AS((OmegaElem(1) / (w - m)).eval(at0), fbd::EvalSingularity);
}

TEST_CASE("scalar field") {
  const Scalar x(Rational(3, 2), Rational(-1), Rational(2, 5), Rational(1, 3));
  CHECK(x * x.inverse() == Scalar(1));
  CHECK(x.conj().conj() == x);
  CHECK(Scalar::sqrt2() * Scalar::sqrt2() == Scalar(2));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK((x * Scalar::i()).conj() == x.conj() * -Scalar::i());
  CHECK_THROWS_AS(Scalar(0).inverse(), fbd::DivisionByZero);
}

TEST_CASE("polynomial gcd") {
  const Poly K = OmegaElem::k_squared();
  const Poly W = OmegaElem::omega_squared();
  const Poly x = Poly::var(Var::k1), y = Poly::var(Var::k2);
  CHECK(gcd(K * W, K * (x + y)) == K);
  CHECK(gcd(K, W).is_one());
  CHECK(gcd((x + y) * (x - y), (x + y).pow(2)) == x + y);
  CHECK(gcd(x * y, x * x) == x);
}

TEST_CASE("certified irreducibility") {
  CHECK(certified_irreducible(OmegaElem::k_squared()));
  CHECK(certified_irreducible(OmegaElem::omega_squared()));
  const Poly x = Poly::var(Var::k1), y = Poly::var(Var::k2);
  CHECK_FALSE(certified_irreducible(x * x - y * y));
  CHECK(certified_irreducible(x + Poly(3)));
}

TEST_CASE("reducible denominators are still reduced") {
  const OmegaElem x = k1, y = k2;
  const OmegaElem e = (x - y) / ((x - y) * (x + y));
  CHECK(e == OmegaElem(1) / (x + y));
  REQUIRE(e.denominator().size() == 1);
  CHECK(e.denominator()[0].poly == Poly::var(Var::k1) + Poly::var(Var::k2));
}

TEST_CASE("property: field axioms on random samples") {
  Gen g(2024);
  for (int i = 0; i < 25; ++i) {
    const OmegaElem a = g.elem(), b = g.elem(), c = g.elem();
    CHECK((a * b) * c == a * (b * c));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a * a.inverse() == OmegaElem(1));
  }
}

TEST_CASE("property: normalization is idempotent") {
  Gen g(99);
  for (int i = 0; i < 20; ++i) {
    const OmegaElem a = g.elem() * g.elem() + g.elem();
    const OmegaElem again(a.p(), a.q(), a.denominator());
    CHECK(again.p() == a.p());
    CHECK(again.q() == a.q());
    CHECK(again.to_string() == a.to_string());
  }
}

TEST_CASE("property: Leibniz rule and conj_reflect automorphism") {
  Gen g(5);
  for (int i = 0; i < 20; ++i) {
    const OmegaElem a = g.elem(), b = g.elem();
    for (Var v : {Var::k1, Var::k3, Var::t})
      CHECK((a * b).differentiate(v) == a.differentiate(v) * b + a * b.differentiate(v));
    CHECK((a * b).conj_reflect() == a.conj_reflect() * b.conj_reflect());
    CHECK((a + b).conj_reflect() == a.conj_reflect() + b.conj_reflect());
  }
}

TEST_CASE("property: derivative agrees with central differences") {
  Gen g(17);
  Point p;
  p.k = {0.37, -0.81, 1.13};
  p.m = 1.3;
  p.t = 0.7;
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    const OmegaElem e = g.elem();
    const OmegaElem d = e.differentiate(Var::k1);
    try {
      const double h = 1e-5;
      Point a = p, b = p;
      a.k[0] += h;
      b.k[0] -= h;
      const std::complex<double> fd = (e.eval(a) - e.eval(b)) / (2 * h);
      CHECK(rel_err(d.eval(p), fd) < 1e-6);
      ++checked;
    } catch (const fbd::EvalSingularity&) {
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("omega evaluates positive") {
  Gen g(3);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    Point p;
    p.k = {u(rng), u(rng), u(rng)};
    p.m = 0.1 + std::abs(u(rng));
    CHECK(w.eval(p).real() > 0.0);
  }
}
