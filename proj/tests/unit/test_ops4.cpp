#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fbdual/cliffords.hpp"
#include "fbdual/ops4.hpp"

using namespace fbd::ops4;
using fbd::cliffords::gamma;

namespace {

const OmegaElem I = OmegaElem::i();

OmegaElem random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return OmegaElem(Scalar(d(rng), d(rng), d(rng), d(rng)));
}

AntiOp random_op(std::mt19937& rng) {
  AntiOp x;
  std::uniform_int_distribution<int> skip(0, 2);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      if (skip(rng) != 0) x.L(r, c) = random_scalar(rng);
      if (skip(rng) != 0) x.A(r, c) = random_scalar(rng);
    }
  return x;
}

// Exact realification converted to doubles, independent of realify().
Real8 to_real(const ExactReal8& m) {
  Real8 r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r(i, j) = m(i, j).to_complex().real();
  return r;
}

AntiOp fermi_s(int j) {
  const int a[] = {2, 3, 1}, b[] = {3, 1, 2};
  return AntiOp::scalar(Scalar::rational(1, 2)) * gamma(a[j]) * gamma(b[j]);
}

double max_abs(const Real8& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("compose: identity and conjugation") {
  std::mt19937 rng(3);
  const AntiOp x = random_op(rng);
  CHECK(AntiOp::identity() * x == x);
  CHECK(x * AntiOp::identity() == x);
  CHECK(AntiOp::conjugation() * AntiOp::conjugation() == AntiOp::identity());
}

TEST_CASE("gamma5 squared is -I") {
  CHECK(gamma(5) * gamma(5) == AntiOp::scalar(-1));
  CHECK(gamma(6) * gamma(6) == AntiOp::scalar(-1));
}

TEST_CASE("commutator examples") {
  std::mt19937 rng(4);
  const AntiOp x = random_op(rng);
  CHECK(commutator(x, x).is_zero());
  CHECK(anticommutator(gamma(1), gamma(2)).is_zero());
  CHECK(commutator(fermi_s(0), fermi_s(1)) == fermi_s(2));
  CHECK(commutator(fermi_s(1), fermi_s(2)) == fermi_s(0));
  CHECK(commutator(fermi_s(2), fermi_s(0)) == fermi_s(1));
}

TEST_CASE("fermi s3 matrix") {
  // (1/2) g1 g2 = -(i/2) diag(1, -1, 1, -1)
  const OmegaElem h = OmegaElem(Scalar::rational(1, 2)) * I;
  CHECK(fermi_s(2) == AntiOp::linear(Mat4::diag(-h, h, -h, h)));
}

TEST_CASE("property: composition associative and realify is a homomorphism") {
  std::mt19937 rng(11);
  for (int n = 0; n < 20; ++n) {
    const AntiOp x = random_op(rng), y = random_op(rng), z = random_op(rng);
    CHECK((x * y) * z == x * (y * z));
    CHECK(realify_exact(x * y) == realify_exact(x) * realify_exact(y));
    CHECK(max_abs(realify(x * y) - realify(x) * realify(y)) < 1e-12);
  }
}

TEST_CASE("property: i anticommutes through antilinear operators") {
  std::mt19937 rng(12);
  for (int n = 0; n < 20; ++n) {
    AntiOp x = random_op(rng);
    x.L = Mat4{};
    CHECK(x * AntiOp::scalar(I) == AntiOp::scalar(-I) * x);
  }
}

TEST_CASE("realify matches the real-coordinate action") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 10; ++n) {
    const AntiOp x = random_op(rng);
    Eigen::Matrix<std::complex<double>, 4, 1> psi;
    for (int i = 0; i < 4; ++i) psi(i) = {u(rng), u(rng)};
    const auto out = x.L.eval() * psi + x.A.eval() * psi.conjugate();
    Eigen::Matrix<double, 8, 1> v;
    v << psi.real(), psi.imag();
    const Eigen::Matrix<double, 8, 1> w = realify(x) * v;
    CHECK((w.head<4>() - out.real()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((w.tail<4>() - out.imag()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(to_real(realify_exact(x)) - realify(x)) < 1e-14);
  }
}

TEST_CASE("realify(iI) is a quarter turn in each plane") {
  const auto r = realify_isometry(AntiOp::scalar(I));
  CHECK(r.is_isometry);
  Real8 expected = Real8::Zero();
  for (int i = 0; i < 4; ++i) {
    expected(i, i + 4) = -1.0;
    expected(i + 4, i) = 1.0;
  }
  CHECK(max_abs(r.matrix - expected) == 0.0);
  CHECK_FALSE(realify_isometry(AntiOp::scalar(2)).is_isometry);
  CHECK(realify_isometry(gamma(5)).is_isometry);
}

TEST_CASE("expm") {
  CHECK(max_abs(expm(fermi_s(2), 0.0) - Real8::Identity()) < 1e-15);
  const Real8 minus_i = realify(AntiOp::scalar(-1));
  CHECK(max_abs(expm(fermi_s(2), 2 * std::numbers::pi) - minus_i) < 1e-12);
  // Integer-spin rotation generator: [[0, -1], [1, 0]] block.
  Mat4 m;
  m(0, 1) = -1;
  m(1, 0) = 1;
  CHECK(max_abs(expm(AntiOp::linear(m), 2 * std::numbers::pi) - Real8::Identity()) < 1e-12);
}

TEST_CASE("property: expm one-parameter group") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 0; n < 10; ++n) {
    const AntiOp x = random_op(rng);
    const double a = u(rng) / 4, b = u(rng) / 4;
    const Real8 lhs = expm(x, a) * expm(x, b);
    const Real8 rhs = expm(x, a + b);
    CHECK(max_abs(lhs - rhs) / std::max(1.0, max_abs(rhs)) < 1e-10);
  }
}
