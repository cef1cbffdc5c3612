#include "fbdual/ops4.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "fbdual/errors.hpp"

namespace fbd::ops4 {

Mat4::Mat4(std::initializer_list<OmegaElem> entries) {
  if (entries.size() != 16) throw Error("Mat4 needs 16 entries");
  std::copy(entries.begin(), entries.end(), e_.begin());
}

Mat4 Mat4::identity() { return diag(1, 1, 1, 1); }

Mat4 Mat4::diag(const OmegaElem& a, const OmegaElem& b, const OmegaElem& c, const OmegaElem& d) {
  Mat4 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

bool Mat4::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const OmegaElem& x) { return x.is_zero(); });
}

bool Mat4::is_constant() const {
  return std::all_of(e_.begin(), e_.end(), [](const OmegaElem& x) { return x.as_scalar().has_value(); });
}

Mat4 Mat4::operator-() const {
  Mat4 r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Mat4& Mat4::operator+=(const Mat4& o) {
  for (int i = 0; i < 16; ++i) e_[i] += o.e_[i];
  return *this;
}

Mat4& Mat4::operator-=(const Mat4& o) {
  for (int i = 0; i < 16; ++i) e_[i] -= o.e_[i];
  return *this;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const OmegaElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < 4; ++j)
        if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
    }
  return r;
}

Mat4 operator*(const OmegaElem& c, const Mat4& m) {
  if (c.is_one()) return m;
  Mat4 r;
  if (c.is_zero()) return r;
  for (int i = 0; i < 16; ++i)
    if (!m.e_[i].is_zero()) r.e_[i] = c * m.e_[i];
  return r;
}

bool operator==(const Mat4& a, const Mat4& b) {
  for (int i = 0; i < 16; ++i)
    if (!(a.e_[i] == b.e_[i])) return false;
  return true;
}

Vec4 Mat4::apply(const Vec4& v) const {
  Vec4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Mat4 Mat4::conj() const {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.e_[i] = e_[i].conj();
  return r;
}

Mat4 Mat4::conj_reflect() const {
  Mat4 r;
  for (int i = 0; i < 16; ++i) r.e_[i] = e_[i].conj_reflect();
  return r;
}

Mat4 Mat4::transpose() const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Complex4 Mat4::eval(const Point& pt) const {
  Complex4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = (*this)(i, j).is_zero() ? 0.0 : (*this)(i, j).eval(pt);
  return r;
}

std::string Mat4::to_string() const {
  std::string out = "[";
  for (int i = 0; i < 4; ++i) {
    out += i ? "; " : "";
    for (int j = 0; j < 4; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
  }
  return out + "]";
}

AntiOp& AntiOp::operator+=(const AntiOp& o) {
  L += o.L;
  A += o.A;
  return *this;
}

AntiOp& AntiOp::operator-=(const AntiOp& o) {
  L -= o.L;
  A -= o.A;
  return *this;
}

Vec4 AntiOp::apply(const Vec4& v) const {
  Vec4 c;
  for (int i = 0; i < 4; ++i) c[i] = v[i].conj();
  Vec4 a = L.apply(v), b = A.apply(c);
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

std::string AntiOp::to_string() const {
  if (is_linear()) return L.to_string();
  if (is_antilinear()) return A.to_string() + "*C";
  return L.to_string() + " + " + A.to_string() + "*C";
}

std::string describe(const AntiOp& x) {
  if (x.is_zero()) return "0";
  if (x.is_linear()) {
    const OmegaElem& c = x.L(0, 0);
    if (x.L == c * Mat4::identity()) return c.is_one() ? "I" : c.to_string() + "*I";
  }
  return x.to_string();
}

Check equality_check(std::string id, std::string statement, const AntiOp& expected, const AntiOp& got,
                     std::string anchor, Basis basis) {
  const bool pass = expected == got;
  return make_check(std::move(id), std::move(statement), describe(expected), describe(got), pass,
                    std::move(anchor), basis);
}

AntiOp compose(const AntiOp& x, const AntiOp& y) {
  AntiOp r;
  const bool xl = !x.L.is_zero(), xa = !x.A.is_zero();
  const bool yl = !y.L.is_zero(), ya = !y.A.is_zero();
  if (xl && yl) r.L += x.L * y.L;
  if (xa && ya) r.L += x.A * y.A.conj();
  if (xl && ya) r.A += x.L * y.A;
  if (xa && yl) r.A += x.A * y.L.conj();
  return r;
}

AntiOp commutator(const AntiOp& x, const AntiOp& y) { return compose(x, y) - compose(y, x); }
AntiOp anticommutator(const AntiOp& x, const AntiOp& y) { return compose(x, y) + compose(y, x); }

ExactReal8 operator*(const ExactReal8& a, const ExactReal8& b) {
  ExactReal8 r;
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < 8; ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

namespace {

Scalar constant_entry(const OmegaElem& x) {
  if (x.is_zero()) return Scalar(0);
  auto s = x.as_scalar();
  if (!s) throw Error("exact realification needs constant entries, got " + x.to_string());
  return *s;
}

}  // namespace

ExactReal8 realify_exact(const AntiOp& x) {
  ExactReal8 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Scalar l = constant_entry(x.L(i, j)), a = constant_entry(x.A(i, j));
      const Scalar lr = l.real_part(), li = l.imag_part(), ar = a.real_part(), ai = a.imag_part();
      r(i, j) = lr + ar;
      r(i, j + 4) = ai - li;
      r(i + 4, j) = li + ai;
      r(i + 4, j + 4) = lr - ar;
    }
  return r;
}

Real8 realify(const AntiOp& x, const Point& pt) {
  const Complex4 l = x.L.eval(pt), a = x.A.eval(pt);
  Real8 r;
  r.topLeftCorner<4, 4>() = l.real() + a.real();
  r.topRightCorner<4, 4>() = a.imag() - l.imag();
  r.bottomLeftCorner<4, 4>() = l.imag() + a.imag();
  r.bottomRightCorner<4, 4>() = l.real() - a.real();
  return r;
}

RealifyResult realify_isometry(const AntiOp& x, const Point& pt, double tol) {
  RealifyResult out;
  out.matrix = realify(x, pt);
  const Real8 g = out.matrix.transpose() * out.matrix - Real8::Identity();
  out.is_isometry = g.cwiseAbs().maxCoeff() <= tol;
  return out;
}

Real8 expm(const AntiOp& x, double theta) {
  if (!x.L.is_constant() || !x.A.is_constant()) throw Error("expm needs a constant operator");
  const Real8 m = theta * realify(x);
  return m.exp();
}

}  // namespace fbd::ops4
