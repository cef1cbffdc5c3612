#pragma once

#include <array>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>

#include "fbdual/omega_elem.hpp"
#include "fbdual/report.hpp"

namespace fbd::ops4 {

using exactnum::OmegaElem;
using exactnum::Point;
using exactnum::Scalar;

using Real8 = Eigen::Matrix<double, 8, 8>;
using Complex4 = Eigen::Matrix<std::complex<double>, 4, 4>;
using Vec4 = std::array<OmegaElem, 4>;

/// 4x4 matrix over OmegaElem, row-major.
class Mat4 {
 public:
  Mat4() = default;
  /// Row-major list of 16 entries.
  Mat4(std::initializer_list<OmegaElem> entries);

  static Mat4 identity();
  static Mat4 diag(const OmegaElem& a, const OmegaElem& b, const OmegaElem& c, const OmegaElem& d);

  OmegaElem& operator()(int r, int c) { return e_[4 * r + c]; }
  const OmegaElem& operator()(int r, int c) const { return e_[4 * r + c]; }

  bool is_zero() const;
  bool is_constant() const;

  Mat4 operator-() const;
  Mat4& operator+=(const Mat4& o);
  Mat4& operator-=(const Mat4& o);
  friend Mat4 operator+(Mat4 a, const Mat4& b) { return a += b; }
  friend Mat4 operator-(Mat4 a, const Mat4& b) { return a -= b; }
  friend Mat4 operator*(const Mat4& a, const Mat4& b);
  friend Mat4 operator*(const OmegaElem& c, const Mat4& m);
  friend bool operator==(const Mat4& a, const Mat4& b);
  Vec4 apply(const Vec4& v) const;

  Mat4 conj() const;
  Mat4 conj_reflect() const;
  Mat4 transpose() const;
  Complex4 eval(const Point& pt = {}) const;
  std::string to_string() const;

 private:
  std::array<OmegaElem, 16> e_{};
};

/// Real-linear operator psi -> L psi + A conj(psi).
struct AntiOp {
  Mat4 L, A;

  static AntiOp identity() { return {Mat4::identity(), {}}; }
  /// Complex conjugation C.
  static AntiOp conjugation() { return {{}, Mat4::identity()}; }
  static AntiOp scalar(const OmegaElem& c) { return {c * Mat4::identity(), {}}; }
  static AntiOp linear(Mat4 m) { return {std::move(m), {}}; }
  static AntiOp antilinear(Mat4 m) { return {{}, std::move(m)}; }

  bool is_zero() const { return L.is_zero() && A.is_zero(); }
  bool is_linear() const { return A.is_zero(); }
  bool is_antilinear() const { return L.is_zero(); }

  AntiOp operator-() const { return {-L, -A}; }
  AntiOp& operator+=(const AntiOp& o);
  AntiOp& operator-=(const AntiOp& o);
  friend AntiOp operator+(AntiOp a, const AntiOp& b) { return a += b; }
  friend AntiOp operator-(AntiOp a, const AntiOp& b) { return a -= b; }
  /// Left scalar multiple c*X.
  friend AntiOp operator*(const OmegaElem& c, const AntiOp& x) { return {c * x.L, c * x.A}; }
  friend bool operator==(const AntiOp& a, const AntiOp& b) { return a.L == b.L && a.A == b.A; }

  Vec4 apply(const Vec4& v) const;
  std::string to_string() const;
};

/// Short form for reports: "0", "c*I", or the full matrices.
std::string describe(const AntiOp& x);

/// Exact comparison packaged as a report entry.
Check equality_check(std::string id, std::string statement, const AntiOp& expected, const AntiOp& got,
                     std::string anchor, Basis basis);

/// (L1,A1)(L2,A2) = (L1 L2 + A1 A2*, L1 A2 + A1 L2*).
AntiOp compose(const AntiOp& x, const AntiOp& y);
inline AntiOp operator*(const AntiOp& x, const AntiOp& y) { return compose(x, y); }
AntiOp commutator(const AntiOp& x, const AntiOp& y);
AntiOp anticommutator(const AntiOp& x, const AntiOp& y);

/// Exact realification for constant entries; entries lie in Q(sqrt2).
struct ExactReal8 {
  std::array<Scalar, 64> e{};
  Scalar& operator()(int r, int c) { return e[8 * r + c]; }
  const Scalar& operator()(int r, int c) const { return e[8 * r + c]; }
  friend ExactReal8 operator*(const ExactReal8& a, const ExactReal8& b);
  friend bool operator==(const ExactReal8& a, const ExactReal8& b) = default;
};

/// Matrix of x in (Re psi, Im psi) coordinates:
/// [[Lr + Ar, -Li + Ai], [Li + Ai, Lr - Ar]].
ExactReal8 realify_exact(const AntiOp& x);
Real8 realify(const AntiOp& x, const Point& pt = {});

struct RealifyResult {
  Real8 matrix;
  bool is_isometry = false;
};
RealifyResult realify_isometry(const AntiOp& x, const Point& pt = {}, double tol = 1e-12);

/// exp(theta * realify(x)) for constant x.
Real8 expm(const AntiOp& x, double theta);

}  // namespace fbd::ops4
