#pragma once

#include <array>
#include <optional>
#include <string>

#include "fbdual/ops4.hpp"
#include "fbdual/report.hpp"

namespace fbd::spinsets {

using ops4::AntiOp;
using ops4::Mat4;
using ops4::Vec4;

enum class SpinSet { fermi, prime_boson, cartesian_boson, cyclic_boson };
const char* spin_set_name(SpinSet s);

struct SpinTriple {
  std::array<AntiOp, 3> s;

  /// (s^1)^2 + (s^2)^2 + (s^3)^2.
  AntiOp casimir() const;
  /// Tensor components s_ln with s_23 = s^1, s_31 = s^2, s_12 = s^3;
  /// l, n in 1..3.
  AntiOp component(int l, int n) const;
  SpinTriple operator+(const SpinTriple& o) const;
  /// T s T^-1 componentwise.
  SpinTriple conjugated(const AntiOp& t, const AntiOp& t_inv) const;
  bool operator==(const SpinTriple& o) const { return s == o.s; }
};

/// Spin triples with entries as printed.
SpinTriple build_spin(SpinSet which);

enum class Transform { u, W, U };
const char* transform_name(Transform t);

struct Intertwiner {
  AntiOp t, t_inv;
};
Intertwiner build_intertwiner(Transform which);

/// The readings of the W-conjugation tried in order: (s + s') then (s' + s').
struct WReading {
  std::string name;
  SpinTriple conjugated;
};
/// First reading whose W-conjugate equals the printed Cartesian set; throws
/// ConventionMismatch when neither does.
WReading resolve_w_reading();

/// Direction in which U relates the Cartesian and cyclic sets.
struct UDirection {
  std::string name;
  bool forward = false;  // true: cyclic = U cart U^-1
};
std::optional<UDirection> resolve_u_direction();

/// Orts of the cyclic basis C_1..C_4 (index 0..3).
const std::array<Vec4, 4>& cyclic_orts();
/// Unit columns d_1..d_4.
Vec4 unit(int alpha);

/// Value lambda with x v = lambda v, if v is an eigenvector.
std::optional<ops4::OmegaElem> eigenvalue(const AntiOp& x, const Vec4& v);

Checks verify_su2_casimir(SpinSet which);
Checks verify_intertwinings();
Checks verify_h_invariance();
Checks verify_spectra();

}  // namespace fbd::spinsets
