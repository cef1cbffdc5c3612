#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fbdual/ops4.hpp"
#include "fbdual/report.hpp"

namespace fbd::symdiff {

using exactnum::OmegaElem;
using exactnum::Var;
using ops4::AntiOp;
using ops4::Mat4;
using ops4::Vec4;

/// Derivative multi-index over (k1, k2, k3, t).
using Alpha = std::array<int, 4>;

/// Sum of terms M(k, t) d^alpha KR^c in normal form: coefficients left of
/// derivatives, derivatives left of KR. KR is the momentum-space image of
/// complex conjugation, a(k) -> conj(a(-k)).
class DiffOp {
 public:
  struct Key {
    Alpha alpha{};
    bool kr = false;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  DiffOp() = default;
  static DiffOp matrix(Mat4 m);
  static DiffOp scalar(const OmegaElem& c);
  static DiffOp from_antiop(const AntiOp& x);
  /// d/dv for v in {k1, k2, k3, t}.
  static DiffOp d(Var v);
  static DiffOp kr();
  static DiffOp term(const Key& k, Mat4 m);

  /// Adds M d^alpha KR^c, merging with an existing term.
  void add_term(const Key& k, Mat4 m);

  const std::map<Key, Mat4>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_derivatives() const;
  bool has_kr() const;
  /// Matrix part when the operator is a plain (possibly antilinear) matrix.
  std::optional<AntiOp> as_antiop() const;

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  /// Left multiplication by a coefficient.
  friend DiffOp operator*(const OmegaElem& c, const DiffOp& x);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return (a - b).is_zero(); }

  /// Rebuilds the normal form from the stored terms.
  DiffOp normalized() const;
  /// Action on a column of coefficient functions.
  Vec4 apply(const Vec4& f) const;
  std::string to_string() const;

 private:
  std::map<Key, Mat4> terms_;
};

DiffOp compose(const DiffOp& a, const DiffOp& b);
inline DiffOp operator*(const DiffOp& a, const DiffOp& b) { return compose(a, b); }
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// d_t + i omega gamma^0.
DiffOp build_D();

enum class Rep { fermi, bose };
const char* rep_name(Rep r);
enum class Ordering { x_omega, omega_x };
enum class BoseBasis { cartesian, cyclic };

struct Conventions {
  int x_sign = -1;         // x_l -> x_sign * i d/dk_l
  int brace_sign = 1;      // sign in front of i gamma_0 { ... } in j_0k
  Ordering ordering = Ordering::x_omega;
  int eps_sign = 1;        // epsilon^{0123}
  int closure_sign = 1;    // global sign of the right-hand sides
  BoseBasis bose_basis = BoseBasis::cartesian;

  std::vector<std::pair<std::string, std::string>> describe() const;
};

/// Generators with lower indices; index 0 is time.
struct Generators {
  Rep rep = Rep::fermi;
  Conventions conv;
  std::array<DiffOp, 4> p;
  std::array<std::array<DiffOp, 4>, 4> j;        // full
  std::array<std::array<DiffOp, 4>, 4> orbital;  // m_{mu nu}
  std::array<std::array<DiffOp, 4>, 4> spin;     // j - m

  struct Named {
    std::string name;
    const DiffOp* op;
  };
  /// p0..p3, j12, j23, j31, j01, j02, j03.
  std::vector<Named> list() const;
  std::vector<Named> orbital_list() const;
  std::vector<Named> spin_list() const;
};

Generators build_poincare(Rep rep, const Conventions& conv);

Checks verify_invariance(const Generators& g);

struct ClosureResult {
  int passed = 0;
  int total = 0;
  std::string first_failure;
  std::string residual;
};
ClosureResult closure(const Generators& g, bool orbital_only = false, bool stop_at_first = false);
Checks verify_closure(const Generators& g);

struct Casimirs {
  DiffOp p2;
  DiffOp w2;
  DiffOp w0;
};
/// Throws NonScalarCasimir when p^2 or w^2 keep derivative or KR terms.
Casimirs casimirs(const Generators& g);
Checks verify_casimirs(const Generators& g);

/// Tries the finite candidate set and returns the first convention passing
/// invariance and closure, with eps_sign fixed by w_0 = s.(ik). Throws
/// ConventionUnresolvable listing per-candidate residuals.
struct Resolution {
  Conventions conv;
  std::vector<std::string> tried;
};
Resolution resolve_conventions(Rep rep, BoseBasis basis = BoseBasis::cartesian);

/// Jacobi identity on `samples` triples drawn deterministically from the
/// generator list.
Checks verify_jacobi(const Generators& g, int samples);

}  // namespace fbd::symdiff
