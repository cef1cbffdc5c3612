#include "fbdual/spinsets.hpp"

#include "fbdual/cliffords.hpp"
#include "fbdual/errors.hpp"

namespace fbd::spinsets {

using cliffords::gamma;
using exactnum::OmegaElem;
using exactnum::Scalar;
using ops4::commutator;
using ops4::equality_check;

namespace {

const OmegaElem I = OmegaElem::i();
const OmegaElem R = OmegaElem(Scalar::inv_sqrt2());  // 1/sqrt2
const OmegaElem HALF = OmegaElem(Scalar::rational(1, 2));

AntiOp half(const AntiOp& x) { return AntiOp::scalar(HALF) * x; }

const AntiOp& C() {
  static const AntiOp c = AntiOp::conjugation();
  return c;
}

// Operator with a linear part and an antilinear part given entrywise.
AntiOp op(Mat4 l, Mat4 a) { return {std::move(l), std::move(a)}; }

SpinTriple fermi() {
  return {{half(gamma(2) * gamma(3)), half(gamma(3) * gamma(1)), half(gamma(1) * gamma(2))}};
}

SpinTriple prime_boson() {
  const AntiOp g02c = gamma(0) * gamma(2) * C();
  return {{half(-g02c), half(AntiOp::scalar(I) * g02c), half(AntiOp::scalar(-I))}};
}

SpinTriple cartesian() {
  // Entries "C" and "iC" populate the antilinear part.
  const OmegaElem ri = R * I;
  const AntiOp s1 = op({0, ri, 0, 0, ri, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, R, 0, 0, -R, 0, 0, 0, 0, 0, 0});
  const AntiOp s2 = op({0, R, 0, 0, -R, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, -ri, 0, 0, ri, 0, 0, 0, 0, 0, 0});
  const AntiOp s3 = AntiOp::linear(Mat4::diag(-I, 0, -I, 0));
  return {{s1, s2, s3}};
}

SpinTriple cyclic() {
  const AntiOp s1 = AntiOp::antilinear({0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0});
  const AntiOp s2 = AntiOp::antilinear({0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0});
  const AntiOp s3 = AntiOp::linear({0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  return {{s1, s2, s3}};
}

AntiOp casimir_value(SpinSet which) {
  if (which == SpinSet::fermi || which == SpinSet::prime_boson)
    return AntiOp::scalar(OmegaElem(Scalar::rational(-3, 4)));
  return AntiOp::linear(Mat4::diag(-2, -2, -2, 0));
}

bool is_diagonal(const AntiOp& x) {
  if (!x.is_linear()) return false;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && !x.L(r, c).is_zero()) return false;
  return true;
}

const char* kCompNames[] = {"1", "2", "3"};

AntiOp hamiltonian() { return AntiOp::linear(I * OmegaElem::omega() * cliffords::gamma_matrix(0)); }

std::string vec_string(const Vec4& v) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

}  // namespace

const char* spin_set_name(SpinSet s) {
  switch (s) {
    case SpinSet::fermi: return "fermi";
    case SpinSet::prime_boson: return "prime_boson";
    case SpinSet::cartesian_boson: return "cartesian_boson";
    case SpinSet::cyclic_boson: return "cyclic_boson";
  }
  return "?";
}

const char* transform_name(Transform t) {
  switch (t) {
    case Transform::u: return "u";
    case Transform::W: return "W";
    case Transform::U: return "U";
  }
  return "?";
}

AntiOp SpinTriple::casimir() const { return s[0] * s[0] + s[1] * s[1] + s[2] * s[2]; }

AntiOp SpinTriple::component(int l, int n) const {
  if (l == n) return {};
  // s_23 = s^1, s_31 = s^2, s_12 = s^3
  const int k = 6 - l - n;
  const bool cyclic_order = (l % 3) + 1 == n;
  return cyclic_order ? s[static_cast<std::size_t>(k - 1)] : -s[static_cast<std::size_t>(k - 1)];
}

SpinTriple SpinTriple::operator+(const SpinTriple& o) const {
  return {{s[0] + o.s[0], s[1] + o.s[1], s[2] + o.s[2]}};
}

SpinTriple SpinTriple::conjugated(const AntiOp& t, const AntiOp& t_inv) const {
  return {{t * s[0] * t_inv, t * s[1] * t_inv, t * s[2] * t_inv}};
}

SpinTriple build_spin(SpinSet which) {
  switch (which) {
    case SpinSet::fermi: return fermi();
    case SpinSet::prime_boson: return prime_boson();
    case SpinSet::cartesian_boson: return cartesian();
    case SpinSet::cyclic_boson: return cyclic();
  }
  throw Error("unknown spin set");
}

Intertwiner build_intertwiner(Transform which) {
  const OmegaElem ri = R * I;
  switch (which) {
    case Transform::u:
      return {op({0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}),
              op({0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
                 {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0})};
    case Transform::W:
      return {op(Mat4::diag(1, -R, -I, -R), {0, 0, 0, 0, 0, 0, 0, R, 0, 0, 0, 0, 0, -R, 0, 0}),
              op(Mat4::diag(1, -R, I, -R), {0, 0, 0, 0, 0, 0, 0, -R, 0, 0, 0, 0, 0, R, 0, 0})};
    case Transform::U:
      return {op({R, 0, 0, 0, ri, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
                 {0, 0, ri, 0, 0, 0, R, 0, 0, 1, 0, 0, 0, 0, 0, 0}),
              op({R, -ri, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
                 {0, 0, 0, 0, 0, 0, 1, 0, ri, R, 0, 0, 0, 0, 0, 0})};
  }
  throw Error("unknown transform");
}

WReading resolve_w_reading() {
  const Intertwiner w = build_intertwiner(Transform::W);
  const SpinTriple target = cartesian();
  const SpinTriple s = fermi(), sp = prime_boson();
  for (const auto& [name, sum] : {std::pair{std::string("s + s'"), s + sp}, std::pair{std::string("s' + s'"), sp + sp}}) {
    SpinTriple c = sum.conjugated(w.t, w.t_inv);
    if (c == target) return {name, std::move(c)};
  }
  throw ConventionMismatch("no reading of the W conjugation reproduces the Cartesian spin set");
}

std::optional<UDirection> resolve_u_direction() {
  const Intertwiner u = build_intertwiner(Transform::U);
  const SpinTriple cart = cartesian(), cyc = cyclic();
  if (cart.conjugated(u.t, u.t_inv) == cyc) return UDirection{"cyclic = U cartesian U^-1", true};
  if (cart.conjugated(u.t_inv, u.t) == cyc) return UDirection{"cyclic = U^-1 cartesian U", false};
  return std::nullopt;
}

const std::array<Vec4, 4>& cyclic_orts() {
  static const std::array<Vec4, 4> c{{
      {R, R * I, 0, 0},
      {0, 0, 1, 0},
      {R * I, R, 0, 0},
      {0, 0, 0, 1},
  }};
  return c;
}

Vec4 unit(int alpha) {
  Vec4 v;
  v[static_cast<std::size_t>(alpha - 1)] = 1;
  return v;
}

std::optional<OmegaElem> eigenvalue(const AntiOp& x, const Vec4& v) {
  const Vec4 w = x.apply(v);
  int j = 0;
  while (j < 4 && v[static_cast<std::size_t>(j)].is_zero()) ++j;
  if (j == 4) return std::nullopt;
  const OmegaElem lambda = w[static_cast<std::size_t>(j)] / v[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < 4; ++i)
    if (!(w[i] == lambda * v[i])) return std::nullopt;
  return lambda;
}

Checks verify_su2_casimir(SpinSet which) {
  const SpinTriple t = build_spin(which);
  const std::string n = spin_set_name(which);
  Checks out;
  for (int j = 0; j < 3; ++j) {
    const int a = j, b = (j + 1) % 3, c = (j + 2) % 3;
    out.push_back(equality_check(n + ".su2." + kCompNames[a] + kCompNames[b],
                                 "[s^" + std::string(kCompNames[a]) + ", s^" + kCompNames[b] + "] = s^" +
                                     kCompNames[c],
                                 t.s[c], commutator(t.s[a], t.s[b]), "prime SU(2) relations", Basis::derived));
  }
  const bool bose = which == SpinSet::cartesian_boson || which == SpinSet::cyclic_boson;
  out.push_back(equality_check(n + ".casimir",
                               bose ? "s^2 = -1(1+1) diag(1,1,1,0)" : "s^2 = -(1/2)(1/2+1) I",
                               casimir_value(which), t.casimir(), bose ? "spin-1 Casimir" : "spin-1/2 Casimir",
                               Basis::stated));
  int commuting = 0;
  const AntiOp cas = t.casimir();
  for (const auto& x : t.s) commuting += commutator(cas, x).is_zero() ? 1 : 0;
  out.push_back(make_check(n + ".casimir_central", "[s^2, s^j] = 0 for j = 1..3", "3/3",
                           std::to_string(commuting) + "/3", commuting == 3, "Casimir operator", Basis::identity));
  return out;
}

Checks verify_intertwinings() {
  Checks out;
  const AntiOp id = AntiOp::identity();
  for (Transform tr : {Transform::u, Transform::W, Transform::U}) {
    const std::string n = transform_name(tr);
    const Intertwiner x = build_intertwiner(tr);
    out.push_back(equality_check("intertwine." + n + ".inverse", n + " " + n + "^-1 = I", id, x.t * x.t_inv,
                                 "inverse of " + n, Basis::stated));
    out.push_back(equality_check("intertwine." + n + ".inverse_left", n + "^-1 " + n + " = I", id, x.t_inv * x.t,
                                 "inverse of " + n, Basis::stated));
    const bool iso = ops4::realify_isometry(x.t).is_isometry && ops4::realify_isometry(x.t_inv).is_isometry;
    out.push_back(make_check("intertwine." + n + ".isometry", "realify(" + n + ") is orthogonal", "true",
                             iso ? "true" : "false", iso, "inverse of " + n, Basis::derived));
  }

  const SpinTriple s = fermi(), sp = prime_boson(), cart = cartesian(), cyc = cyclic();
  const Intertwiner u = build_intertwiner(Transform::u);
  for (int j = 0; j < 3; ++j)
    out.push_back(equality_check(std::string("intertwine.u_s") + kCompNames[j],
                                 std::string("u s^") + kCompNames[j] + " u^-1 = s'^" + kCompNames[j], sp.s[j],
                                 u.t * s.s[j] * u.t_inv, "u links s and s'", Basis::stated));
  int commuting = 0;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) commuting += commutator(s.s[j], sp.s[l]).is_zero() ? 1 : 0;
  out.push_back(make_check("intertwine.s_sprime_commute", "[s^j, s'^l] = 0 for all j, l", "9/9",
                           std::to_string(commuting) + "/9", commuting == 9, "s and s' commute", Basis::stated));

  std::string reading = "none";
  bool reading_ok = false;
  try {
    reading = resolve_w_reading().name;
    reading_ok = true;
  } catch (const ConventionMismatch&) {
  }
  out.push_back(make_check("intertwine.W_reading", "W (s + s') W^-1 reproduces the Cartesian spin set",
                           "s + s'", reading, reading_ok && reading == "s + s'", "W conjugation",
                           Basis::derived));
  const Intertwiner w = build_intertwiner(Transform::W);
  const SpinTriple ws = (s + sp).conjugated(w.t, w.t_inv);
  out.push_back(equality_check("intertwine.W_s3", "W (s^3 + s'^3) W^-1 = diag(-i, 0, -i, 0)", cart.s[2], ws.s[2],
                               "Cartesian spin set", Basis::stated));
  out.push_back(equality_check("intertwine.s3_sum_unchanged", "s^3 + s'^3 = diag(-i, 0, -i, 0) before W",
                               cart.s[2], s.s[2] + sp.s[2], "spin projection unchanged by W", Basis::stated));
  {
    const bool before = is_diagonal((s + sp).casimir());
    const bool after = is_diagonal(ws.casimir());
    out.push_back(make_check("intertwine.W_diagonalizes", "(s + s')^2 is not diagonal; its W-conjugate is",
                             "before=false after=true",
                             std::string("before=") + (before ? "true" : "false") + " after=" +
                                 (after ? "true" : "false"),
                             !before && after, "W diagonalizes the Casimir", Basis::stated));
  }
  int su2 = 0;
  const SpinTriple sum = s + sp;
  for (int j = 0; j < 3; ++j) su2 += commutator(sum.s[j], sum.s[(j + 1) % 3]) == sum.s[(j + 2) % 3] ? 1 : 0;
  out.push_back(make_check("intertwine.sum_su2", "(s + s') satisfies the prime SU(2) relations", "3/3",
                           std::to_string(su2) + "/3", su2 == 3, "W conjugation", Basis::stated));
  // Conjugation preserves commutators, spot-checked on the W and U maps.
  {
    const Intertwiner uu = build_intertwiner(Transform::U);
    const AntiOp lhs = w.t * commutator(sum.s[0], sum.s[1]) * w.t_inv;
    const AntiOp rhs = commutator(w.t * sum.s[0] * w.t_inv, w.t * sum.s[1] * w.t_inv);
    out.push_back(equality_check("intertwine.W_preserves_brackets", "W [x, y] W^-1 = [W x W^-1, W y W^-1]", lhs,
                                 rhs, "W conjugation", Basis::identity));
    const AntiOp lhs2 = uu.t * commutator(cart.s[1], cart.s[2]) * uu.t_inv;
    const AntiOp rhs2 = commutator(uu.t * cart.s[1] * uu.t_inv, uu.t * cart.s[2] * uu.t_inv);
    out.push_back(equality_check("intertwine.U_preserves_brackets", "U [x, y] U^-1 = [U x U^-1, U y U^-1]", lhs2,
                                 rhs2, "U conjugation", Basis::identity));
  }

  const auto dir = resolve_u_direction();
  out.push_back(make_check("intertwine.U_direction", "U relates the Cartesian and cyclic spin sets",
                           "cyclic = U cartesian U^-1", dir ? dir->name : "none", dir && dir->forward,
                           "U conjugation", Basis::derived));
  const Intertwiner uu = build_intertwiner(Transform::U);
  for (int j = 0; j < 3; ++j)
    out.push_back(equality_check(std::string("intertwine.U_s") + kCompNames[j],
                                 std::string("U s~^") + kCompNames[j] + " U^-1 = s_^" + kCompNames[j], cyc.s[j],
                                 uu.t * cart.s[j] * uu.t_inv, "U conjugation", Basis::derived));
  for (int a = 1; a <= 4; ++a) {
    const Vec4 got = uu.t.apply(unit(a));
    const Vec4& want = cyclic_orts()[static_cast<std::size_t>(a - 1)];
    out.push_back(make_check("intertwine.U_d" + std::to_string(a),
                             "U d_" + std::to_string(a) + " = C_" + std::to_string(a), vec_string(want),
                             vec_string(got), got == want, "U maps Cartesian to cyclic orts", Basis::stated));
  }
  return out;
}

Checks verify_h_invariance() {
  Checks out;
  const AntiOp h = hamiltonian();
  for (Transform tr : {Transform::u, Transform::W, Transform::U}) {
    const std::string n = transform_name(tr);
    const Intertwiner x = build_intertwiner(tr);
    out.push_back(equality_check("h_invariance." + n, n + " (i gamma^0 omega) " + n + "^-1 = i gamma^0 omega", h,
                                 x.t * h * x.t_inv, "FW Hamiltonian unchanged", Basis::stated));
  }
  for (SpinSet which : {SpinSet::fermi, SpinSet::prime_boson, SpinSet::cartesian_boson, SpinSet::cyclic_boson}) {
    const SpinTriple t = build_spin(which);
    int ok = 0;
    for (const auto& x : t.s) ok += commutator(x, h).is_zero() ? 1 : 0;
    out.push_back(make_check(std::string("h_invariance.") + spin_set_name(which),
                             "[s^j, i gamma^0 omega] = 0 for j = 1..3", "3/3", std::to_string(ok) + "/3", ok == 3,
                             "spin sets commute with the FW Hamiltonian", Basis::derived));
  }
  out.push_back(equality_check("h_invariance.identity", "[I, i gamma^0 omega] = 0", AntiOp{},
                               commutator(AntiOp::identity(), h), "FW Hamiltonian unchanged", Basis::identity));
  return out;
}

Checks verify_spectra() {
  Checks out;
  auto spectrum = [](const AntiOp& herm, const std::array<Vec4, 4>& vs, const std::vector<int>& which) {
    std::string s;
    for (int a : which) {
      const auto l = eigenvalue(herm, vs[static_cast<std::size_t>(a)]);
      s += (s.empty() ? "" : ", ") + (l ? l->to_string() : std::string("none"));
    }
    return s;
  };
  const std::array<Vec4, 4> d{unit(1), unit(2), unit(3), unit(4)};
  const AntiOp i = AntiOp::scalar(I);
  {
    const std::string got = spectrum(i * fermi().s[2], d, {0, 1, 2, 3});
    out.push_back(make_check("spectra.fermi", "i s^3 on d_1..d_4", "1/2, -1/2, 1/2, -1/2", got,
                             got == "1/2, -1/2, 1/2, -1/2", "spin projection eigenvalues", Basis::stated));
  }
  {
    const std::string got = spectrum(i * cartesian().s[2], d, {0, 1, 2, 3});
    out.push_back(make_check("spectra.cartesian", "i s~^3 on d_1..d_4 (literal matrix)", "1, 0, 1, 0", got,
                             got == "1, 0, 1, 0", "Cartesian spin set", Basis::derived));
  }
  {
    const std::string got = spectrum(i * cyclic().s[2], cyclic_orts(), {0, 2});
    out.push_back(make_check("spectra.cyclic", "i s_^3 on C_1, C_3", "1, -1", got, got == "1, -1",
                             "cyclic spin set", Basis::derived));
  }
  return out;
}

}  // namespace fbd::spinsets
