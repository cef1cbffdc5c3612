#include "fbdual/symdiff.hpp"

#include <algorithm>

#include "fbdual/cliffords.hpp"
#include "fbdual/errors.hpp"
#include "fbdual/spinsets.hpp"

namespace fbd::symdiff {

using exactnum::Scalar;

namespace {

constexpr std::array<Var, 4> kDerivVars{Var::k1, Var::k2, Var::k3, Var::t};

const OmegaElem I = OmegaElem::i();

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Mat4 differentiate(const Mat4& m, Var v) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!m(i, j).is_zero()) r(i, j) = m(i, j).differentiate(v);
  return r;
}

Mat4 differentiate(Mat4 m, const Alpha& beta) {
  for (int v = 0; v < 4; ++v)
    for (int n = 0; n < beta[v] && !m.is_zero(); ++n) m = differentiate(m, kDerivVars[v]);
  return m;
}

int k_order(const Alpha& a) { return a[0] + a[1] + a[2]; }

std::string alpha_string(const Alpha& a) {
  static const char* names[] = {"dk1", "dk2", "dk3", "dt"};
  std::string s;
  for (int v = 0; v < 4; ++v)
    for (int n = 0; n < a[v]; ++n) s += std::string(s.empty() ? "" : " ") + names[v];
  return s;
}

// Sign of (mu, nu, rho, sigma) as a permutation of (0, 1, 2, 3).
int parity(const std::array<int, 4>& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

int metric(int mu, int nu) {
  if (mu != nu) return 0;
  return mu == 0 ? 1 : -1;
}

Var kvar(int n) { return kDerivVars[static_cast<std::size_t>(n - 1)]; }

}  // namespace

// ---------------------------------------------------------------------------
// DiffOp

DiffOp DiffOp::term(const Key& k, Mat4 m) {
  DiffOp r;
  r.add_term(k, std::move(m));
  return r;
}

DiffOp DiffOp::matrix(Mat4 m) { return term({}, std::move(m)); }

DiffOp DiffOp::scalar(const OmegaElem& c) { return matrix(c * Mat4::identity()); }

DiffOp DiffOp::from_antiop(const AntiOp& x) {
  DiffOp r = matrix(x.L);
  r.add_term({Alpha{}, true}, x.A);
  return r;
}

DiffOp DiffOp::d(Var v) {
  const auto it = std::find(kDerivVars.begin(), kDerivVars.end(), v);
  if (it == kDerivVars.end()) throw Error("derivatives are taken in k1, k2, k3 or t");
  Key k;
  k.alpha[static_cast<std::size_t>(it - kDerivVars.begin())] = 1;
  return term(k, Mat4::identity());
}

DiffOp DiffOp::kr() { return term({Alpha{}, true}, Mat4::identity()); }

void DiffOp::add_term(const Key& k, Mat4 m) {
  if (m.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, std::move(m));
    return;
  }
  it->second += m;
  if (it->second.is_zero()) terms_.erase(it);
}

bool DiffOp::has_derivatives() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.alpha != Alpha{}; });
}

bool DiffOp::has_kr() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.kr; });
}

std::optional<AntiOp> DiffOp::as_antiop() const {
  if (has_derivatives()) return std::nullopt;
  AntiOp r;
  for (const auto& [k, m] : terms_) (k.kr ? r.A : r.L) = m;
  return r;
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& [k, m] : r.terms_) m = -m;
  return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  for (const auto& [k, m] : o.terms_) add_term(k, m);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  for (const auto& [k, m] : o.terms_) add_term(k, -m);
  return *this;
}

DiffOp operator*(const OmegaElem& c, const DiffOp& x) {
  DiffOp r;
  if (c.is_zero()) return r;
  for (const auto& [k, m] : x.terms_) r.add_term(k, c * m);
  return r;
}

DiffOp DiffOp::normalized() const {
  DiffOp r;
  for (const auto& [k, m] : terms_) r += compose(matrix(m), term(k, Mat4::identity()));
  return r;
}

Vec4 DiffOp::apply(const Vec4& f) const {
  Vec4 out;
  for (const auto& [k, m] : terms_) {
    Vec4 g = f;
    for (auto& x : g) {
      if (k.kr) x = x.conj_reflect();
      for (int v = 0; v < 4; ++v)
        for (int n = 0; n < k.alpha[v]; ++n) x = x.differentiate(kDerivVars[v]);
    }
    const Vec4 mg = m.apply(g);
    for (int i = 0; i < 4; ++i) out[i] += mg[i];
  }
  return out;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, m] : terms_) {
    if (!out.empty()) out += " + ";
    const AntiOp a = AntiOp::linear(m);
    out += ops4::describe(a);
    const std::string d = alpha_string(k.alpha);
    if (!d.empty()) out += " " + d;
    if (k.kr) out += " KR";
  }
  return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  for (const auto& [ka, ma] : a.terms()) {
    for (const auto& [kb, mb] : b.terms()) {
      // Move KR right: KR M = M^cr KR and KR d_k = -d_k KR.
      const Mat4 m2 = ka.kr ? mb.conj_reflect() : mb;
      const bool flip = ka.kr && k_order(kb.alpha) % 2 == 1;
      // Leibniz: d^alpha M = sum_beta C(alpha, beta) (d^beta M) d^(alpha - beta).
      Alpha beta{};
      while (true) {
        long c = flip ? -1 : 1;
        for (int v = 0; v < 4; ++v) c *= binom(ka.alpha[v], beta[v]);
        const Mat4 dm = differentiate(m2, beta);
        if (!dm.is_zero()) {
          DiffOp::Key key;
          for (int v = 0; v < 4; ++v) key.alpha[v] = ka.alpha[v] - beta[v] + kb.alpha[v];
          key.kr = ka.kr != kb.kr;
          Mat4 prod = ma * dm;
          if (c != 1) prod = OmegaElem(c) * prod;
          r.add_term(key, std::move(prod));
        }
        int v = 3;
        while (v >= 0 && beta[v] == ka.alpha[v]) beta[v--] = 0;
        if (v < 0) break;
        ++beta[v];
      }
    }
  }
  return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

DiffOp build_D() {
  return DiffOp::d(Var::t) + DiffOp::matrix(I * OmegaElem::omega() * cliffords::gamma_matrix(0));
}

// ---------------------------------------------------------------------------
// Generators

const char* rep_name(Rep r) { return r == Rep::fermi ? "fermi" : "bose"; }

std::vector<std::pair<std::string, std::string>> Conventions::describe() const {
  auto sgn = [](int s) { return std::string(s > 0 ? "+1" : "-1"); };
  return {
      {"x_sign", sgn(x_sign)},
      {"brace_sign", sgn(brace_sign)},
      {"ordering", ordering == Ordering::x_omega ? "x*omega" : "omega*x"},
      {"eps_sign", sgn(eps_sign)},
      {"closure_sign", sgn(closure_sign)},
      {"bose_basis", bose_basis == BoseBasis::cartesian ? "cartesian" : "cyclic"},
  };
}

namespace {

const char* kJNames[4][4] = {
    {"", "j01", "j02", "j03"}, {"j10", "", "j12", "j13"}, {"j20", "j21", "", "j23"}, {"j30", "j31", "j32", ""}};

constexpr std::array<std::pair<int, int>, 6> kJPairs{{{1, 2}, {2, 3}, {3, 1}, {0, 1}, {0, 2}, {0, 3}}};

std::vector<Generators::Named> listing(const Generators& g, const std::array<std::array<DiffOp, 4>, 4>& j,
                                       bool with_p, const std::string& prefix) {
  std::vector<Generators::Named> out;
  if (with_p)
    for (int mu = 0; mu < 4; ++mu) out.push_back({"p" + std::to_string(mu), &g.p[static_cast<std::size_t>(mu)]});
  for (const auto& [a, b] : kJPairs) out.push_back({prefix + std::string(kJNames[a][b]).substr(1), &j[a][b]});
  return out;
}

}  // namespace

std::vector<Generators::Named> Generators::list() const { return listing(*this, j, true, "j"); }
std::vector<Generators::Named> Generators::orbital_list() const { return listing(*this, orbital, true, "m"); }
std::vector<Generators::Named> Generators::spin_list() const { return listing(*this, spin, false, "s"); }

Generators build_poincare(Rep rep, const Conventions& conv) {
  using spinsets::SpinSet;
  Generators g;
  g.rep = rep;
  g.conv = conv;
  const spinsets::SpinTriple s = spinsets::build_spin(
      rep == Rep::fermi ? SpinSet::fermi
                        : (conv.bose_basis == BoseBasis::cartesian ? SpinSet::cartesian_boson : SpinSet::cyclic_boson));

  const OmegaElem w = OmegaElem::omega();
  const OmegaElem m = OmegaElem::var(Var::m);
  const Mat4& g0 = cliffords::gamma_matrix(0);
  auto P = [](int n) { return DiffOp::scalar(I * OmegaElem::var(kvar(n))); };
  auto X = [&](int l) { return OmegaElem(conv.x_sign) * I * DiffOp::d(kvar(l)); };
  const DiffOp W = DiffOp::scalar(w);
  const DiffOp i_g0 = DiffOp::matrix(I * g0);
  const DiffOp inv_2w = DiffOp::scalar(OmegaElem(1) / (OmegaElem(2) * w));
  const DiffOp inv_wm = DiffOp::scalar(OmegaElem(1) / (w + m));
  const OmegaElem brace = OmegaElem(conv.brace_sign);

  g.p[0] = DiffOp::matrix(-I * w * g0);
  for (int n = 1; n <= 3; ++n) g.p[static_cast<std::size_t>(n)] = P(n);

  for (int l = 1; l <= 3; ++l)
    for (int n = 1; n <= 3; ++n) {
      if (l == n) continue;
      g.orbital[l][n] = X(l) * P(n) - X(n) * P(l);
      g.spin[l][n] = DiffOp::from_antiop(s.component(l, n));
    }
  for (int k = 1; k <= 3; ++k) {
    const DiffOp xw = conv.ordering == Ordering::x_omega ? X(k) * W : W * X(k);
    g.orbital[0][k] = DiffOp::scalar(OmegaElem::var(Var::t)) * P(k) + brace * (i_g0 * (xw + P(k) * inv_2w));
    // (s x d)_k = eps_kab s^a d_b
    const int a = k % 3 + 1, b = (k + 1) % 3 + 1;
    const DiffOp cross = DiffOp::from_antiop(s.s[static_cast<std::size_t>(a - 1)]) * P(b) -
                         DiffOp::from_antiop(s.s[static_cast<std::size_t>(b - 1)]) * P(a);
    g.spin[0][k] = brace * (i_g0 * cross * inv_wm);
  }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < mu; ++nu) {
      g.orbital[mu][nu] = -g.orbital[nu][mu];
      g.spin[mu][nu] = -g.spin[nu][mu];
    }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) g.j[mu][nu] = g.orbital[mu][nu] + g.spin[mu][nu];
  return g;
}

// ---------------------------------------------------------------------------
// Verification

Checks verify_invariance(const Generators& g) {
  const DiffOp D = build_D();
  Checks out;
  const std::string rep = rep_name(g.rep);
  auto run = [&](const std::vector<Generators::Named>& gens, const std::string& kind, const std::string& anchor) {
    for (const auto& q : gens) {
      const DiffOp c = commutator(D, *q.op);
      out.push_back(make_check("invariance." + rep + "." + kind + "." + q.name, "[D, " + q.name + "] = 0", "0",
                               c.is_zero() ? "0" : c.to_string(), c.is_zero(), anchor, Basis::stated));
    }
  };
  run(g.list(), "full", "generators commute with the FW operator");
  run(g.orbital_list(), "orbital", "orbital parts are invariance transformations");
  run(g.spin_list(), "spin", "spin parts are invariance transformations");
  return out;
}

namespace {

struct GenRef {
  bool is_p;
  int a, b;  // p_a or j_ab
  std::string name;
};

std::vector<GenRef> gen_refs() {
  std::vector<GenRef> r;
  for (int mu = 0; mu < 4; ++mu) r.push_back({true, mu, -1, "p" + std::to_string(mu)});
  for (const auto& [a, b] : kJPairs) r.push_back({false, a, b, std::string(kJNames[a][b])});
  return r;
}

struct Pair {
  std::string name;
  DiffOp lhs, rhs;
};

// Right-hand side of [x, y] from the Poincare relations (before the global sign).
DiffOp expected_bracket(const GenRef& x, const GenRef& y, const std::array<DiffOp, 4>& p,
                        const std::array<std::array<DiffOp, 4>, 4>& j) {
  auto scaled = [](int c, const DiffOp& d) { return c == 0 ? DiffOp() : OmegaElem(c) * d; };
  if (x.is_p && y.is_p) return {};
  if (!x.is_p && y.is_p) {
    const int mu = x.a, nu = x.b, s = y.a;
    return scaled(metric(nu, s), p[mu]) - scaled(metric(mu, s), p[nu]);
  }
  if (x.is_p && !y.is_p) return -expected_bracket(y, x, p, j);
  const int mu = x.a, nu = x.b, rho = y.a, sg = y.b;
  return scaled(metric(nu, rho), j[mu][sg]) + scaled(metric(mu, sg), j[nu][rho]) -
         scaled(metric(mu, rho), j[nu][sg]) - scaled(metric(nu, sg), j[mu][rho]);
}

}  // namespace

ClosureResult closure(const Generators& g, bool orbital_only, bool stop_at_first) {
  const auto& j = orbital_only ? g.orbital : g.j;
  const auto refs = gen_refs();
  auto op = [&](const GenRef& r) -> const DiffOp& { return r.is_p ? g.p[r.a] : j[r.a][r.b]; };
  ClosureResult res;
  for (std::size_t x = 0; x < refs.size(); ++x)
    for (std::size_t y = x + 1; y < refs.size(); ++y) {
      ++res.total;
      const DiffOp lhs = commutator(op(refs[x]), op(refs[y]));
      const DiffOp rhs = OmegaElem(g.conv.closure_sign) * expected_bracket(refs[x], refs[y], g.p, j);
      const DiffOp diff = lhs - rhs;
      if (diff.is_zero()) {
        ++res.passed;
        continue;
      }
      if (res.first_failure.empty()) {
        res.first_failure = "[" + refs[x].name + ", " + refs[y].name + "]";
        res.residual = diff.to_string();
      }
      if (stop_at_first) return res;
    }
  return res;
}

Checks verify_closure(const Generators& g) {
  const auto refs = gen_refs();
  auto op = [&](const GenRef& r) -> const DiffOp& { return r.is_p ? g.p[r.a] : g.j[r.a][r.b]; };
  const std::string rep = rep_name(g.rep);
  Checks out;
  for (std::size_t x = 0; x < refs.size(); ++x)
    for (std::size_t y = x + 1; y < refs.size(); ++y) {
      const DiffOp lhs = commutator(op(refs[x]), op(refs[y]));
      const DiffOp rhs = OmegaElem(g.conv.closure_sign) * expected_bracket(refs[x], refs[y], g.p, g.j);
      const bool pass = (lhs - rhs).is_zero();
      const std::string name = refs[x].name + "_" + refs[y].name;
      auto short_form = [](const DiffOp& d) {
        if (d.is_zero()) return std::string("0");
        return d.to_string();
      };
      out.push_back(make_check("closure." + rep + "." + name,
                               "[" + refs[x].name + ", " + refs[y].name + "] per the Poincare relations",
                               pass ? "relation holds" : short_form(rhs),
                               pass ? "relation holds" : short_form(lhs), pass,
                               "Poincare commutation relations", Basis::stated));
    }
  const ClosureResult orb = closure(g, true);
  out.push_back(make_check("closure." + rep + ".orbital", "orbital parts alone close under the same relations",
                           std::to_string(orb.total) + "/" + std::to_string(orb.total),
                           std::to_string(orb.passed) + "/" + std::to_string(orb.total) +
                               (orb.first_failure.empty() ? "" : " first failure " + orb.first_failure),
                           orb.passed == orb.total, "orbital parts of the generators", Basis::stated));
  return out;
}

Casimirs casimirs(const Generators& g) {
  Casimirs c;
  for (int mu = 0; mu < 4; ++mu) c.p2 += OmegaElem(metric(mu, mu)) * (g.p[mu] * g.p[mu]);
  std::array<DiffOp, 4> w;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        for (int sg = 0; sg < 4; ++sg) {
          const int e = parity({mu, nu, rho, sg});
          if (e == 0) continue;
          // w^mu = (1/2) eps^{mu nu rho sigma} p_nu j_rho sigma
          const OmegaElem coef = OmegaElem(Scalar::rational(e * g.conv.eps_sign, 2));
          w[mu] += coef * (g.p[nu] * g.j[rho][sg]);
        }
  c.w0 = w[0];
  for (int mu = 0; mu < 4; ++mu) c.w2 += OmegaElem(metric(mu, mu)) * (w[mu] * w[mu]);
  for (const auto* d : {&c.p2, &c.w2})
    if (d->has_derivatives() || d->has_kr())
      throw NonScalarCasimir("Casimir keeps operator terms: " + d->to_string());
  return c;
}

namespace {

DiffOp spin_dot_ik(const Generators& g) {
  DiffOp r;
  for (int a = 1; a <= 3; ++a) {
    const int b = a % 3 + 1, c = (a + 1) % 3 + 1;
    // s^a = s_bc
    r += g.spin[b][c] * DiffOp::scalar(I * OmegaElem::var(kvar(a)));
  }
  return r;
}

}  // namespace

Checks verify_casimirs(const Generators& g) {
  const std::string rep = rep_name(g.rep);
  const bool fermi = g.rep == Rep::fermi;
  Checks out;
  Casimirs c;
  try {
    c = casimirs(g);
  } catch (const NonScalarCasimir& e) {
    out.push_back(make_check("casimir." + rep + ".scalar", "p^2 and w^2 reduce to constant matrices", "constant",
                             e.what(), false, "Casimir operators", Basis::stated));
    return out;
  }
  const OmegaElem m2 = OmegaElem::var(Var::m) * OmegaElem::var(Var::m);
  const DiffOp plus = DiffOp::scalar(m2), minus = DiffOp::scalar(-m2);
  const std::string p2s = c.p2 == plus ? "+m^2 I" : (c.p2 == minus ? "-m^2 I" : c.p2.to_string());
  out.push_back(make_check("casimir." + rep + ".p2", "|p^mu p_mu| = m^2 (sign recorded)", "+-m^2 I", p2s,
                           c.p2 == plus || c.p2 == minus, "mass Casimir", Basis::stated));
  const DiffOp w2_expected =
      fermi ? DiffOp::scalar(OmegaElem(Scalar::rational(-3, 4)) * m2)
            : DiffOp::matrix(Mat4::diag(-2 * m2, -2 * m2, -2 * m2, 0));
  out.push_back(make_check("casimir." + rep + ".w2",
                           fermi ? "w^mu w_mu = -(1/2)(1/2+1) m^2 I" : "w^mu w_mu = -1(1+1) m^2 diag(1,1,1,0)",
                           w2_expected.to_string(), c.w2.to_string(), c.w2 == w2_expected, "spin Casimir",
                           Basis::stated));
  const DiffOp sk = spin_dot_ik(g);
  const std::string w0s = c.w0 == sk ? "+s.(ik)" : (c.w0 == -sk ? "-s.(ik)" : c.w0.to_string());
  out.push_back(make_check("casimir." + rep + ".w0", "w_0 = s.grad with grad -> ik (fixes eps^{0123})", "+s.(ik)",
                           w0s, c.w0 == sk, "Lubanski-Pauli vector", Basis::stated));
  return out;
}

Resolution resolve_conventions(Rep rep, BoseBasis basis) {
  Resolution res;
  const DiffOp D = build_D();
  for (int xs : {1, -1})
    for (int bs : {1, -1})
      for (Ordering o : {Ordering::x_omega, Ordering::omega_x})
        for (int cs : {1, -1}) {
          Conventions conv;
          conv.x_sign = xs;
          conv.brace_sign = bs;
          conv.ordering = o;
          conv.closure_sign = cs;
          conv.bose_basis = basis;
          std::string label;
          for (const auto& [k, v] : conv.describe())
            if (k != "eps_sign" && k != "bose_basis") label += k + "=" + v + " ";
          const Generators g = build_poincare(rep, conv);
          std::string failure;
          for (const auto& q : g.list())
            if (!commutator(D, *q.op).is_zero()) {
              failure = "invariance fails for " + q.name;
              break;
            }
          if (failure.empty()) {
            const ClosureResult cr = closure(g, false, true);
            if (cr.passed != cr.total) failure = "closure fails at " + cr.first_failure;
          }
          if (failure.empty()) {
            const DiffOp w0 = casimirs(g).w0;
            const DiffOp sk = spin_dot_ik(g);
            if (w0 == sk) {
              conv.eps_sign = 1;
            } else if (w0 == -sk) {
              conv.eps_sign = -1;
            } else {
              failure = "w0 is not proportional to s.(ik)";
            }
          }
          res.tried.push_back(label + (failure.empty() ? "accepted" : failure));
          if (failure.empty()) {
            res.conv = conv;
            return res;
          }
        }
  std::string msg = "no convention candidate passes invariance and closure:";
  for (const auto& t : res.tried) msg += "\n  " + t;
  throw ConventionUnresolvable(msg);
}

Checks verify_jacobi(const Generators& g, int samples) {
  const auto gens = g.list();
  Checks out;
  int ok = 0;
  std::string failing;
  const std::size_t n = gens.size();
  for (int s = 0; s < samples; ++s) {
    // Deterministic walk over distinct triples.
    const std::size_t a = static_cast<std::size_t>(s) % n;
    const std::size_t b = (a + 1 + static_cast<std::size_t>(s) / n) % n;
    std::size_t c = (b + 3 + static_cast<std::size_t>(s) * 7) % n;
    if (c == a || c == b) c = (c + 1) % n;
    if (c == a || c == b) c = (c + 1) % n;
    const DiffOp &x = *gens[a].op, &y = *gens[b].op, &z = *gens[c].op;
    const DiffOp jac =
        commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y));
    if (jac.is_zero()) {
      ++ok;
    } else if (failing.size() < 120) {
      failing += " (" + gens[a].name + "," + gens[b].name + "," + gens[c].name + ")";
    }
  }
  out.push_back(make_check(std::string("jacobi.") + rep_name(g.rep), "Jacobi identity on generator triples",
                           std::to_string(samples) + "/" + std::to_string(samples),
                           std::to_string(ok) + "/" + std::to_string(samples) + failing, ok == samples,
                           "Lie algebra structure", Basis::identity));
  return out;
}

}  // namespace fbd::symdiff
