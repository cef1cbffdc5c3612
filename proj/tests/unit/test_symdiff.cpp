#include <chrono>
#include <complex>
#include <functional>
#include <random>

#include "doctest.h"
#include "fbdual/cliffords.hpp"
#include "fbdual/errors.hpp"
#include "fbdual/symdiff.hpp"

using namespace fbd::symdiff;
using fbd::exactnum::Point;
using fbd::exactnum::Scalar;

namespace {

const OmegaElem I = OmegaElem::i();
const OmegaElem w = OmegaElem::omega();
const OmegaElem m = OmegaElem::var(Var::m);
const OmegaElem k1 = OmegaElem::var(Var::k1);
const OmegaElem k2 = OmegaElem::var(Var::k2);
const OmegaElem k3 = OmegaElem::var(Var::k3);
const OmegaElem t = OmegaElem::var(Var::t);

void all_pass(const fbd::Checks& cs) {
  for (const auto& c : cs) {
    INFO(c.id << ": expected " << c.expected << ", got " << c.got);
    CHECK(c.pass);
  }
}

struct Rand {
  std::mt19937 rng;
  explicit Rand(unsigned seed) : rng(seed) {}
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  OmegaElem entry() {
    static const std::vector<OmegaElem> pool = {OmegaElem(1), OmegaElem(-2), I, k1, k2 * I, t, w, k3 * w, m + k1};
    return pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))];
  }

  DiffOp op(int terms) {
    DiffOp r;
    for (int n = 0; n < terms; ++n) {
      Mat4 mat;
      for (int e = 0; e < 3; ++e) mat(pick(4), pick(4)) += entry();
      DiffOp::Key key;
      key.alpha[static_cast<std::size_t>(pick(4))] = pick(2);
      key.kr = pick(3) == 0;
      r.add_term(key, mat);
    }
    return r;
  }
};

using CVec = std::array<std::complex<double>, 4>;

// Numeric action of a normal-form operator, with derivatives taken by
// five-point central differences of the sampled amplitude.
CVec fd_apply(const DiffOp& op, const Vec4& f, const Point& pt) {
  auto sample = [&](bool kr, const Point& p) {
    CVec v;
    Point q = p;
    if (kr)
      for (auto& x : q.k) x = -x;
    for (int i = 0; i < 4; ++i) {
      v[i] = f[i].eval(q);
      if (kr) v[i] = std::conj(v[i]);
    }
    return v;
  };
  std::function<CVec(bool, fbd::symdiff::Alpha, const Point&)> deriv = [&](bool kr, Alpha a, const Point& p) {
    int v = 0;
    while (v < 4 && a[v] == 0) ++v;
    if (v == 4) return sample(kr, p);
    --a[v];
    const double h = 1e-3;
    CVec out{};
    const double c[] = {1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12};
    for (int s = -2; s <= 2; ++s) {
      if (s == 0) continue;
      Point q = p;
      (v < 3 ? q.k[v] : q.t) += s * h;
      const CVec g = deriv(kr, a, q);
      for (int i = 0; i < 4; ++i) out[i] += c[s + 2] * g[i] / h;
    }
    return out;
  };
  CVec out{};
  for (const auto& [key, mat] : op.terms()) {
    const CVec g = deriv(key.kr, key.alpha, pt);
    const auto mn = mat.eval(pt);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i] += mn(i, j) * g[j];
  }
  return out;
}

}  // namespace

TEST_CASE("compose examples") {
  const DiffOp K1 = DiffOp::scalar(k1);
  const DiffOp X1 = I * DiffOp::d(Var::k1);
  CHECK(commutator(K1, X1) == DiffOp::scalar(-I));
  CHECK(commutator(DiffOp::d(Var::t), DiffOp::scalar(t)) == DiffOp::scalar(1));
  const DiffOp ik1 = DiffOp::scalar(I * k1);
  CHECK(DiffOp::kr() * ik1 == ik1 * DiffOp::kr());
  CHECK(DiffOp::kr() * DiffOp::kr() == DiffOp::scalar(1));
  CHECK(DiffOp::kr() * DiffOp::d(Var::k2) == -(DiffOp::d(Var::k2) * DiffOp::kr()));
  CHECK(DiffOp::kr() * DiffOp::d(Var::t) == DiffOp::d(Var::t) * DiffOp::kr());
  CHECK(DiffOp::kr() * DiffOp::scalar(I) == DiffOp::scalar(-I) * DiffOp::kr());
}

TEST_CASE("FW operator") {
  const DiffOp D = build_D();
  CHECK(D.terms().size() == 2);
  const Mat4& g0 = fbd::cliffords::gamma_matrix(0);
  const Mat4 h = I * w * g0;
  CHECK(h * h == -(w * w) * Mat4::identity());
  // D on e^{-i omega t} d: d_t contributes -i omega after the phase is stripped.
  Vec4 d1{OmegaElem(1), 0, 0, 0}, d3{0, 0, OmegaElem(1), 0};
  const Vec4 r1 = (DiffOp::matrix(h) + DiffOp::scalar(-I * w)).apply(d1);
  for (const auto& x : r1) CHECK(x.is_zero());
  const Vec4 r3 = (DiffOp::matrix(h) + DiffOp::scalar(-I * w)).apply(d3);
  CHECK(r3[2] == OmegaElem(-2) * I * w);
}

TEST_CASE("generator entries") {
  const Generators g = build_poincare(Rep::fermi, Conventions{});
  CHECK(g.p[2] == DiffOp::scalar(I * k2));
  CHECK(g.p[0] == DiffOp::matrix(-I * w * fbd::cliffords::gamma_matrix(0)));
  CHECK(!g.p[0].has_derivatives());
  const Mat4 g1g2 = fbd::cliffords::gamma_matrix(1) * fbd::cliffords::gamma_matrix(2);
  CHECK(g.spin[1][2] == DiffOp::matrix(OmegaElem(Scalar::rational(1, 2)) * g1g2));
  CHECK(g.j[2][1] == -g.j[1][2]);
  CHECK(g.list().size() == 10);
  CHECK(g.spin_list().size() == 6);
  const Generators b = build_poincare(Rep::bose, Conventions{});
  CHECK(b.spin[1][2].has_kr() == false);
  bool any_kr = false;
  for (const auto& q : b.spin_list()) any_kr = any_kr || q.op->has_kr();
  CHECK(any_kr);
}

TEST_CASE("normal form and associativity") {
  Rand r(11);
  for (int n = 0; n < 12; ++n) {
    const DiffOp a = r.op(3), b = r.op(3), c = r.op(3);
    CHECK(a.normalized() == a);
    CHECK(a.normalized().normalized() == a.normalized());
    CHECK((a * b) * c == a * (b * c));
    CHECK(commutator(a, b) == -commutator(b, a));
  }
}

TEST_CASE("symbolic action agrees with finite differences") {
  const Vec4 f{OmegaElem(1) / (w + OmegaElem(2)), k1 / (w + m), I * k2 * t + k3, w * k1 * k3 / (w * w + OmegaElem(1))};
  const Point pt{{0.3, -0.7, 0.45}, 1.2, 0.8};
  for (Rep rep : {Rep::fermi, Rep::bose}) {
    const Generators g = build_poincare(rep, Conventions{});
    std::vector<Generators::Named> all = g.list();
    const DiffOp D = build_D();
    all.push_back({"D", &D});
    for (const auto& q : all) {
      const Vec4 exact = q.op->apply(f);
      const CVec fd = fd_apply(*q.op, f, pt);
      for (int i = 0; i < 4; ++i) {
        const std::complex<double> e = exact[i].eval(pt);
        INFO(rep_name(rep) << " " << q.name << " row " << i);
        CHECK(std::abs(e - fd[i]) <= 1e-5 * std::max(1.0, std::abs(e)));
      }
    }
  }
}

TEST_CASE("fermi poincare suite") {
  const auto t0 = std::chrono::steady_clock::now();
  const Generators g = build_poincare(Rep::fermi, Conventions{});
  all_pass(verify_invariance(g));
  const auto cl = verify_closure(g);
  CHECK(cl.size() == 46);
  all_pass(cl);
  all_pass(verify_casimirs(g));
  all_pass(verify_jacobi(g, 20));
  const Casimirs c = casimirs(g);
  CHECK(c.p2 == DiffOp::scalar(-(m * m)));
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 60.0);
}

TEST_CASE("bose poincare suite") {
  for (BoseBasis basis : {BoseBasis::cartesian, BoseBasis::cyclic}) {
    Conventions conv;
    conv.bose_basis = basis;
    const Generators g = build_poincare(Rep::bose, conv);
    all_pass(verify_invariance(g));
    all_pass(verify_closure(g));
    all_pass(verify_casimirs(g));
    all_pass(verify_jacobi(g, 20));
  }
}

TEST_CASE("orbital and spin parts") {
  const Generators g = build_poincare(Rep::fermi, Conventions{});
  const ClosureResult orb = closure(g, true);
  CHECK(orb.total == 45);
  CHECK(orb.passed == 45);
  // Rotation spin parts are constant matrices commuting with gamma^0.
  for (Rep rep : {Rep::fermi, Rep::bose}) {
    const Generators h = build_poincare(rep, Conventions{});
    for (const auto& [a, b] : {std::pair{1, 2}, {2, 3}, {3, 1}})
      for (const auto& o : h.orbital_list()) {
        INFO(rep_name(rep) << " s" << a << b << " with " << o.name);
        CHECK(commutator(h.spin[a][b], *o.op).is_zero());
      }
  }
  CHECK(commutator(g.spin[1][2], g.orbital[1][2]).is_zero());
}

TEST_CASE("convention search") {
  for (Rep rep : {Rep::fermi, Rep::bose}) {
    const Resolution r = resolve_conventions(rep);
    CHECK(r.conv.x_sign == -1);
    CHECK(r.conv.brace_sign == 1);
    CHECK(r.conv.ordering == Ordering::x_omega);
    CHECK(r.conv.closure_sign == 1);
    CHECK(r.conv.eps_sign == 1);
    CHECK(!r.tried.empty());
    CHECK(r.tried.back().find("accepted") != std::string::npos);
  }
}

TEST_CASE("wrong conventions surface as failures") {
  Conventions bad;
  bad.brace_sign = -1;
  const Generators g = build_poincare(Rep::fermi, bad);
  bool any_fail = false;
  for (const auto& c : verify_invariance(g)) any_fail = any_fail || !c.pass;
  CHECK(any_fail);
  Conventions flipped;
  flipped.closure_sign = -1;
  const ClosureResult cr = closure(build_poincare(Rep::fermi, flipped), false, true);
  CHECK(cr.passed < cr.total);
  CHECK(!cr.first_failure.empty());
}
