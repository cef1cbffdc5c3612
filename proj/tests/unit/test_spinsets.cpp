#include <numbers>

#include "doctest.h"
#include "fbdual/cliffords.hpp"
#include "fbdual/spinsets.hpp"

using namespace fbd::spinsets;
using fbd::exactnum::OmegaElem;
using fbd::exactnum::Scalar;
using fbd::ops4::commutator;

namespace {

const OmegaElem I = OmegaElem::i();

void all_pass(const fbd::Checks& cs) {
  for (const auto& c : cs) {
    INFO(c.id << ": expected " << c.expected << ", got " << c.got);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("printed entries") {
  const OmegaElem h = OmegaElem(Scalar::rational(1, 2));
  CHECK(build_spin(SpinSet::fermi).s[2] == AntiOp::linear(Mat4::diag(-h * I, h * I, -h * I, h * I)));
  CHECK(build_spin(SpinSet::prime_boson).s[2] == AntiOp::scalar(-h * I));
  const AntiOp c3 = build_spin(SpinSet::cyclic_boson).s[2];
  CHECK(c3.L(1, 0) == OmegaElem(1));
  CHECK(c3.L(0, 1) == OmegaElem(-1));
  const Intertwiner u = build_intertwiner(Transform::u);
  CHECK(u.t.A(0, 3) == OmegaElem(1));
  CHECK(u.t.L(0, 3).is_zero());
  CHECK(u.t.L(1, 0) == OmegaElem(1));
  const Intertwiner w = build_intertwiner(Transform::W);
  CHECK(w.t.L(0, 0) == OmegaElem(1));
  CHECK(w.t.L(1, 1) == -OmegaElem(Scalar::inv_sqrt2()));
  CHECK(w.t.A(1, 3) == OmegaElem(Scalar::inv_sqrt2()));
  const Intertwiner uu = build_intertwiner(Transform::U);
  CHECK(uu.t.apply(unit(1)) == cyclic_orts()[0]);
}

TEST_CASE("su2 and casimirs") {
  for (SpinSet s : {SpinSet::fermi, SpinSet::prime_boson, SpinSet::cartesian_boson, SpinSet::cyclic_boson})
    all_pass(verify_su2_casimir(s));
  CHECK(build_spin(SpinSet::fermi).casimir() == AntiOp::scalar(OmegaElem(Scalar::rational(-3, 4))));
  CHECK(build_spin(SpinSet::cyclic_boson).casimir() == AntiOp::linear(Mat4::diag(-2, -2, -2, 0)));
  const auto c = build_spin(SpinSet::cyclic_boson);
  CHECK(commutator(c.s[0], c.s[0]).is_zero());
}

TEST_CASE("tensor components") {
  const SpinTriple s = build_spin(SpinSet::fermi);
  CHECK(s.component(1, 2) == s.s[2]);
  CHECK(s.component(2, 1) == -s.s[2]);
  CHECK(s.component(3, 1) == s.s[1]);
  CHECK(s.component(2, 3) == s.s[0]);
  CHECK(s.component(2, 2).is_zero());
  // s_ln = (1/2) gamma_l gamma_n with lowered spatial indices: gamma_l = -gamma^l.
  using fbd::cliffords::gamma;
  CHECK(s.component(1, 2) == AntiOp::scalar(OmegaElem(Scalar::rational(1, 2))) * gamma(1) * gamma(2));
}

TEST_CASE("intertwinings") {
  all_pass(verify_intertwinings());
  CHECK(resolve_w_reading().name == "s + s'");
  const auto dir = resolve_u_direction();
  REQUIRE(dir.has_value());
  CHECK(dir->forward);
}

TEST_CASE("hamiltonian invariance and spectra") {
  all_pass(verify_h_invariance());
  all_pass(verify_spectra());
}

TEST_CASE("eigenvalue helper") {
  CHECK(eigenvalue(AntiOp::scalar(3), unit(2)) == OmegaElem(3));
  CHECK_FALSE(eigenvalue(build_spin(SpinSet::cyclic_boson).s[2], unit(1)).has_value());
}

TEST_CASE("integer spin rotation closes at 2 pi") {
  const auto e = fbd::ops4::expm(build_spin(SpinSet::cyclic_boson).s[2], 2 * std::numbers::pi);
  CHECK((e - fbd::ops4::Real8::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}
