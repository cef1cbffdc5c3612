#include "fbdual/solutions.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "fbdual/cliffords.hpp"
#include "fbdual/errors.hpp"
#include "fbdual/spinsets.hpp"
#include "fbdual/symdiff.hpp"

namespace fbd::solutions {

using cliffords::gamma_matrix;
using exactnum::Point;
using exactnum::Scalar;
using exactnum::Var;
using spinsets::SpinSet;

namespace {

const OmegaElem I = OmegaElem::i();
const OmegaElem W = OmegaElem::omega();
const OmegaElem M = OmegaElem::var(Var::m);
const OmegaElem K[3] = {OmegaElem::var(Var::k1), OmegaElem::var(Var::k2), OmegaElem::var(Var::k3)};

struct Row {
  const char* label;
  int ort;  // 1..4
  int freq;
  int eps1, eps2;
  const char* eps;
};

// Tables of the fundamental solutions.
const std::vector<Row>& rows(Family f) {
  static const std::vector<Row> fermi = {
      {"-+", 1, -1, -1, 1, ""}, {"--", 2, -1, -1, -1, ""}, {"++", 3, 1, 1, 1, ""}, {"+-", 4, 1, 1, -1, ""}};
  static const std::vector<Row> cart = {
      {"+", 1, -1, 0, 0, "+"}, {"0", 2, -1, 0, 0, "0"}, {"-", 3, 1, 0, 0, "-"}, {"0_", 4, 1, 0, 0, "0_"}};
  static const std::vector<Row> cyc = {
      {"C1", 1, -1, 0, 0, "+"}, {"C2", 2, 1, 0, 0, "0"}, {"C3", 3, -1, 0, 0, "-"}, {"C4", 4, 1, 0, 0, "0_"}};
  switch (f) {
    case Family::fermi: return fermi;
    case Family::bose_cartesian: return cart;
    case Family::bose_cyclic: return cyc;
  }
  return fermi;
}

SpinSet spin_set(Family f) {
  switch (f) {
    case Family::fermi: return SpinSet::fermi;
    case Family::bose_cartesian: return SpinSet::cartesian_boson;
    case Family::bose_cyclic: return SpinSet::cyclic_boson;
  }
  return SpinSet::fermi;
}

std::string freq_name(int freq) { return freq < 0 ? "e^{-ikx}" : "e^{+ikx}"; }

OmegaElem inner(const Vec4& a, const Vec4& b) {
  OmegaElem s;
  for (std::size_t i = 0; i < 4; ++i) s += a[i].conj() * b[i];
  return s;
}

Mat4 gamma_dot_k() {
  Mat4 g;
  for (int j = 1; j <= 3; ++j) g += K[j - 1] * gamma_matrix(j);
  return g;
}

Mat4 adjoint(const Mat4& m) { return m.conj().transpose(); }

// Printed Dirac spinor body: ((omega+m) d; (sigma.k) d) on e^{-ikx},
// ((sigma.k) d; (omega+m) d) on e^{+ikx}, with sigma.k built from Pauli blocks.
Vec4 printed_spinor(int freq, int spin_index) {
  const OmegaElem sk[2][2] = {{K[2], K[0] - I * K[1]}, {K[0] + I * K[1], -K[2]}};
  std::array<OmegaElem, 2> d{}, skd{};
  d[static_cast<std::size_t>(spin_index)] = OmegaElem(1);
  for (int r = 0; r < 2; ++r) skd[static_cast<std::size_t>(r)] = sk[r][spin_index];
  const std::array<OmegaElem, 2> wd{(W + M) * d[0], (W + M) * d[1]};
  if (freq < 0) return {wd[0], wd[1], skd[0], skd[1]};
  return {skd[0], skd[1], wd[0], wd[1]};
}

std::string vec_string(const Vec4& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::optional<OmegaElem> branch_eigenvalue(const AntiOp& x, const BranchState& b) {
  // Conjugation maps e^{-ikx} into e^{+ikx}; a plane wave survives only if
  // the antilinear part annihilates it.
  Vec4 c;
  for (std::size_t i = 0; i < 4; ++i) c[i] = b.ort[i].conj();
  const Vec4 ac = x.A.apply(c);
  for (const auto& e : ac)
    if (!e.is_zero()) return std::nullopt;
  return spinsets::eigenvalue(AntiOp::linear(x.L), b.ort);
}

Point random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return Point{{u(rng), u(rng), u(rng)}, 0.5 + std::abs(u(rng)), 0.0};
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::fermi: return "fermi";
    case Family::bose_cartesian: return "bose_cartesian";
    case Family::bose_cyclic: return "bose_cyclic";
  }
  return "?";
}

std::vector<std::string> labels(Family f) {
  std::vector<std::string> out;
  for (const auto& r : rows(f)) out.emplace_back(r.label);
  return out;
}

BranchState fundamental(Family f, const std::string& label) {
  for (const auto& r : rows(f)) {
    if (label != r.label) continue;
    BranchState b;
    b.family = f;
    b.label = r.label;
    b.freq = r.freq;
    b.ort = f == Family::bose_cyclic ? spinsets::cyclic_orts()[static_cast<std::size_t>(r.ort - 1)]
                                     : spinsets::unit(r.ort);
    b.eps1 = r.eps1;
    b.eps2 = r.eps2;
    b.eps = r.eps;
    return b;
  }
  throw UnknownLabel("no branch '" + label + "' in family " + family_name(f));
}

GeneralSolution general_solution(Family f) {
  GeneralSolution g{f, {}};
  for (const auto& l : labels(f)) g.branches.push_back(fundamental(f, l));
  return g;
}

Vec4 fw_residual(const BranchState& b) {
  // d_t on e^{freq i omega t} contributes freq * i omega.
  Vec4 r = symdiff::build_D().apply(b.ort);
  for (std::size_t i = 0; i < 4; ++i) r[i] += OmegaElem(b.freq) * I * W * b.ort[i];
  return r;
}

bool satisfies_fw(const BranchState& b) {
  const Vec4 r = fw_residual(b);
  return std::all_of(r.begin(), r.end(), [](const OmegaElem& e) { return e.is_zero(); });
}

std::vector<Observed> eigencheck(const BranchState& b) {
  std::vector<Observed> out;
  auto need = [&](const std::string& name, const AntiOp& herm) {
    const auto v = branch_eigenvalue(herm, b);
    if (!v) throw NotAnEigenstate(name + " does not act diagonally on " + b.label);
    out.push_back({name, *v});
  };
  // p^n = -d_n acts as freq * i k_n on the branch phase.
  for (int n = 0; n < 3; ++n)
    need("p" + std::to_string(n + 1), AntiOp::scalar(I * (OmegaElem(b.freq) * I * K[n])));
  if (b.family == Family::fermi) need("charge", AntiOp::scalar(I) * AntiOp::linear(I * gamma_matrix(0)));
  need("s3", AntiOp::scalar(I) * spinsets::build_spin(spin_set(b.family)).s[2]);
  return out;
}

OmegaElem helicity_on_axis(const BranchState& b) {
  // s.k^ reduces to s^3 for k along the 3-axis.
  const auto v = branch_eigenvalue(AntiOp::scalar(I) * spinsets::build_spin(spin_set(b.family)).s[2], b);
  if (!v) throw NotAnEigenstate("helicity does not act diagonally on " + b.label);
  return *v;
}

const FwMap& fw_map() {
  static const FwMap map = [] {
    FwMap f;
    f.n.radicand = OmegaElem(1) / (OmegaElem(2) * W * (W + M));
    const Mat4 gk = gamma_dot_k();
    const Mat4 wm = (W + M) * Mat4::identity();
    auto pick = [&](int freq) -> std::pair<Mat4, int> {
      for (int s : {-1, 1}) {
        const Mat4 cand = wm + OmegaElem(s) * gk;
        bool ok = true;
        for (int spin = 0; spin < 2 && ok; ++spin) {
          const Vec4 ort = spinsets::unit(freq < 0 ? spin + 1 : spin + 3);
          ok = cand.apply(ort) == printed_spinor(freq, spin);
        }
        if (ok) return {cand, s};
      }
      throw ConventionMismatch("no sign of gamma.k reproduces the printed spinors on the " + freq_name(freq) +
                               " branch");
    };
    const auto [minus, sm] = pick(-1);
    const auto [plus, sp] = pick(1);
    f.minus = minus;
    f.plus = plus;
    auto term = [](int s) { return std::string(s < 0 ? "(omega+m) - gamma.k" : "(omega+m) + gamma.k"); };
    f.accepted = "e^{-ikx}: N(" + term(sm) + "), e^{+ikx}: N(" + term(sp) + ")";
    return f;
  }();
  return map;
}

PdSpinor to_pd(const BranchState& b) {
  const FwMap& f = fw_map();
  return {f.n, (b.freq < 0 ? f.minus : f.plus).apply(b.ort), b.freq};
}

Mat4 dirac_hamiltonian(int sign) {
  return gamma_matrix(0) * (OmegaElem(sign) * gamma_dot_k() + M * Mat4::identity());
}

bool dirac_check(const PdSpinor& v) {
  const Vec4 hv = dirac_hamiltonian(-v.freq).apply(v.body);
  for (std::size_t i = 0; i < 4; ++i)
    if (!(hv[i] == OmegaElem(-v.freq) * W * v.body[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

Checks verify_fundamentals() {
  Checks out;
  for (Family f : {Family::fermi, Family::bose_cartesian, Family::bose_cyclic}) {
    const std::string fam = family_name(f);
    const GeneralSolution g = general_solution(f);
    int minus = 0;
    for (const auto& b : g.branches) {
      minus += b.freq < 0;
      const Vec4 r = fw_residual(b);
      const bool ok = satisfies_fw(b);
      out.push_back(make_check("solutions." + fam + "." + b.label + ".fw",
                               freq_name(b.freq) + " " + vec_string(b.ort) + " solves (d_t + i omega gamma^0) = 0",
                               "0", ok ? "0" : vec_string(r), ok, "FW equation", Basis::derived));
    }
    std::string gram;
    bool ortho = true;
    Mat4 cols;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        const OmegaElem ip = inner(g.branches[a].ort, g.branches[b].ort);
        if (!(ip == OmegaElem(a == b ? 1 : 0))) {
          ortho = false;
          gram += " <" + g.branches[a].label + "," + g.branches[b].label + ">=" + ip.to_string();
        }
        cols(static_cast<int>(b), static_cast<int>(a)) = g.branches[a].ort[b];
      }
    }
    out.push_back(make_check("solutions." + fam + ".orthonormal", "orts are orthonormal", "identity Gram matrix",
                             ortho ? "identity Gram matrix" : gram, ortho, "complete orthonormalized system",
                             Basis::stated));
    const bool iso = ops4::realify_isometry(AntiOp::linear(cols)).is_isometry;
    out.push_back(make_check("solutions." + fam + ".basis_change", "the orts span the 4-space isometrically",
                             "isometry", iso ? "isometry" : "not an isometry", iso, "complete orthonormalized system",
                             Basis::derived));
    out.push_back(make_check("solutions." + fam + ".frequencies", "two orts per frequency sign", "2 and 2",
                             std::to_string(minus) + " and " + std::to_string(4 - minus), minus == 2,
                             "frequency rule from the FW equation", Basis::derived));
  }
  {
    BranchState wrong = fundamental(Family::fermi, "-+");
    wrong.freq = 1;
    const bool ok = !satisfies_fw(wrong);
    out.push_back(make_check("solutions.mismatch", "e^{+ikx} d_1 does not solve the FW equation", "residual",
                             ok ? "residual" : "0", ok, "FW equation", Basis::identity));
  }
  return out;
}

Checks verify_eigen() {
  Checks out;
  const OmegaElem half(Scalar::rational(1, 2));
  std::set<std::pair<std::string, std::string>> joint;
  for (Family f : {Family::fermi, Family::bose_cartesian, Family::bose_cyclic}) {
    const std::string fam = family_name(f);
    for (const auto& b : general_solution(f).branches) {
      const auto obs = eigencheck(b);
      std::string got, expected;
      bool pass = true;
      auto add = [&](const std::string& name, const OmegaElem& value, const OmegaElem& want) {
        got += (got.empty() ? "" : ", ") + name + "=" + value.to_string();
        expected += (expected.empty() ? "" : ", ") + name + "=" + want.to_string();
        pass = pass && value == want;
      };
      for (int n = 0; n < 3; ++n) add(obs[n].op, obs[n].value, OmegaElem(-b.freq) * K[n]);
      std::string anchor;
      if (f == Family::fermi) {
        add("charge", obs[3].value, OmegaElem(b.eps1));
        add("s3", obs[4].value, OmegaElem(b.eps2) * half);
        joint.insert({obs[3].value.to_string(), obs[4].value.to_string()});
        anchor = "fermionic complete set";
      } else if (f == Family::bose_cartesian) {
        // Literal spectrum of i s~^3 = diag(1, 0, 1, 0).
        add("s3", obs[3].value, OmegaElem(b.ort[0].is_zero() && b.ort[2].is_zero() ? 0 : 1));
        anchor = "bosonic complete set, Cartesian orts";
      } else {
        const int e = b.eps == "+" ? 1 : (b.eps == "-" ? -1 : 0);
        add("s3", obs[3].value, OmegaElem(e));
        anchor = "bosonic complete set, cyclic orts";
      }
      out.push_back(make_check("eigen." + fam + "." + b.label, "joint eigenvalues on " + freq_name(b.freq) + " " +
                                                                  vec_string(b.ort),
                               expected, got, pass, anchor, f == Family::fermi ? Basis::stated : Basis::derived));
    }
  }
  out.push_back(make_check("eigen.fermi.nondegenerate", "joint (charge, s3) labels distinguish the four branches",
                           "4 distinct", std::to_string(joint.size()) + " distinct", joint.size() == 4,
                           "no degeneration in the complete set", Basis::stated));
  {
    // The printed label of d_3 is eps = -1; the literal eigenvalue is +1.
    const BranchState d3 = fundamental(Family::bose_cartesian, "-");
    const OmegaElem lit = eigencheck(d3).back().value;
    out.push_back(make_check("eigen.bose_cartesian.label_note",
                             "d_3 carries label eps=-1 on the e^{+ikx} branch; literal i s~^3 eigenvalue recorded",
                             "1", lit.to_string(), lit == OmegaElem(1), "bosonic labels 1, 0, -1, 0",
                             Basis::derived));
  }
  {
    const auto v = spinsets::eigenvalue(AntiOp::linear(gamma_matrix(0)), spinsets::unit(3));
    const bool ok = v && *v == OmegaElem(-1);
    out.push_back(make_check("eigen.gamma0.d3", "gamma^0 on d_3", "-1", v ? v->to_string() : "none", ok,
                             "sign of the charge", Basis::identity));
  }
  // Helicity along the 3-axis.
  for (Family f : {Family::fermi, Family::bose_cyclic}) {
    const std::string fam = family_name(f);
    std::string got, expected;
    bool pass = true;
    for (const auto& b : general_solution(f).branches) {
      if (f == Family::bose_cyclic && (b.label == "C2" || b.label == "C4")) continue;
      const OmegaElem h = helicity_on_axis(b);
      const OmegaElem want = f == Family::fermi ? OmegaElem(b.eps2) * half : OmegaElem(b.eps == "+" ? 1 : -1);
      got += (got.empty() ? "" : ", ") + h.to_string();
      expected += (expected.empty() ? "" : ", ") + want.to_string();
      pass = pass && h == want;
    }
    out.push_back(make_check("helicity." + fam + ".axis", "i s.k^ at k = (0, 0, k3)", expected, got, pass,
                             "helicity complete set", Basis::derived));
  }
  {
    // Off-axis: i s.k^ on the fermionic set has spectrum {-1/2, -1/2, 1/2, 1/2}.
    std::mt19937 rng(5);
    const auto s = spinsets::build_spin(SpinSet::fermi);
    double worst = 0.0;
    for (int n = 0; n < 8; ++n) {
      const Point p = random_point(rng);
      const double kn = std::hypot(p.k[0], p.k[1], p.k[2]);
      ops4::Complex4 h = ops4::Complex4::Zero();
      for (int a = 0; a < 3; ++a) h += std::complex<double>(0, 1) * (p.k[a] / kn) * s.s[a].L.eval(p);
      Eigen::SelfAdjointEigenSolver<ops4::Complex4> es(h);
      const Eigen::Vector4d want(-0.5, -0.5, 0.5, 0.5);
      worst = std::max(worst, (es.eigenvalues() - want).cwiseAbs().maxCoeff());
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.2e", worst);
    out.push_back(make_check("helicity.fermi.general", "i s.k^ spectrum at random k", "-1/2, -1/2, 1/2, 1/2", buf,
                             worst < 1e-12, "helicity complete set", Basis::derived));
  }
  return out;
}

Checks verify_fw_map() {
  Checks out;
  const FwMap& f = fw_map();
  out.push_back(make_check("fw.sign", "gamma.k sign per frequency branch reproducing the printed spinors",
                           "e^{-ikx}: N((omega+m) - gamma.k), e^{+ikx}: N((omega+m) + gamma.k)", f.accepted,
                           true, "PD spinors", Basis::derived));
  const Mat4 id = Mat4::identity();
  for (const auto& [name, m] : {std::pair<std::string, const Mat4*>{"minus", &f.minus}, {"plus", &f.plus}}) {
    const Mat4 vvd = f.n.radicand * (*m * adjoint(*m));
    const Mat4 vdv = f.n.radicand * (adjoint(*m) * *m);
    const bool ok = vvd == id && vdv == id;
    out.push_back(make_check("fw.unitary." + name, "V V^+ = V^+ V = I with omega^2 = k^2 + m^2", "I",
                             ok ? "I" : vvd.to_string(), ok, "FW operator", Basis::derived));
  }
  {
    // H_D = V^-1 (gamma^0 omega) V at momentum k and -k.
    const Mat4 g0w = W * gamma_matrix(0);
    const Mat4 hm = f.n.radicand * (f.minus * g0w * adjoint(f.minus));
    const Mat4 hp = f.n.radicand * (f.plus * g0w * adjoint(f.plus));
    const bool ok = hm == dirac_hamiltonian(1) && hp == dirac_hamiltonian(-1);
    out.push_back(make_check("fw.intertwines", "V^-1 (gamma^0 omega) V = gamma^0 (gamma.p + m)",
                             "gamma^0(gamma.(+-k) + m)", ok ? "gamma^0(gamma.(+-k) + m)" : hm.to_string(), ok,
                             "FW transformation", Basis::stated));
  }
  const GeneralSolution fermi = general_solution(Family::fermi);
  for (const auto& b : fermi.branches) {
    const PdSpinor v = to_pd(b);
    const int spin = b.eps2 > 0 ? 0 : 1;
    const Vec4 want = printed_spinor(b.freq, spin);
    out.push_back(make_check("fw.spinor." + b.label, "V^-1 D on " + freq_name(b.freq) + " equals the printed spinor",
                             vec_string(want), vec_string(v.body), v.body == want, "PD spinors", Basis::stated));
    const Point zero{{0.0, 0.0, 0.0}, 1.7, 0.0};
    double dev = 0.0;
    const double n0 = v.n.eval(zero);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::complex<double> e = n0 * v.body[i].eval(zero);
      dev = std::max(dev, std::abs(e - b.ort[i].eval(zero)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.1e", dev);
    out.push_back(make_check("fw.rest." + b.label, "at k = 0 the spinor reduces to (d;0) or (0;d)",
                             "max deviation < 1e-14", buf, dev < 1e-14, "PD spinors at rest", Basis::identity));
  }
  for (Family fam : {Family::fermi, Family::bose_cartesian, Family::bose_cyclic})
    for (const auto& b : general_solution(fam).branches) {
      const bool ok = dirac_check(to_pd(b));
      out.push_back(make_check(std::string("dirac.") + family_name(fam) + "." + b.label,
                               "H(" + std::string(b.freq < 0 ? "k" : "-k") + ") v = " + (b.freq < 0 ? "+" : "-") +
                                   "omega v",
                               "holds", ok ? "holds" : "fails", ok, "Dirac equation in PD form", Basis::derived));
    }
  {
    // Numeric isometry of V^-1 at random momenta.
    std::mt19937 rng(17);
    double worst = 0.0;
    for (Family fam : {Family::fermi, Family::bose_cartesian, Family::bose_cyclic}) {
      const GeneralSolution g = general_solution(fam);
      for (int n = 0; n < 6; ++n) {
        const Point p = random_point(rng);
        const double nv = f.n.eval(p);
        for (const Mat4* m : {&f.minus, &f.plus}) {
          const ops4::Complex4 v = nv * m->eval(p);
          Eigen::Matrix4cd cols;
          for (int a = 0; a < 4; ++a)
            for (int r = 0; r < 4; ++r) cols(r, a) = g.branches[a].ort[r].eval(p);
          const Eigen::Matrix4cd img = v * cols;
          worst = std::max(worst, (img.adjoint() * img - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff());
        }
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.1e", worst);
    out.push_back(make_check("fw.isometry", "images of orthonormal orts are orthonormal at random k",
                             "max deviation < 1e-12", buf, worst < 1e-12, "FW operator", Basis::derived));
  }
  return out;
}

}  // namespace fbd::solutions
