#include "fbdual/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <fftw3.h>

#include "fbdual/errors.hpp"
#include "fbdual/spinsets.hpp"

namespace fbd::conservation {

using exactnum::Monomial;
using exactnum::OmegaElem;
using exactnum::Point;
using exactnum::Poly;
using exactnum::Var;
using ops4::AntiOp;

namespace {

constexpr double kBoundaryTol = 1e-10;
constexpr double kRoundoffFloor = 1e-12;
constexpr int kMaxPow = 16;

// ---------------------------------------------------------------------------
// Coefficients compiled to double precision, split by powers of t.

struct NumPoly {
  struct Term {
    cplx c;
    std::array<int, 4> e;  // k1, k2, k3, m
  };
  std::vector<Term> terms;

  static NumPoly from(const Poly& p) {
    NumPoly r;
    for (const auto& t : p.terms()) {
      Term x{t.coef.to_complex(), {t.mono.exp(Var::k1), t.mono.exp(Var::k2), t.mono.exp(Var::k3), t.mono.exp(Var::m)}};
      for (int v : x.e)
        if (v >= kMaxPow) throw Error("coefficient degree too high for numeric evaluation");
      r.terms.push_back(x);
    }
    return r;
  }

  cplx eval(const double (*pw)[kMaxPow]) const {
    cplx s = 0.0;
    for (const auto& t : terms) s += t.c * (pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]] * pw[3][t.e[3]]);
    return s;
  }
};

struct NumElem {
  std::vector<std::pair<NumPoly, NumPoly>> parts;  // (p_j, q_j) for t^j
  std::vector<std::pair<NumPoly, int>> den;
  std::vector<OmegaElem> exact;                     // per t power, for removable singularities

  explicit NumElem(const OmegaElem& x) {
    for (const auto& f : x.denominator()) {
      if (f.poly.depends_on(Var::t)) throw Error("time-dependent denominators are not supported in charges");
      den.emplace_back(NumPoly::from(f.poly), f.exp);
    }
    auto pc = x.p().coefficients_in(Var::t);
    auto qc = x.q().coefficients_in(Var::t);
    int deg = 0;
    if (!pc.empty()) deg = std::max(deg, pc.rbegin()->first);
    if (!qc.empty()) deg = std::max(deg, qc.rbegin()->first);
    for (int j = 0; j <= deg; ++j) {
      const Poly p = pc.count(j) ? pc[j] : Poly{};
      const Poly q = qc.count(j) ? qc[j] : Poly{};
      parts.emplace_back(NumPoly::from(p), NumPoly::from(q));
      exact.emplace_back(p, q, x.denominator());
    }
  }

  // Values of the t^j parts at the point.
  void eval(const double (*pw)[kMaxPow], double w, const Point& pt, std::vector<cplx>& out) const {
    out.resize(parts.size());
    cplx d = 1.0;
    for (const auto& [f, e] : den)
      for (int n = 0; n < e; ++n) d *= f.eval(pw);
    if (std::abs(d) < 1e-200) {
      for (std::size_t j = 0; j < parts.size(); ++j) out[j] = exact[j].eval(pt);
      return;
    }
    for (std::size_t j = 0; j < parts.size(); ++j)
      out[j] = (parts[j].first.eval(pw) + parts[j].second.eval(pw) * w) / d;
  }
};

struct Entry {
  int r, c;
  NumElem v;
};

struct CompiledTerm {
  bool kr = false;
  int dvar = -1;  // k-derivative axis or -1
  std::vector<Entry> entries;
};

std::vector<CompiledTerm> compile(const DiffOp& q) {
  std::vector<CompiledTerm> out;
  for (const auto& [key, mat] : q.terms()) {
    CompiledTerm t;
    t.kr = key.kr;
    if (key.alpha[3] != 0) throw Error("time derivatives are not supported in charges");
    const int order = key.alpha[0] + key.alpha[1] + key.alpha[2];
    if (order > 1) throw Error("charges support first-order k-derivatives only");
    for (int l = 0; l < 3; ++l)
      if (key.alpha[l]) t.dvar = l;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (!mat(r, c).is_zero()) t.entries.push_back({r, c, NumElem(mat(r, c))});
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<double>& stencil(int order) {
  static const std::vector<double> s2{-0.5, 0.0, 0.5};
  static const std::vector<double> s4{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  static const std::vector<double> s6{-1.0 / 60, 9.0 / 60, -45.0 / 60, 0.0, 45.0 / 60, -9.0 / 60, 1.0 / 60};
  switch (order) {
    case 2: return s2;
    case 4: return s4;
    case 6: return s6;
  }
  throw ConfigError("finite-difference order must be 2, 4 or 6");
}

struct Index {
  int n;
  std::size_t operator()(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n + j) * n + l;
  }
  std::size_t mirror(std::size_t idx) const { return static_cast<std::size_t>(n) * n * n - 1 - idx; }
};

std::vector<cplx> fd_derivative(const std::vector<cplx>& f, const Grid& g, int axis, int order) {
  const auto& s = stencil(order);
  const int r = static_cast<int>(s.size()) / 2;
  const Index ix{g.n};
  const double h = g.h();
  std::vector<cplx> out(f.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) {
        cplx acc = 0.0;
        for (int o = -r; o <= r; ++o) {
          if (o == 0) continue;
          std::array<int, 3> p{i, j, l};
          p[static_cast<std::size_t>(axis)] += o;
          if (p[static_cast<std::size_t>(axis)] < 0 || p[static_cast<std::size_t>(axis)] >= g.n) continue;
          acc += s[static_cast<std::size_t>(o + r)] * f[ix(p[0], p[1], p[2])];
        }
        out[ix(i, j, l)] = acc / h;
      }
  return out;
}

// d/dk_axis by FFT: multiply by i x in the conjugate variable.
std::vector<std::array<std::vector<cplx>, 3>> spectral_derivatives(const WavePacket& w) {
  const Grid& g = w.grid();
  const int n = g.n;
  const std::size_t N = g.size();
  std::vector<std::array<std::vector<cplx>, 3>> out(4);
  auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * N));
  auto* spec = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * N));
  fftw_plan fwd = fftw_plan_dft_3d(n, n, n, buf, spec, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  const double L = n * g.h();
  auto freq = [&](int m) {
    if (2 * m == n) return 0.0;  // Nyquist mode carries no derivative
    const int s = m < n / 2 + (n % 2) ? m : m - n;
    return 2.0 * std::numbers::pi * s / L;
  };
  const Index ix{n};
  for (int b = 0; b < 4; ++b) {
    const auto& a = w.initial(b);
    for (std::size_t i = 0; i < N; ++i) {
      buf[i][0] = a[i].real();
      buf[i][1] = a[i].imag();
    }
    fftw_execute(fwd);
    for (int axis = 0; axis < 3; ++axis) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            const std::size_t id = ix(i, j, l);
            const double x = freq(axis == 0 ? i : (axis == 1 ? j : l));
            // Grid origin at -kmax: a shift only multiplies by a phase, which
            // commutes with the derivative.
            const cplx v = cplx(spec[id][0], spec[id][1]) * cplx(0.0, x) / static_cast<double>(N);
            buf[id][0] = v.real();
            buf[id][1] = v.imag();
          }
      fftw_execute(bwd);
      auto& d = out[static_cast<std::size_t>(b)][static_cast<std::size_t>(axis)];
      d.resize(N);
      for (std::size_t i = 0; i < N; ++i) d[i] = cplx(buf[i][0], buf[i][1]);
    }
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(buf);
  fftw_free(spec);
  return out;
}

double boundary_layer_max(const WavePacket& w, int width) {
  const Grid& g = w.grid();
  const Index ix{g.n};
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) {
        const int edge = std::min({i, j, l, g.n - 1 - i, g.n - 1 - j, g.n - 1 - l});
        if (edge >= width) continue;
        for (int b = 0; b < 4; ++b) worst = std::max(worst, std::abs(w.initial(b)[ix(i, j, l)]));
      }
  return worst;
}

struct Prepared {
  // da[b][axis]: envelope derivative of the t = 0 amplitude.
  std::vector<std::array<std::vector<cplx>, 3>> da;
};

Prepared prepare(const WavePacket& w, const ChargeOptions& opt) {
  Prepared p;
  if (opt.derivative == Derivative::spectral) {
    p.da = spectral_derivatives(w);
  } else if (opt.derivative == Derivative::envelope_fd) {
    p.da.resize(4);
    for (int b = 0; b < 4; ++b)
      for (int axis = 0; axis < 3; ++axis)
        p.da[static_cast<std::size_t>(b)][static_cast<std::size_t>(axis)] =
            fd_derivative(w.initial(b), w.grid(), axis, opt.fd_order);
  }
  return p;
}

using Vec4c = std::array<cplx, 4>;

std::array<Vec4c, 4> numeric_orts(const WavePacket& w, bool conjugate) {
  std::array<Vec4c, 4> o;
  for (std::size_t b = 0; b < 4; ++b)
    for (std::size_t r = 0; r < 4; ++r) {
      const cplx v = w.branches()[b].ort[r].eval(Point{});
      o[b][r] = conjugate ? std::conj(v) : v;
    }
  return o;
}

std::vector<cplx> charges(const WavePacket& w, const std::vector<CompiledTerm>& terms, const Prepared& prep,
                          const std::vector<double>& times, const ChargeOptions& opt) {
  const Grid& g = w.grid();
  const int n = g.n;
  const Index ix{n};
  const double h = g.h();
  const std::size_t nt = times.size();
  const auto orts = numeric_orts(w, false);
  const auto corts = numeric_orts(w, true);
  std::array<int, 4> freq{};
  for (std::size_t b = 0; b < 4; ++b) freq[b] = w.branches()[b].freq;

  bool any_deriv = false;
  for (const auto& t : terms) any_deriv = any_deriv || t.dvar >= 0;
  const int r = static_cast<int>(stencil(opt.fd_order).size()) / 2;
  if (any_deriv && opt.derivative != Derivative::spectral && boundary_layer_max(w, r) > kBoundaryTol)
    throw DerivativeBoundary("difference stencil leaves the grid where amplitudes exceed 1e-10");

  // Raw differences need the evolved field at neighbours: e^{i omega T} per
  // time on the whole grid.
  std::vector<std::vector<cplx>> phase_plus;
  if (opt.derivative == Derivative::raw_fd && any_deriv) {
    phase_plus.resize(nt);
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const double T = w.time() + times[ti];
      phase_plus[ti].resize(g.size());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            const double om = std::sqrt(g.k(i) * g.k(i) + g.k(j) * g.k(j) + g.k(l) * g.k(l) + w.mass() * w.mass());
            phase_plus[ti][ix(i, j, l)] = std::polar(1.0, om * T);
          }
    }
  }
  const auto& st = stencil(opt.fd_order);

  std::vector<cplx> acc(nt, 0.0);
  double pw[4][kMaxPow];
  std::vector<std::vector<std::vector<cplx>>> vals(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) vals[t].resize(terms[t].entries.size());
  std::vector<cplx> tpow;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const std::size_t id = ix(i, j, l);
        const std::size_t mid = ix.mirror(id);
        const std::array<double, 3> k{g.k(i), g.k(j), g.k(l)};
        const double m = w.mass();
        const double om = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m);
        const Point pt{k, m, 0.0};
        for (int v = 0; v < 4; ++v) {
          const double x = v < 3 ? k[static_cast<std::size_t>(v)] : m;
          pw[v][0] = 1.0;
          for (int e = 1; e < kMaxPow; ++e) pw[v][e] = pw[v][e - 1] * x;
        }
        for (std::size_t t = 0; t < terms.size(); ++t)
          for (std::size_t e = 0; e < terms[t].entries.size(); ++e) terms[t].entries[e].v.eval(pw, om, pt, vals[t][e]);

        for (std::size_t ti = 0; ti < nt; ++ti) {
          const double T = w.time() + times[ti];
          const cplx ep = std::polar(1.0, om * T);  // e^{+i omega T}
          auto phase = [&](int f) { return f > 0 ? ep : std::conj(ep); };
          Vec4c phi{};
          for (std::size_t b = 0; b < 4; ++b) {
            const cplx s = w.initial(static_cast<int>(b))[id] * phase(freq[b]);
            for (std::size_t c = 0; c < 4; ++c) phi[c] += s * orts[b][c];
          }
          cplx total = 0.0;
          for (std::size_t t = 0; t < terms.size(); ++t) {
            const CompiledTerm& term = terms[t];
            Vec4c psi{};
            for (std::size_t b = 0; b < 4; ++b) {
              const auto& a = w.initial(static_cast<int>(b));
              const int f = term.kr ? -freq[b] : freq[b];
              const cplx A = term.kr ? std::conj(a[mid]) : a[id];
              cplx s;
              if (term.dvar < 0) {
                s = A * phase(f);
              } else if (opt.derivative != Derivative::raw_fd) {
                const auto& da = prep.da[b][static_cast<std::size_t>(term.dvar)];
                const cplx dA = term.kr ? -std::conj(da[mid]) : da[id];
                s = (dA + cplx(0.0, f * T * k[static_cast<std::size_t>(term.dvar)] / om) * A) * phase(f);
              } else {
                s = 0.0;
                const int rr = static_cast<int>(st.size()) / 2;
                for (int o = -rr; o <= rr; ++o) {
                  if (o == 0) continue;
                  std::array<int, 3> p{i, j, l};
                  p[static_cast<std::size_t>(term.dvar)] += o;
                  if (p[static_cast<std::size_t>(term.dvar)] < 0 || p[static_cast<std::size_t>(term.dvar)] >= n)
                    continue;
                  const std::size_t nid = ix(p[0], p[1], p[2]);
                  const cplx An = term.kr ? std::conj(a[ix.mirror(nid)]) : a[nid];
                  const cplx pp = phase_plus[ti][nid];
                  s += st[static_cast<std::size_t>(o + rr)] * An * (f > 0 ? pp : std::conj(pp));
                }
                s /= h;
              }
              const auto& v = term.kr ? corts[b] : orts[b];
              for (std::size_t c = 0; c < 4; ++c) psi[c] += s * v[c];
            }
            tpow.assign(1, 1.0);
            for (std::size_t e = 0; e < term.entries.size(); ++e) {
              const auto& parts = vals[t][e];
              cplx val = 0.0, tp = 1.0;
              for (const auto& pj : parts) {
                val += tp * pj;
                tp *= T;
              }
              total += std::conj(phi[static_cast<std::size_t>(term.entries[e].r)]) * val *
                       psi[static_cast<std::size_t>(term.entries[e].c)];
            }
          }
          acc[ti] += total;
        }
      }
  const double vol = h * h * h;
  for (auto& a : acc) a *= cplx(0.0, vol);  // Hermitian counterpart i * Q
  return acc;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Family family_for(symdiff::Rep rep, const symdiff::Conventions& conv) {
  if (rep == symdiff::Rep::fermi) return Family::fermi;
  return conv.bose_basis == symdiff::BoseBasis::cartesian ? Family::bose_cartesian : Family::bose_cyclic;
}

}  // namespace

// ---------------------------------------------------------------------------
// WavePacket

cplx WavePacket::amplitude(int b, std::size_t i) const {
  const int f = branches_[static_cast<std::size_t>(b)].freq;
  return amp_[static_cast<std::size_t>(b)][i] * std::polar(1.0, f * omega_[i] * t_);
}

double WavePacket::norm() const {
  double s = 0.0;
  for (int b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < grid_.size(); ++i) s += std::norm(amplitude(b, i));
  const double h = grid_.h();
  return s * h * h * h;
}

double WavePacket::branch_probability(int b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) s += std::norm(amplitude(b, i));
  const double h = grid_.h();
  return s * h * h * h;
}

double WavePacket::boundary_amplitude() const { return boundary_layer_max(*this, 1); }

WavePacket gaussian_packet(const PacketSpec& spec) {
  const Grid& g = spec.grid;
  if (g.n < 8) throw GridTooSmall("grid needs at least 8 points per axis");
  if (!(spec.sigma > 0.0)) throw ConfigError("packet width must be positive");
  if (!(spec.mass > 0.0)) throw ConfigError("mass must be positive");
  const double fwhm = 2.0 * std::sqrt(2.0 * std::log(2.0)) * spec.sigma;
  if (fwhm < 6.0 * g.h())
    throw GridTooCoarse("packet FWHM " + fixed(fwhm) + " spans fewer than 6 grid steps of " + fixed(g.h()));
  for (double c : spec.k0)
    if (std::abs(c) + 5.0 * spec.sigma > g.kmax)
      throw GridTooSmall("k0 +- 5 sigma leaves the grid [-" + fixed(g.kmax) + ", " + fixed(g.kmax) + "]");
  double wsum = 0.0;
  for (double x : spec.weights) {
    if (x < 0.0) throw ConfigError("branch weights must be non-negative");
    wsum += x;
  }
  if (!(wsum > 0.0)) throw ConfigError("at least one branch weight must be positive");

  WavePacket w;
  w.grid_ = g;
  w.mass_ = spec.mass;
  w.family_ = spec.family;
  w.branches_ = solutions::general_solution(spec.family).branches;
  const Index ix{g.n};
  std::vector<double> gauss(g.size());
  w.omega_.resize(g.size());
  double gnorm = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) {
        const double d0 = g.k(i) - spec.k0[0], d1 = g.k(j) - spec.k0[1], d2 = g.k(l) - spec.k0[2];
        const double v = std::exp(-(d0 * d0 + d1 * d1 + d2 * d2) / (2.0 * spec.sigma * spec.sigma));
        gauss[ix(i, j, l)] = v;
        gnorm += v * v;
        w.omega_[ix(i, j, l)] = std::sqrt(g.k(i) * g.k(i) + g.k(j) * g.k(j) + g.k(l) * g.k(l) + spec.mass * spec.mass);
      }
  const double h = g.h();
  gnorm = std::sqrt(gnorm * h * h * h);
  for (std::size_t b = 0; b < 4; ++b) {
    const double s = std::sqrt(spec.weights[b] / wsum) / gnorm;
    w.amp_[b].resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) w.amp_[b][i] = s * gauss[i];
  }
  return w;
}

WavePacket evolve(const WavePacket& w, double t) {
  WavePacket r = w;
  r.t_ += t;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<cplx> noether_charges(const WavePacket& w, const DiffOp& q, const std::vector<double>& times,
                                  const ChargeOptions& opt) {
  const auto terms = compile(q);
  const bool deriv = std::any_of(terms.begin(), terms.end(), [](const CompiledTerm& t) { return t.dvar >= 0; });
  return charges(w, terms, deriv ? prepare(w, opt) : Prepared{}, times, opt);
}

cplx noether_charge(const WavePacket& w, const DiffOp& q, const ChargeOptions& opt) {
  return noether_charges(w, q, {0.0}, opt).front();
}

const char* kind_name(ChargeKind k) {
  switch (k) {
    case ChargeKind::matrix: return "matrix";
    case ChargeKind::derivative: return "derivative";
    case ChargeKind::antilinear: return "antilinear";
  }
  return "?";
}

ChargeKind classify(const DiffOp& q) {
  if (q.has_kr()) return ChargeKind::antilinear;
  return q.has_derivatives() ? ChargeKind::derivative : ChargeKind::matrix;
}

std::vector<ChargeReport> drift_report(const WavePacket& w, const std::vector<symdiff::Generators::Named>& gens,
                                       const std::vector<double>& times, const Tolerances& tol,
                                       const ChargeOptions& opt) {
  if (times.empty()) throw ConfigError("time list is empty");
  Prepared prep;
  bool prepared = false;
  const double norm = w.norm();
  std::vector<ChargeReport> out;
  for (const auto& g : gens) {
    const auto terms = compile(*g.op);
    const bool deriv = g.op->has_derivatives();
    if (deriv && !prepared) {
      prep = prepare(w, opt);
      prepared = true;
    }
    const auto q = charges(w, terms, prep, times, opt);
    ChargeReport r;
    r.name = g.name;
    r.kind = classify(*g.op);
    const double scale = std::max(std::abs(q.front()), norm);
    for (std::size_t i = 0; i < times.size(); ++i) {
      r.values.emplace_back(times[i], q[i]);
      r.max_drift = std::max(r.max_drift, std::abs(q[i] - q.front()) / scale);
      r.imag_residual = std::max(r.imag_residual, std::abs(q[i].imag()) / norm);
    }
    r.tolerance = deriv ? tol.derivative : tol.matrix;
    const double imag_tol = deriv ? tol.imag_derivative : tol.imag_matrix;
    r.pass = r.max_drift <= r.tolerance && (r.kind == ChargeKind::antilinear || r.imag_residual <= imag_tol);
    out.push_back(std::move(r));
  }
  return out;
}

Checks rotation_signature(double tol) {
  Checks out;
  const double two_pi = 2.0 * std::numbers::pi;
  auto dev = [](const ops4::Real8& a, const ops4::Real8& b) { return (a - b).cwiseAbs().maxCoeff(); };
  const AntiOp sf = spinsets::build_spin(spinsets::SpinSet::fermi).s[2];
  const AntiOp sb = spinsets::build_spin(spinsets::SpinSet::cyclic_boson).s[2];
  const ops4::Real8 id = ops4::Real8::Identity();
  {
    const double d = dev(ops4::expm(sf, two_pi), -id);
    out.push_back(make_check("rotation.fermi.2pi", "exp(2 pi s^3) = -I for the fermionic set", "deviation < " + sci(tol),
                             sci(d), d < tol, "spin 1/2 rotation signature", Basis::derived));
  }
  {
    const double d = dev(ops4::expm(sb, two_pi), id);
    out.push_back(make_check("rotation.bose.2pi", "exp(2 pi s_^3) = I for the cyclic bosonic set",
                             "deviation < " + sci(tol), sci(d), d < tol, "spin 1 rotation signature", Basis::derived));
  }
  {
    const double d = dev(ops4::expm(sf, 0.0), id);
    out.push_back(make_check("rotation.zero", "exp(0 s) = I", "deviation < " + sci(tol), sci(d), d < tol,
                             "one-parameter group", Basis::identity));
  }
  {
    // Quarter turn: d_1 -> e^{-i pi/4} d_1 (fermi); d_1 -> d_2 and C_1 -> e^{-i pi/2} C_1 (cyclic boson).
    const double q = std::numbers::pi / 2.0;
    auto act = [](const ops4::Real8& r, const ops4::Vec4& v) {
      Eigen::Matrix<double, 8, 1> x;
      for (int i = 0; i < 4; ++i) {
        const cplx c = v[static_cast<std::size_t>(i)].eval(Point{});
        x(i) = c.real();
        x(i + 4) = c.imag();
      }
      return Eigen::Matrix<double, 8, 1>(r * x);
    };
    auto target = [](const std::array<cplx, 4>& v) {
      Eigen::Matrix<double, 8, 1> x;
      for (int i = 0; i < 4; ++i) {
        x(i) = v[static_cast<std::size_t>(i)].real();
        x(i + 4) = v[static_cast<std::size_t>(i)].imag();
      }
      return x;
    };
    const cplx e = std::polar(1.0, -std::numbers::pi / 4.0);
    double d = (act(ops4::expm(sf, q), spinsets::unit(1)) - target({e, 0.0, 0.0, 0.0})).cwiseAbs().maxCoeff();
    d = std::max(d, (act(ops4::expm(sb, q), spinsets::unit(1)) - target({0.0, 1.0, 0.0, 0.0})).cwiseAbs().maxCoeff());
    const double r = 1.0 / std::sqrt(2.0);
    const cplx mi(0.0, -1.0);
    d = std::max(d, (act(ops4::expm(sb, q), spinsets::cyclic_orts()[0]) -
                     target({mi * r, mi * cplx(0.0, r), 0.0, 0.0}))
                        .cwiseAbs()
                        .maxCoeff());
    out.push_back(make_check("rotation.quarter", "exp(pi/2 s^3) maps orts per the rotation matrices",
                             "deviation < " + sci(tol), sci(d), d < tol, "finite rotations", Basis::derived));
  }
  return out;
}

Checks verify_conservation(symdiff::Rep rep, const ConserveConfig& cfg) {
  Checks out;
  PacketSpec spec = cfg.packet;
  spec.family = family_for(rep, cfg.conv);
  const std::string fam = solutions::family_name(spec.family);
  const WavePacket w = gaussian_packet(spec);
  {
    const double b = w.boundary_amplitude();
    out.push_back(make_check("conserve." + fam + ".boundary", "packet amplitude on the grid boundary", "< 1e-10",
                             sci(b), b < kBoundaryTol, "Schwartz-class amplitudes", Basis::derived));
  }
  {
    const double n0 = w.norm();
    double worst = 0.0;
    for (double t : cfg.times) worst = std::max(worst, std::abs(evolve(w, t).norm() - n0));
    out.push_back(make_check("conserve." + fam + ".norm", "norm drift under exact phase evolution",
                             "<= " + sci(cfg.tol.norm), sci(worst), worst <= cfg.tol.norm, "FW evolution",
                             Basis::derived));
  }
  const symdiff::Generators g = symdiff::build_poincare(rep, cfg.conv);
  std::vector<symdiff::Generators::Named> sel = g.list();
  for (const auto& o : g.orbital_list())
    if (o.name[0] != 'p') sel.push_back(o);
  for (const auto& s : g.spin_list()) sel.push_back(s);
  const auto reports = drift_report(w, sel, cfg.times, cfg.tol, cfg.charge);
  for (const auto& r : reports) {
    std::string got = "drift " + sci(r.max_drift) + ", Q(0) = " + fixed(r.values.front().second.real());
    if (r.kind != ChargeKind::antilinear) got += ", |Im Q|/norm " + sci(r.imag_residual);
    else got += " + " + fixed(r.values.front().second.imag()) + "i";
    out.push_back(make_check("conserve." + fam + "." + r.name,
                             "Noether charge of " + r.name + " (" + kind_name(r.kind) + ") is time independent",
                             "drift <= " + sci(r.tolerance), got, r.pass, "Noether charges", Basis::derived));
  }
  return out;
}

Checks verify_charge_examples(const ConserveConfig& cfg) {
  Checks out;
  const symdiff::Generators g = symdiff::build_poincare(symdiff::Rep::fermi, cfg.conv);
  PacketSpec spec = cfg.packet;
  spec.family = Family::fermi;
  spec.weights = {1.0, 0.0, 0.0, 0.0};
  const WavePacket w = gaussian_packet(spec);
  {
    // p_1 = -p^1 with lower index: the Hermitian charge is -k0_1.
    const cplx q = noether_charge(w, g.p[1]);
    const double want = -spec.k0[0];
    out.push_back(make_check("charge.p1", "i p_1 on a packet centred at k0", fixed(want), fixed(q.real()),
                             std::abs(q - want) < 1e-9, "momentum charge", Basis::derived));
  }
  {
    const cplx q = noether_charge(w, g.spin[1][2]);
    out.push_back(make_check("charge.s3", "i s^3 on a pure d_1 packet", "0.5", fixed(q.real()),
                             std::abs(q - 0.5) < 1e-10, "spin projection eigenvalues", Basis::derived));
  }
  {
    const cplx q = noether_charge(w, g.p[0]);
    const bool ok = q.real() > spec.mass * w.norm() && std::abs(q.imag()) < 1e-10;
    out.push_back(make_check("charge.p0", "i p_0 = integral omega |a|^2 exceeds m * norm",
                             "> " + fixed(spec.mass * w.norm()), fixed(q.real()), ok, "energy charge",
                             Basis::derived));
  }
  {
    PacketSpec two = cfg.packet;
    two.family = Family::fermi;
    two.weights = {1.0, 0.0, 1.0, 0.0};
    const WavePacket t = gaussian_packet(two);
    const double p0 = t.branch_probability(0), p2 = t.branch_probability(2);
    const bool ok = std::abs(p0 - 0.5) < 1e-12 && std::abs(p2 - 0.5) < 1e-12 && std::abs(t.norm() - 1.0) < 1e-12;
    out.push_back(make_check("packet.split", "two equal-weight branches carry 0.5 each", "0.5, 0.5",
                             fixed(p0) + ", " + fixed(p2), ok, "packet construction", Basis::identity));
  }
  {
    // Peak phase advances by -omega(k0) t on an e^{-ikx} branch.
    const Grid& gr = w.grid();
    const Index ix{gr.n};
    std::size_t peak = 0;
    for (std::size_t i = 0; i < gr.size(); ++i)
      if (std::abs(w.initial(0)[i]) > std::abs(w.initial(0)[peak])) peak = i;
    const int i0 = static_cast<int>(peak / (static_cast<std::size_t>(gr.n) * gr.n));
    const int j0 = static_cast<int>((peak / gr.n) % gr.n);
    const int l0 = static_cast<int>(peak % gr.n);
    const double om = std::sqrt(gr.k(i0) * gr.k(i0) + gr.k(j0) * gr.k(j0) + gr.k(l0) * gr.k(l0) + spec.mass * spec.mass);
    const double t = 0.7;
    const cplx ratio = evolve(w, t).amplitude(0, ix(i0, j0, l0)) / w.amplitude(0, peak);
    const double d = std::abs(ratio - std::polar(1.0, -om * t));
    out.push_back(make_check("packet.phase", "peak phase advances by -omega t", "deviation < 1e-12", sci(d),
                             d < 1e-12, "FW evolution", Basis::derived));
  }
  return out;
}

Checks verify_halving(const ConserveConfig& cfg) {
  Checks out;
  const symdiff::Generators g = symdiff::build_poincare(symdiff::Rep::fermi, cfg.conv);
  PacketSpec coarse = cfg.packet;
  coarse.family = Family::fermi;
  PacketSpec fine = coarse;
  fine.grid.n = 2 * coarse.grid.n;
  // Same extent to within one step, spacing halved.
  fine.grid.kmax = coarse.grid.kmax * (2.0 * coarse.grid.n - 1.0) / (2.0 * (coarse.grid.n - 1.0));
  ChargeOptions raw;
  raw.derivative = Derivative::raw_fd;
  raw.fd_order = cfg.charge.fd_order;
  const std::vector<double> times{cfg.times.front(), cfg.times.back()};
  const std::vector<symdiff::Generators::Named> gens{{"j01", &g.j[0][1]}, {"j12", &g.j[1][2]}};
  const auto a = drift_report(gaussian_packet(coarse), gens, times, cfg.tol, raw);
  const auto b = drift_report(gaussian_packet(fine), gens, times, cfg.tol, raw);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double ratio = a[i].max_drift / std::max(b[i].max_drift, 1e-300);
    // A drift already at roundoff has nothing left to converge.
    const bool floor = a[i].max_drift < kRoundoffFloor && b[i].max_drift < kRoundoffFloor;
    std::string got = sci(a[i].max_drift) + " / " + sci(b[i].max_drift);
    got += floor ? " (both at roundoff)" : " = " + fixed(ratio);
    out.push_back(make_check("halving." + gens[i].name,
                             "raw differences: drift at spacing h over drift at h/2 for " + gens[i].name,
                             ">= 2, or both drifts < 1e-12", got, floor || ratio >= 2.0, "grid refinement",
                             Basis::derived));
  }
  return out;
}

}  // namespace fbd::conservation
