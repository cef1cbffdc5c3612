#include <cmath>

#include "doctest.h"
#include "fbdual/conservation.hpp"
#include "fbdual/errors.hpp"

using namespace fbd::conservation;
using fbd::symdiff::Generators;
using fbd::symdiff::Rep;

namespace {

// Coarse but valid: FWHM of 2.35 over h = 0.387.
PacketSpec small_spec() {
  PacketSpec s;
  s.grid.n = 32;
  s.grid.kmax = 6.0;
  s.sigma = 1.0;
  s.k0 = {0.6, -0.4, 0.3};
  s.weights = {0.4, 0.1, 0.3, 0.2};
  return s;
}

PacketSpec narrow_spec() {
  PacketSpec s;
  s.grid.n = 52;
  s.grid.kmax = 5.0;
  s.sigma = 0.6;
  s.k0 = {0.5, 0.2, -0.3};
  s.weights = {0.4, 0.1, 0.3, 0.2};
  return s;
}

void all_pass(const fbd::Checks& cs) {
  for (const auto& c : cs) {
    INFO(c.id << ": expected " << c.expected << ", got " << c.got);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("packet validation") {
  PacketSpec s = small_spec();
  s.grid.n = 24;
  CHECK_THROWS_AS(gaussian_packet(s), fbd::GridTooCoarse);
  s = small_spec();
  s.k0 = {2.0, 0.0, 0.0};
  CHECK_THROWS_AS(gaussian_packet(s), fbd::GridTooSmall);
  s = small_spec();
  s.weights = {0, 0, 0, 0};
  CHECK_THROWS_AS(gaussian_packet(s), fbd::ConfigError);
  s = small_spec();
  s.sigma = -1.0;
  CHECK_THROWS_AS(gaussian_packet(s), fbd::ConfigError);
}

TEST_CASE("packet norm and evolution") {
  const WavePacket w = gaussian_packet(small_spec());
  CHECK(std::abs(w.norm() - 1.0) < 1e-12);
  CHECK(std::abs(w.branch_probability(0) - 0.4) < 1e-12);
  CHECK(std::abs(w.branch_probability(3) - 0.2) < 1e-12);
  const WavePacket later = evolve(w, 3.5);
  CHECK(later.time() == 3.5);
  CHECK(std::abs(later.norm() - 1.0) < 1e-12);
  // Branch phases run opposite ways.
  const std::size_t i = w.grid().size() / 2;
  const cplx r0 = later.amplitude(0, i) / w.amplitude(0, i);
  const cplx r2 = later.amplitude(2, i) / w.amplitude(2, i);
  CHECK(std::abs(r0 * r2 - 1.0) < 1e-12);
}

TEST_CASE("charges against direct sums") {
  const PacketSpec s = small_spec();
  const WavePacket w = gaussian_packet(s);
  const Generators g = build_poincare(Rep::fermi, {});
  const Grid& gr = w.grid();
  double energy = 0.0, mom1 = 0.0;
  std::size_t id = 0;
  for (int i = 0; i < gr.n; ++i)
    for (int j = 0; j < gr.n; ++j)
      for (int l = 0; l < gr.n; ++l, ++id) {
        const double om = std::sqrt(gr.k(i) * gr.k(i) + gr.k(j) * gr.k(j) + gr.k(l) * gr.k(l) + 1.0);
        for (int b = 0; b < 4; ++b) {
          const double p = std::norm(w.initial(b)[id]);
          // i p_0 = omega gamma^0 flips sign on the e^{+ikx} branches; i p_1 = -k1 does not.
          const int f = w.branches()[static_cast<std::size_t>(b)].freq;
          energy += -f * om * p;
          mom1 += -gr.k(i) * p;
        }
      }
  const double vol = std::pow(gr.h(), 3);
  const cplx e = noether_charge(w, g.p[0]);
  CHECK(std::abs(e - energy * vol) < 1e-12);
  const cplx p1 = noether_charge(w, g.p[1]);
  CHECK(std::abs(p1 - mom1 * vol) < 1e-12);
}

TEST_CASE("spectral and difference derivatives agree") {
  const WavePacket w = gaussian_packet(narrow_spec());
  const Generators g = build_poincare(Rep::fermi, {});
  const std::vector<double> times{0.0, 2.0};
  const auto sp = noether_charges(w, g.j[0][1], times);
  ChargeOptions fd;
  fd.derivative = Derivative::envelope_fd;
  fd.fd_order = 6;
  const auto f6 = noether_charges(w, g.j[0][1], times, fd);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(sp[i] - f6[i]) < 1e-4);
  fd.fd_order = 3;
  CHECK_THROWS_AS(noether_charges(w, g.j[0][1], times, fd), fbd::ConfigError);
}

TEST_CASE("stencils that leave the support throw") {
  PacketSpec s = small_spec();
  s.k0 = {1.0, 0.0, 0.0};
  const WavePacket w = gaussian_packet(s);
  CHECK(w.boundary_amplitude() > 1e-10);
  const Generators g = build_poincare(Rep::fermi, {});
  ChargeOptions fd;
  fd.derivative = Derivative::envelope_fd;
  CHECK_THROWS_AS(noether_charge(w, g.j[0][1], fd), fbd::DerivativeBoundary);
  // Matrix-type charges need no stencil.
  CHECK_NOTHROW(noether_charge(w, g.spin[1][2], fd));
}

TEST_CASE("classification") {
  const Generators f = build_poincare(Rep::fermi, {});
  CHECK(classify(f.p[0]) == ChargeKind::matrix);
  CHECK(classify(f.spin[1][2]) == ChargeKind::matrix);
  CHECK(classify(f.j[0][3]) == ChargeKind::derivative);
  const Generators b = build_poincare(Rep::bose, {});
  bool any = false;
  for (const auto& q : b.spin_list()) any = any || classify(*q.op) == ChargeKind::antilinear;
  CHECK(any);
}

TEST_CASE("drift on an asymmetric packet") {
  const std::vector<double> times{0, 2.5, 5, 7.5, 10};
  for (Rep rep : {Rep::fermi, Rep::bose}) {
    PacketSpec spec = narrow_spec();
    spec.family = rep == Rep::fermi ? Family::fermi : Family::bose_cartesian;
    const WavePacket w = gaussian_packet(spec);
    const Generators g = build_poincare(rep, {});
    std::vector<Generators::Named> sel = g.list();
    for (const auto& s : g.spin_list()) sel.push_back(s);
    for (const auto& r : drift_report(w, sel, times)) {
      INFO(fbd::symdiff::rep_name(rep) << " " << r.name << " drift " << r.max_drift << " imag " << r.imag_residual);
      CHECK(r.pass);
      CHECK(r.values.size() == times.size());
    }
  }
}

TEST_CASE("raw differences drift beyond tolerance") {
  const WavePacket w = gaussian_packet(narrow_spec());
  const Generators g = build_poincare(Rep::fermi, {});
  ChargeOptions raw;
  raw.derivative = Derivative::raw_fd;
  const std::vector<Generators::Named> sel{{"j01", &g.j[0][1]}};
  const auto r = drift_report(w, sel, {0.0, 10.0}, {}, raw);
  CHECK(r[0].max_drift > 1e-6);
  CHECK(!r[0].pass);
}

TEST_CASE("rotation signature") { all_pass(rotation_signature()); }

TEST_CASE("charge examples on the default grid") {
  ConserveConfig cfg;
  all_pass(verify_charge_examples(cfg));
}
