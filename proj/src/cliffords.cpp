#include "fbdual/cliffords.hpp"

namespace fbd::cliffords {

using exactnum::OmegaElem;
using exactnum::Scalar;
using ops4::equality_check;

namespace {

const OmegaElem I = OmegaElem::i();

std::array<Mat4, 4> make_pd() {
  std::array<Mat4, 4> g;
  g[0] = Mat4::diag(1, 1, -1, -1);
  // gamma^j = [[0, sigma_j], [-sigma_j, 0]]
  g[1] = {0, 0, 0, 1,  //
          0, 0, 1, 0,  //
          0, -1, 0, 0,  //
          -1, 0, 0, 0};
  g[2] = {0, 0, 0, -I,  //
          0, 0, I, 0,   //
          0, I, 0, 0,   //
          -I, 0, 0, 0};
  g[3] = {0, 0, 1, 0,   //
          0, 0, 0, -1,  //
          -1, 0, 0, 0,  //
          0, 1, 0, 0};
  return g;
}

std::array<AntiOp, 8> make_orts() {
  std::array<AntiOp, 8> g;
  for (int mu = 0; mu < 4; ++mu) g[mu] = AntiOp::linear(gamma_matrix(mu));
  g[4] = g[0] * g[1] * g[2] * g[3];
  g[5] = g[1] * g[3] * AntiOp::conjugation();
  g[6] = AntiOp::scalar(I) * g[1] * g[3] * AntiOp::conjugation();
  g[7] = AntiOp::scalar(I) * g[0];
  return g;
}

ErcdBasis make_bases() {
  ErcdBasis b;
  // Products of distinct gamma^mu in index order, grouped by length.
  for (int len = 0; len <= 4; ++len)
    for (int mask = 0; mask < 16; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != len) continue;
      AntiOp x = AntiOp::identity();
      std::string label;
      for (int mu = 0; mu < 4; ++mu)
        if (mask & (1 << mu)) {
          x = x * gamma(mu);
          label += "g" + std::to_string(mu);
        }
      b.cd16.push_back({label.empty() ? "1" : label, x});
    }
  const std::array<std::pair<const char*, AntiOp>, 4> units{{
      {"", AntiOp::identity()},
      {"i", AntiOp::scalar(I)},
      {"C", AntiOp::conjugation()},
      {"iC", AntiOp::scalar(I) * AntiOp::conjugation()},
  }};
  for (const auto& e : b.cd16)
    for (const auto& [u, op] : units) {
      const std::string sep = (e.label == "1" || *u == '\0') ? "" : "*";
      const std::string label = (e.label == "1" && *u != '\0') ? u : e.label + sep + u;
      b.ercd64.push_back({label, e.op * op});
    }
  for (int a = 1; a <= 8; ++a)
    for (int c = a + 1; c <= 8; ++c) {
      // s^{AB} = (1/2) g^A g^B for distinct A, B <= 7; s^{A8} = (1/2) g^A.
      const AntiOp v = c == 8 ? gamma(a) : gamma(a) * gamma(c);
      b.s[a][c] = AntiOp::scalar(Scalar::rational(1, 2)) * v;
      b.s[c][a] = -b.s[a][c];
      b.so8_pairs.emplace_back(a, c);
    }
  return b;
}

int delta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

const Mat4& gamma_matrix(int mu) {
  static const std::array<Mat4, 4> g = make_pd();
  return g.at(static_cast<std::size_t>(mu));
}

const AntiOp& gamma(int a) {
  static const std::array<AntiOp, 8> g = make_orts();
  return g.at(static_cast<std::size_t>(a));
}

const ErcdBasis& build_bases() {
  static const ErcdBasis b = make_bases();
  return b;
}

int real_rank(const std::vector<AntiOp>& ops) {
  std::vector<std::array<Scalar, 64>> rows;
  rows.reserve(ops.size());
  for (const auto& op : ops) rows.push_back(ops4::realify_exact(op).e);
  int rank = 0;
  for (int col = 0; col < 64 && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    const Scalar inv = p[col].inverse();
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const Scalar f = rows[r][col] * inv;
      for (int c = col; c < 64; ++c)
        if (!p[c].is_zero()) rows[r][c] -= f * p[c];
    }
    ++rank;
  }
  return rank;
}

SpanRank span_rank() {
  const ErcdBasis& b = build_bases();
  std::vector<AntiOp> cd, ercd;
  for (const auto& e : b.cd16) cd.push_back(e.op);
  for (const auto& e : b.ercd64) ercd.push_back(e.op);
  return {real_rank(ercd), real_rank(cd)};
}

Checks verify_bases() {
  Checks out;
  const OmegaElem mi = -I;
  // g0 g1 g2 g3 = -i [[0, I2], [I2, 0]] in the PD representation.
  const AntiOp g4 = AntiOp::linear({0, 0, mi, 0,  //
                                    0, 0, 0, mi,  //
                                    mi, 0, 0, 0,  //
                                    0, mi, 0, 0});
  out.push_back(equality_check("bases.gamma4", "gamma^4 = gamma^0 gamma^1 gamma^2 gamma^3", g4, gamma(4),
                     "definition of gamma^4", Basis::stated));
  out.push_back(equality_check("bases.gamma7", "gamma^7 = i gamma^0", AntiOp::linear(I * gamma_matrix(0)), gamma(7),
                     "definition of gamma^7", Basis::stated));
  out.push_back(equality_check("bases.s18", "s^18 = (1/2) gamma^1", AntiOp::scalar(Scalar::rational(1, 2)) * gamma(1),
                     build_bases().s[1][8], "SO(8) generators", Basis::stated));
  {
    Check c;
    c.id = "bases.parts";
    c.statement = "gamma^5, gamma^6 purely antilinear; gamma^1..4, gamma^7 purely linear";
    c.expected = "true";
    bool ok = gamma(5).is_antilinear() && gamma(6).is_antilinear();
    for (int a : {1, 2, 3, 4, 7}) ok = ok && gamma(a).is_linear();
    c.got = ok ? "true" : "false";
    c.pass = ok;
    c.anchor = "ERCD orts";
    c.basis = Basis::stated;
    out.push_back(std::move(c));
  }
  for (int a : {5, 6}) {
    const AntiOp lhs = gamma(a) * AntiOp::scalar(I);
    const AntiOp rhs = AntiOp::scalar(-I) * gamma(a);
    out.push_back(equality_check("bases.antilinear" + std::to_string(a),
                       "gamma^" + std::to_string(a) + " i = -i gamma^" + std::to_string(a), rhs, lhs,
                       "complex conjugation operator", Basis::derived));
  }
  const ErcdBasis& b = build_bases();
  int agree = 0;
  for (int a = 1; a <= 6; ++a)
    for (int c = a + 1; c <= 6; ++c) {
      const AntiOp quarter = AntiOp::scalar(Scalar::rational(1, 4)) * ops4::commutator(gamma(a), gamma(c));
      agree += quarter == b.s[a][c] ? 1 : 0;
    }
  Check c;
  c.id = "bases.so6_commutators";
  c.statement = "s^AB = (1/4)[gamma^A, gamma^B] for 1 <= A < B <= 6";
  c.expected = "15/15";
  c.got = std::to_string(agree) + "/15";
  c.pass = agree == 15;
  c.anchor = "SO(6) generators";
  c.basis = Basis::derived;
  out.push_back(std::move(c));
  return out;
}

Checks verify_clifford7() {
  Checks out;
  for (int a = 1; a <= 7; ++a)
    for (int c = a; c <= 7; ++c) {
      const AntiOp got = ops4::anticommutator(gamma(a), gamma(c));
      const AntiOp expected = AntiOp::scalar(OmegaElem(-2 * delta(a, c)));
      const std::string pair = std::to_string(a) + std::to_string(c);
      out.push_back(equality_check("clifford.g" + pair,
                         "{gamma^" + std::to_string(a) + ", gamma^" + std::to_string(c) + "} = -2 delta I",
                         expected, got, "ERCD Clifford relations", a == c ? Basis::stated : Basis::derived));
    }
  for (int a = 1; a <= 7; ++a) {
    const AntiOp got = ops4::compose(gamma(a), gamma(a));
    out.push_back(equality_check("clifford.sq" + std::to_string(a), "(gamma^" + std::to_string(a) + ")^2 = -I",
                                 AntiOp::scalar(OmegaElem(-1)), got, "ERCD Clifford relations", Basis::stated));
  }
  return out;
}

Checks verify_span() {
  const SpanRank r = span_rank();
  Checks out;
  auto add = [&](std::string id, std::string stmt, int expected, int got, Basis basis) {
    Check c;
    c.id = std::move(id);
    c.statement = std::move(stmt);
    c.expected = std::to_string(expected);
    c.got = std::to_string(got);
    c.pass = expected == got;
    c.anchor = "dimension of the ERCD algebra";
    c.basis = basis;
    out.push_back(std::move(c));
  };
  add("span.ercd64", "real rank of the 64 ERCD elements", 64, r.ercd, Basis::stated);
  add("span.cd16", "real rank of the 16 CD elements", 16, r.cd, Basis::stated);
  add("span.units", "real rank of {I, iI}", 2, real_rank({AntiOp::identity(), AntiOp::scalar(I)}),
      Basis::identity);
  return out;
}

Checks verify_so8() {
  const ErcdBasis& b = build_bases();
  const auto& s = b.s;
  Checks out;
  int ok = 0, total = 0;
  std::string violations;
  const auto& pairs = b.so8_pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [A, B] = pairs[i];
      const auto [C, D] = pairs[j];
      AntiOp rhs;
      if (delta(A, C)) rhs += s[B][D];
      if (delta(C, B)) rhs += s[D][A];
      if (delta(B, D)) rhs += s[A][C];
      if (delta(D, A)) rhs += s[C][B];
      ++total;
      if (ops4::commutator(s[A][B], s[C][D]) == rhs) {
        ++ok;
      } else if (violations.size() < 200) {
        violations += " [s" + std::to_string(A) + std::to_string(B) + ",s" + std::to_string(C) +
                      std::to_string(D) + "]";
      }
    }
  Check c;
  c.id = "so8.relations";
  c.statement = "[s^AB, s^CD] = d^AC s^BD + d^CB s^DA + d^BD s^AC + d^DA s^CB for all generator pairs";
  c.expected = std::to_string(total) + "/" + std::to_string(total);
  c.got = std::to_string(ok) + "/" + std::to_string(total) + (violations.empty() ? "" : " failing:" + violations);
  c.pass = ok == total && total == 378;
  c.anchor = "SO(8) commutation relations";
  c.basis = Basis::stated;
  out.push_back(std::move(c));
  out.push_back(equality_check("so8.s12_s34", "[s^12, s^34] = 0", AntiOp{}, ops4::commutator(s[1][2], s[3][4]),
                     "SO(8) commutation relations", Basis::stated));
  out.push_back(equality_check("so8.s12_s23", "[s^12, s^23] = s^31", s[3][1], ops4::commutator(s[1][2], s[2][3]),
                     "SO(8) commutation relations", Basis::derived));
  // Independent oracle: (1/4)[g1, g2] equals s^12 and [s^18, s^28].
  const AntiOp quarter = AntiOp::scalar(Scalar::rational(1, 4)) * ops4::commutator(gamma(1), gamma(2));
  out.push_back(equality_check("so8.s18_s28", "[s^18, s^28] = (1/4)[gamma^1, gamma^2] = s^12", quarter,
                     ops4::commutator(s[1][8], s[2][8]), "SO(8) commutation relations", Basis::derived));
  return out;
}

}  // namespace fbd::cliffords
