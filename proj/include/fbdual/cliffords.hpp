#pragma once

#include <array>
#include <string>
#include <vector>

#include "fbdual/ops4.hpp"
#include "fbdual/report.hpp"

namespace fbd::cliffords {

using ops4::AntiOp;
using ops4::Mat4;

/// Pauli-Dirac gammas gamma^0..gamma^3 as plain matrices.
const Mat4& gamma_matrix(int mu);

/// The orts gamma^0..gamma^7: gamma^4 = g0 g1 g2 g3, gamma^5 = g1 g3 C,
/// gamma^6 = i g1 g3 C, gamma^7 = i g0.
const AntiOp& gamma(int a);

struct Element {
  std::string label;
  AntiOp op;
};

struct ErcdBasis {
  std::vector<Element> cd16;
  std::vector<Element> ercd64;
  /// s[a][b] for a, b in 1..8; s[a][a] = 0, s[b][a] = -s[a][b].
  std::array<std::array<AntiOp, 9>, 9> s;
  /// The 28 generators with a < b, in lexicographic order.
  std::vector<std::pair<int, int>> so8_pairs;
};

/// Built once; later calls return the same instance.
const ErcdBasis& build_bases();

/// Real-linear rank of the realified operators, computed exactly.
int real_rank(const std::vector<AntiOp>& ops);

struct SpanRank {
  int ercd = 0;
  int cd = 0;
};
SpanRank span_rank();

Checks verify_bases();
Checks verify_clifford7();
Checks verify_span();
Checks verify_so8();

}  // namespace fbd::cliffords
