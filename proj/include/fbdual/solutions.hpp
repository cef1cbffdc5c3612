#pragma once

#include <string>
#include <vector>

#include "fbdual/ops4.hpp"
#include "fbdual/report.hpp"

namespace fbd::solutions {

using exactnum::OmegaElem;
using exactnum::Radical;
using ops4::AntiOp;
using ops4::Mat4;
using ops4::Vec4;

enum class Family { fermi, bose_cartesian, bose_cyclic };
const char* family_name(Family f);

/// Plane-wave fundamental solution e^{freq * i(omega t - k.x)} ort, with the
/// (2pi)^{-3/2} normalization kept as metadata.
struct BranchState {
  Family family = Family::fermi;
  std::string label;
  int freq = -1;  // -1: e^{-ikx}, +1: e^{+ikx}
  Vec4 ort;
  int eps1 = 0, eps2 = 0;  // fermionic charge sign and doubled spin projection
  std::string eps;         // bosonic label: "+", "0", "-", "0_"
  std::string normalization = "(2pi)^(-3/2)";
};

/// Labels accepted by fundamental(), in table order.
std::vector<std::string> labels(Family f);
/// Throws UnknownLabel.
BranchState fundamental(Family f, const std::string& label);

struct GeneralSolution {
  Family family;
  std::vector<BranchState> branches;
};
GeneralSolution general_solution(Family f);

/// (d_t + i omega gamma^0) applied to the branch, phase stripped.
Vec4 fw_residual(const BranchState& b);
bool satisfies_fw(const BranchState& b);

/// Hermitian counterpart i*q of a prime operator q together with its
/// eigenvalue on a branch.
struct Observed {
  std::string op;
  OmegaElem value;
};
/// Operators of the family's stationary complete set applied to the branch:
/// momentum (three components), charge sign for fermions, spin projection.
/// Throws NotAnEigenstate.
std::vector<Observed> eigencheck(const BranchState& b);
/// Hermitian helicity i s.k^ at k = (0, 0, k3), k3 > 0.
OmegaElem helicity_on_axis(const BranchState& b);

/// V^-1 = N((omega + m) - gamma.p) with p -> k on the e^{-ikx} branch and
/// p -> -k on the e^{+ikx} branch.
struct FwMap {
  Radical n;         // N = 1/sqrt(2 omega (omega + m))
  Mat4 minus;        // matrix part on the e^{-ikx} branch
  Mat4 plus;         // matrix part on the e^{+ikx} branch
  std::string accepted;
};
/// Sign per branch chosen so that fermionic images match the printed Dirac
/// spinors; throws ConventionMismatch when no choice does.
const FwMap& fw_map();

/// N * body.
struct PdSpinor {
  Radical n;
  Vec4 body;
  int freq = -1;
};
PdSpinor to_pd(const BranchState& b);

/// gamma^0 (gamma.(sign k) + m).
Mat4 dirac_hamiltonian(int sign);
/// H(-freq k) v = -freq omega v.
bool dirac_check(const PdSpinor& v);

Checks verify_fundamentals();
Checks verify_eigen();
Checks verify_fw_map();

}  // namespace fbd::solutions
