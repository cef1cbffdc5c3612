#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "fbdual/report.hpp"
#include "fbdual/solutions.hpp"
#include "fbdual/symdiff.hpp"

namespace fbd::conservation {

using cplx = std::complex<double>;
using solutions::Family;
using symdiff::DiffOp;

/// Symmetric uniform grid k_j = -kmax + j h, h = 2 kmax / (n - 1), per axis.
struct Grid {
  int n = 64;
  double kmax = 6.0;
  double h() const { return 2.0 * kmax / (n - 1); }
  double k(int j) const { return -kmax + j * h(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
};

struct PacketSpec {
  Family family = Family::fermi;
  std::array<double, 3> k0{1.0, 0.0, 0.0};
  double sigma = 0.5;  // amplitude ~ exp(-|k - k0|^2 / (2 sigma^2))
  /// Relative probabilities of the four branches in table order.
  std::array<double, 4> weights{1.0, 1.0, 1.0, 1.0};
  double mass = 1.0;
  Grid grid;
};

/// How k-derivatives in a generator reach the field. `spectral` and
/// `envelope_fd` differentiate the t = 0 envelope (FFT or central differences)
/// and the phase e^{freq i omega t} exactly; `raw_fd` applies central
/// differences to the evolved field.
enum class Derivative { spectral, envelope_fd, raw_fd };

/// Branch amplitudes on the grid. Amplitudes are stored at t = 0; the time
/// only enters through the exact phases e^{freq i omega t}.
class WavePacket {
 public:
  const Grid& grid() const { return grid_; }
  double mass() const { return mass_; }
  double time() const { return t_; }
  Family family() const { return family_; }
  const std::vector<solutions::BranchState>& branches() const { return branches_; }
  /// Amplitude of branch b at grid index i, at the packet time.
  cplx amplitude(int b, std::size_t i) const;
  const std::vector<cplx>& initial(int b) const { return amp_[static_cast<std::size_t>(b)]; }
  /// Quadrature of sum |amplitude|^2 at the packet time.
  double norm() const;
  double branch_probability(int b) const;
  /// Largest amplitude on the outer grid layer.
  double boundary_amplitude() const;

  friend WavePacket gaussian_packet(const PacketSpec& spec);
  friend WavePacket evolve(const WavePacket& w, double t);

 private:
  Grid grid_;
  double mass_ = 1.0;
  double t_ = 0.0;
  Family family_ = Family::fermi;
  std::vector<solutions::BranchState> branches_;
  std::array<std::vector<cplx>, 4> amp_;
  std::vector<double> omega_;
};

/// Normalized packet; throws GridTooCoarse when the amplitude full width at
/// half maximum spans fewer than 6 grid steps, GridTooSmall when k0 +- 5 sigma
/// leaves the grid.
WavePacket gaussian_packet(const PacketSpec& spec);
/// Advances the packet time by t.
WavePacket evolve(const WavePacket& w, double t);

struct ChargeOptions {
  Derivative derivative = Derivative::spectral;
  int fd_order = 4;  // 2, 4 or 6
};

/// Hermitian Noether charge i * integral phi^+ (q phi) d^3k at each time
/// offset from the packet time. Throws DerivativeBoundary when a stencil
/// would need amplitudes above 1e-10 outside the grid.
std::vector<cplx> noether_charges(const WavePacket& w, const DiffOp& q, const std::vector<double>& times,
                                  const ChargeOptions& opt = {});
cplx noether_charge(const WavePacket& w, const DiffOp& q, const ChargeOptions& opt = {});

enum class ChargeKind { matrix, derivative, antilinear };
const char* kind_name(ChargeKind k);
ChargeKind classify(const DiffOp& q);

struct ChargeReport {
  std::string name;
  ChargeKind kind = ChargeKind::matrix;
  std::vector<std::pair<double, cplx>> values;
  /// max_t |Q(t) - Q(0)| / max(|Q(0)|, norm).
  double max_drift = 0.0;
  /// max_t |Im Q(t)| / norm; not meaningful for antilinear charges.
  double imag_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Tolerances {
  double norm = 1e-12;
  double matrix = 1e-8;
  double derivative = 1e-6;
  double imag_matrix = 1e-10;
  double imag_derivative = 1e-7;
};

std::vector<ChargeReport> drift_report(const WavePacket& w, const std::vector<symdiff::Generators::Named>& gens,
                                       const std::vector<double>& times, const Tolerances& tol = {},
                                       const ChargeOptions& opt = {});

/// exp(2 pi s^3) for the fermionic and cyclic bosonic sets, plus quarter turns.
Checks rotation_signature(double tol = 1e-10);

struct ConserveConfig {
  PacketSpec packet;
  std::vector<double> times{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Tolerances tol;
  ChargeOptions charge;
  symdiff::Conventions conv;
};

/// Norm, drift, realness, grid-halving and rotation checks for one
/// representation. The packet family is taken from `rep` and `basis`.
Checks verify_conservation(symdiff::Rep rep, const ConserveConfig& cfg);
/// Packet examples: p1 at k0, s3 on a pure branch, p0 above the mass.
Checks verify_charge_examples(const ConserveConfig& cfg);
/// Derivative-type drift under raw differences at n and at halved spacing.
Checks verify_halving(const ConserveConfig& cfg);

}  // namespace fbd::conservation
