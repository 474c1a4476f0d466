#pragma once

#include <Eigen/Core>
#include <compare>
#include <vector>

#include "spinorbit/basis.hpp"
#include "spinorbit/quadrupole.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

/// (ell, spin) label of the orbital (x) spin factor once n_r is traced out.
struct OrbitalSpinLabel {
  int ell = 0;
  Spin spin = Spin::up;
  auto operator<=>(const OrbitalSpinLabel&) const = default;
};

/// Computational basis of the 2x2 window {ell, ell+1} (x) {up, down}:
/// (ell,up), (ell,down), (ell+1,up), (ell+1,down). The orbital label is the
/// first qubit, spin the second; Wootters' complex conjugation is taken in
/// exactly this basis.
std::vector<OrbitalSpinLabel> two_qubit_basis(int ell_low = 0);

/// Hermitian, unit-trace, PSD matrix over an ordered list of labels.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kEigenTolerance = 1e-10;

  /// Throws ParameterError on a shape mismatch or when an invariant fails.
  DensityMatrix(std::vector<OrbitalSpinLabel> labels, Eigen::MatrixXcd entries);

  /// |psi><psi| for a normalized vector.
  static DensityMatrix pure(std::vector<OrbitalSpinLabel> labels, const Eigen::VectorXcd& psi);

  const std::vector<OrbitalSpinLabel>& labels() const { return labels_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  int dimension() const { return static_cast<int>(labels_.size()); }
  Complex at(const OrbitalSpinLabel& row, const OrbitalSpinLabel& col) const;
  double purity() const;

 private:
  std::vector<OrbitalSpinLabel> labels_;
  Eigen::MatrixXcd entries_;
};

/// up |ell,up> + down |ell+1,down>.
struct TwoBranchState {
  int ell = 0;
  Complex up;
  Complex down;
};

/// Radially filtered, renormalized pure state. amp_up and amp_down are the
/// real coefficient families divided by sqrt(p_eta); the state itself is
/// amp_up |l,up> + i amp_down |l+1,down>.
struct FilteredState {
  int eta = 0;
  double amp_up = 0.0;
  double amp_down = 0.0;
  double p_eta = 0.0;
  bool degenerate = false;  ///< p_eta == 0; amplitudes are zero

  TwoBranchState as_state(int ell = 0) const;
};

FilteredState filter_radial(const QuadBranches& branches, int eta);

/// Pure-state concurrence sqrt(2 (1 - Tr rho_S^2)), rho_S from the partial
/// trace over the orbital qubit. The vector is in two_qubit_basis order.
double concurrence_pure(const Eigen::Vector4cd& psi);
double concurrence_pure(const TwoBranchState& psi);
/// 0 for a degenerate filter.
double concurrence_pure(const FilteredState& psi);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a 4x4 density matrix.
/// The l_i are computed as singular values of V^T (sy x sy) V with
/// rho = V V^dagger, which equal the square roots of the eigenvalues of
/// rho (sy x sy) rho^* (sy x sy) without amplifying round-off.
double concurrence_mixed(const DensityMatrix& rho);

/// Same quantity through the eigenvalues of the non-Hermitian product
/// rho rho~. Imaginary residues above 1e-10 and negative eigenvalues below
/// -1e-10 raise NumericalError. Accurate to ~1e-8 only.
double concurrence_mixed_eigen(const DensityMatrix& rho);

/// Closed form for X-shaped states:
///   2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)).
/// Throws ParameterError if any entry outside the X pattern exceeds 1e-12.
double x_state_concurrence(const DensityMatrix& rho);

/// rho_SO = sum_n |psi_n><psi_n| over the radial index, in the 2x2 window
/// spanned by the state's ell values, divided by its trace. Throws
/// ParameterError if the state populates more than two adjacent ell values.
DensityMatrix rho_traced(const SpinOrbitState& state);
/// Traced density matrix assembled directly from the real coefficient families.
DensityMatrix rho_traced(const QuadBranches& branches);

struct ConcurrenceSweep {
  SweepTable filtered;  ///< ratio, conc_eta<k>..., p_eta<k>...
  SweepTable traced;    ///< ratio, conc_traced
  double argmax_ratio = 0.0;
  double max_concurrence = 0.0;
};

ConcurrenceSweep concurrence_sweep(const std::vector<double>& ratio_grid, const std::vector<int>& etas,
                                   int n_max = kDefaultQuadNMax,
                                   int quadrature_order = specfun::kDefaultQuadratureOrder);

}  // namespace spinorbit
