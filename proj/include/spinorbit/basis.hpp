#pragma once

#include <Eigen/Core>
#include <complex>
#include <compare>
#include <map>
#include <string>

#include "spinorbit/constants.hpp"
#include "spinorbit/specfun.hpp"

namespace spinorbit {

using Complex = std::complex<double>;

enum class Spin { up, down };

inline Spin flipped(Spin s) { return s == Spin::up ? Spin::down : Spin::up; }
std::string to_string(Spin s);

/// One basis state |n_r, ell, s> of the transverse oscillator (x) spin space.
/// k_z is carried outside the basis; ordering is (n_r, ell, spin).
struct ModeIndex {
  int n_r = 0;
  int ell = 0;
  Spin spin = Spin::up;

  auto operator<=>(const ModeIndex&) const = default;
};

std::string to_string(const ModeIndex& m);

inline constexpr double kPruneThreshold = 1e-14;

/// Sparse spin-orbit wavepacket in the Laguerre-Gauss basis. Immutable.
///
/// Amplitudes with magnitude below 1e-14 are pruned on construction and the
/// discarded probability is kept in pruned_probability(). The producing
/// element records an analytic estimate of the probability lying outside its
/// truncation window in tail_estimate().
class SpinOrbitState {
 public:
  using CoefficientMap = std::map<ModeIndex, Complex>;

  SpinOrbitState() = default;
  SpinOrbitState(CoefficientMap coeffs, double sigma_perp, double tail_estimate = 0.0);

  /// |mode> with unit amplitude.
  static SpinOrbitState basis_state(const ModeIndex& mode, double sigma_perp = 100e-9);

  const CoefficientMap& coefficients() const { return coeffs_; }
  Complex amplitude(const ModeIndex& mode) const;
  double sigma_perp() const { return sigma_perp_; }
  double captured_probability() const { return captured_; }
  double tail_estimate() const { return tail_; }
  double pruned_probability() const { return pruned_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Sum of |c|^2 over all components with the given spin.
  double spin_probability(Spin s) const;

 private:
  CoefficientMap coeffs_;
  double sigma_perp_ = 100e-9;
  double captured_ = 0.0;
  double tail_ = 0.0;
  double pruned_ = 0.0;
};

/// Transverse coherence length and the oscillator frequency it implies,
/// omega_perp^2 = hbar / (2 m sigma_perp^2).
class WavepacketGeometry {
 public:
  explicit WavepacketGeometry(double sigma_perp, PhysicalConstants constants = {});
  static WavepacketGeometry from_omega(double omega_perp, PhysicalConstants constants = {});

  double sigma_perp() const { return sigma_perp_; }
  double omega_perp() const { return omega_perp_; }
  const PhysicalConstants& constants() const { return constants_; }

 private:
  double sigma_perp_;
  double omega_perp_;
  PhysicalConstants constants_;
};

/// sigma-scaled radial profile sqrt(n!/(pi (n+|l|)!)) xi^|l| exp(-xi^2/2) L_n^|l|(xi^2).
/// Evaluated with a normalized, rescaled recurrence so large n at large xi
/// neither overflows nor loses the exponential factor.
double mode_radial(int n_r, int ell, double xi);

/// Radial profiles for n = 0..n_max of one |ell| at every node of a rule.
/// Row n, column i holds mode_radial(n, ell, nodes[i]).
Eigen::MatrixXd radial_table(int n_max, int ell, const specfun::QuadratureRule& rule);

/// <a|b> for two basis modes. The azimuthal integral is analytic: differing
/// ell or spin return exactly 0.
Complex inner_product(const ModeIndex& a, const ModeIndex& b, const specfun::QuadratureRule& rule);

/// E_T = hbar omega_perp (2 n_r + |l| + 1) + hbar^2 k_z^2 / (2m) - mu.B, in joules.
double total_energy(int n_r, int ell, double k_z, double b_dot_mu, const WavepacketGeometry& geometry);

/// sum |c|^2 over stored coefficients.
double state_norm(const SpinOrbitState& state);

/// 2 pi w_i xi_i for every node: the measure of an overlap integral over
/// xi dxi dphi once the azimuthal factor has been integrated analytically.
Eigen::VectorXd overlap_measure(const specfun::QuadratureRule& rule);

}  // namespace spinorbit
