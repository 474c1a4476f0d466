#pragma once

#include <optional>
#include <vector>

#include "spinorbit/basis.hpp"
#include "spinorbit/constants.hpp"
#include "spinorbit/specfun.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

inline constexpr int kDefaultQuadNMax = 60;

/// Physical magnet parameters, all SI.
struct MagnetGeometry {
  double gradient = 0.0;  ///< |grad B|, T/m
  double length = 0.0;    ///< l_Q, m
  double lambda = 0.0;    ///< neutron wavelength, m
  double r_c = 0.0;       ///< spin-flip radius, m
};

/// A quadrupole is fully described, for the transverse state, by the reduced
/// spin-flip radius r_c/sigma_perp and the orientation of its field pattern.
struct QuadrupoleSpec {
  double ratio = 1.82;    ///< r_c / sigma_perp
  double rotation = 0.0;  ///< theta, rad
  std::optional<MagnetGeometry> magnet;

  static QuadrupoleSpec from_ratio(double ratio, double rotation = 0.0);
  /// Derives r_c from the spin-flip condition and ratio = r_c / sigma_perp.
  static QuadrupoleSpec from_physical(double gradient, double length, double lambda, double sigma_perp,
                                      const PhysicalConstants& constants = {}, double rotation = 0.0);

  /// Throws ParameterError unless ratio > 0 and, when present, the magnet
  /// satisfies gamma |grad B| r_c l_Q / v_z = pi to relative 1e-12.
  void validate(const PhysicalConstants& constants = {}) const;
};

/// v_z = 2 pi hbar / (m lambda).
double neutron_velocity(double lambda, const PhysicalConstants& constants = {});
/// Neutron de Broglie wavelength for a given speed; inverse of neutron_velocity.
double neutron_wavelength(double velocity, const PhysicalConstants& constants = {});

/// r_c = pi v_z / (gamma |grad B| l_Q).
double rc_from_physical(double gradient, double length, double lambda, const PhysicalConstants& constants = {});
/// |grad B| = pi v_z / (gamma r_c l_Q); inverse of rc_from_physical.
double gradient_from_rc(double r_c, double length, double lambda, const PhysicalConstants& constants = {});

/// Real radial coefficient families for one definite input mode.
///
/// For spin-up input (n_i, l_i): same_spin[n] = C_{n, l_i, up} (cos overlap)
/// and flipped[n] = C_{n, l_i+1, down} (sin overlap). For spin-down input the
/// flipped branch lands on l_i - 1 with spin up.
struct QuadBranches {
  ModeIndex input;
  int flipped_ell = 0;
  std::vector<double> same_spin;
  std::vector<double> flipped;
};

/// Precomputed radial tables for repeated evaluations of one input mode over
/// many ratios. Cheap to query; immutable after construction.
class QuadOverlapKernel {
 public:
  QuadOverlapKernel(const ModeIndex& input, int n_max, const specfun::QuadratureRule& rule);

  QuadBranches branches(double ratio) const;
  const ModeIndex& input() const { return input_; }
  int n_max() const { return n_max_; }

 private:
  ModeIndex input_;
  int n_max_;
  int flipped_ell_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weighted_input_;  // 2 pi w_i xi_i R_in(xi_i)
  Eigen::MatrixXd same_table_;
  Eigen::MatrixXd flipped_table_;
};

QuadBranches quad_branches(const ModeIndex& input, double ratio, int n_max, const specfun::QuadratureRule& rule);

/// Applies U_Q(theta) = cos(pi r / 2 r_c) + i sin(pi r / 2 r_c) [e^{-i theta} l+ s+ + e^{i theta} l- s-]
/// to every component of `input`, truncating each output family at n_max.
/// Spin-up amplitudes land on (n, l, up) unchanged in phase; spin-flipped ones
/// carry i e^{-i theta} (raising) or i e^{+i theta} (lowering).
SpinOrbitState quad_apply(const SpinOrbitState& input, const QuadrupoleSpec& spec, int n_max,
                          const specfun::QuadratureRule& rule);
SpinOrbitState quad_apply(const SpinOrbitState& input, const QuadrupoleSpec& spec,
                          int n_max = kDefaultQuadNMax);

/// C_{n,0,up} and C_{n,1,down} for (0,0,up) input over a ratio grid.
/// Columns: ratio, then c_up_n<n>, c_dn_n<n> for every n in n_list.
SweepTable quad_coefficient_sweep(const std::vector<double>& ratio_grid, const std::vector<int>& n_list,
                                  int n_max = kDefaultQuadNMax,
                                  int quadrature_order = specfun::kDefaultQuadratureOrder);

}  // namespace spinorbit
