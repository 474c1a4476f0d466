#pragma once

#include "spinorbit/basis.hpp"
#include "spinorbit/quadrupole.hpp"
#include "spinorbit/specfun.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

enum class SweptAngle { beta, theta };

std::string to_string(SweptAngle a);

/// Angular grid for whichever of beta/theta is swept; the other keeps its
/// value from the config.
struct AngleSweep {
  SweptAngle variable = SweptAngle::beta;
  double start = 0.0;
  double stop = 2.0 * kPi;
  double step = kPi / 50.0;
};

/// Quadrupole, solenoid phase beta, quadrupole rotated by theta.
struct RamseyConfig {
  double beta = 0.0;   ///< solenoid spin phase, rad
  double theta = kPi;  ///< rotation of the second quadrupole, rad
  double ratio = 1.82; ///< r_c / sigma_perp, shared by both quadrupoles
  AngleSweep sweep;

  /// Throws ParameterError unless ratio > 0, angles finite, step > 0 and stop >= start.
  void validate() const;
};

struct Spinor {
  Complex up;
  Complex down;
};

struct RamseyIntensities {
  double up = 0.0;
  double down = 0.0;
};

/// Exit spinor at (xi, phi) for a (0,0,up) input, global phase dropped:
///   up   = [cos(pi xi / ratio) cos(d/2) - i sin(d/2)] u00(xi)
///   down = -i sin(pi xi / ratio) cos(d/2) e^{i phi} u00(xi)
/// with d = beta - theta.
Spinor ramsey_exit_state(const RamseyConfig& config, double xi, double phi);

/// I_down = a F(a) cos^2((beta - theta)/2), a = pi / ratio; I_up = 1 - I_down.
RamseyIntensities intensities_analytic(const RamseyConfig& config);

/// Integrates |<s|exit>|^2 over the transverse plane with the given rule;
/// the azimuthal integral is done analytically.
RamseyIntensities intensities_numeric(const RamseyConfig& config, const specfun::QuadratureRule& rule);

/// Solenoid U_z(beta): e^{+i beta/2} on spin-up, e^{-i beta/2} on spin-down.
/// (n_r, ell) are untouched.
SpinOrbitState solenoid_apply(const SpinOrbitState& state, double beta);

/// (0,0,up) through quad_apply, solenoid_apply and quad_apply rotated by theta.
SpinOrbitState ramsey_composed_state(const RamseyConfig& config, int n_max, const specfun::QuadratureRule& rule);
/// Spin-resolved probabilities of ramsey_composed_state.
RamseyIntensities intensities_composed(const RamseyConfig& config, int n_max, const specfun::QuadratureRule& rule);

/// Fringe amplitude a F(a), a = pi / ratio.
double fringe_amplitude(double ratio);

/// Ratio that maximizes fringe_amplitude, by golden-section search.
double max_fringe_amplitude_ratio();

/// Rows (swept angle, I_up, I_down) from intensities_analytic.
/// Columns: beta,I_up,I_down or theta,I_up,I_down.
SweepTable fringe_sweep(const RamseyConfig& config);

}  // namespace spinorbit
