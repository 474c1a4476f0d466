#pragma once

#include <numbers>

namespace spinorbit {

inline constexpr double kPi = std::numbers::pi;

/// Neutron constants in SI units. Values are CODATA 2018; gamma_n is the
/// magnitude of the gyromagnetic ratio (only |gamma| enters the spin-flip
/// condition).
struct PhysicalConstants {
  double gamma_n = 1.83247171e8;     ///< rad s^-1 T^-1
  double mass_n = 1.67492749804e-27; ///< kg
  double hbar = 1.054571817e-34;     ///< J s

  /// Throws ParameterError unless every field is strictly positive and finite.
  void validate() const;
};

/// Elementary charge, used only to express energies in eV.
inline constexpr double kElementaryCharge = 1.602176634e-19;

}  // namespace spinorbit
