#pragma once

#include <optional>
#include <vector>

#include "spinorbit/basis.hpp"
#include "spinorbit/specfun.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

/// Physical description of a spiral phase plate h(phi) = h0 + h_s phi / (2 pi).
struct SppMaterial {
  double scattering_length_density = 0.0;  ///< N b_c, 1/m^2
  double step_height = 0.0;                ///< h_s, m
  double base_height = 0.0;                ///< h0, m
  double lambda = 0.0;                     ///< neutron wavelength, m
};

struct SppSpec {
  double q = 0.0;       ///< topological charge
  double alpha0 = 0.0;  ///< uniform phase, rad
  std::optional<SppMaterial> material;

  /// q = -N b_c lambda h_s / (2 pi), alpha0 = -N b_c lambda h0.
  static SppSpec from_material(const SppMaterial& m);

  /// Throws ParameterError if q is not finite or the material fields disagree
  /// with (q, alpha0) beyond relative 1e-12.
  void validate() const;
};

inline constexpr int kDefaultSppNMax = 200;
inline constexpr int kDefaultEllWindow = 50;

/// int_0^{2pi} exp(i t phi) dphi / (2 pi) = exp(i pi t) sinc(pi t), exact for integer t.
Complex azimuthal_factor(double t);

/// Radial overlaps 2 pi int xi R_{n,ell_out} R_{n_in,ell_in} dxi for n = 0..n_max.
Eigen::VectorXd radial_overlaps(int n_in, int ell_in, int ell_out, int n_max, const specfun::QuadratureRule& rule);

/// Smallest rule order for which every SPP overlap up to (n_max, |ell_out|)
/// from (n_in, |ell_in|) is a polynomial of exactly integrable degree.
int spp_required_order(int n_in, int abs_ell_in, int n_max, int abs_ell_out);

/// Radial truncation model for one ell channel: (|ell|-|ell_in|)^2 / (4 n_max),
/// capped at 1. Equals 1/(4N) for q = 1 from (0,0).
double spp_radial_tail_model(int ell_in, int ell_out, int n_max);

/// Applies exp(i q phi) exp(i alpha0) to every component of `input`.
///
/// Integer q moves each component to the single channel ell_in + q. Otherwise
/// the channels round(ell_in + q) +/- ell_window are kept and the omitted
/// sinc^2 weight is added to the tail estimate together with the radial
/// truncation model. Spin is untouched. The rule is enlarged (up to 512
/// nodes) when `base_order` cannot integrate the overlaps exactly.
SpinOrbitState spp_apply(const SpinOrbitState& input, const SppSpec& spec, int n_max = kDefaultSppNMax,
                         int ell_window = kDefaultEllWindow,
                         int base_order = specfun::kDefaultQuadratureOrder);

/// |C_{n,l}|^2 of the requested modes after an SPP of charge q acting on
/// (0,0,up), one row per q. Columns: q, p_n<n>_l<l> (negative l as `m<|l|>`).
SweepTable spp_probability_table(const std::vector<double>& q_grid, const std::vector<ModeIndex>& modes,
                                 int quadrature_order = specfun::kDefaultQuadratureOrder);

}  // namespace spinorbit
