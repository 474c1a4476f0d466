#include "spinorbit/quadrupole.hpp"

#include <cmath>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

constexpr double kInputNormTolerance = 1e-2;

}  // namespace

double neutron_velocity(double lambda, const PhysicalConstants& constants) {
  require_positive(lambda, "neutron_velocity: lambda");
  constants.validate();
  return 2.0 * kPi * constants.hbar / (constants.mass_n * lambda);
}

double neutron_wavelength(double velocity, const PhysicalConstants& constants) {
  require_positive(velocity, "neutron_wavelength: velocity");
  constants.validate();
  return 2.0 * kPi * constants.hbar / (constants.mass_n * velocity);
}

double rc_from_physical(double gradient, double length, double lambda, const PhysicalConstants& constants) {
  require_positive(gradient, "rc_from_physical: gradient");
  require_positive(length, "rc_from_physical: length");
  return kPi * neutron_velocity(lambda, constants) / (constants.gamma_n * gradient * length);
}

double gradient_from_rc(double r_c, double length, double lambda, const PhysicalConstants& constants) {
  require_positive(r_c, "gradient_from_rc: r_c");
  require_positive(length, "gradient_from_rc: length");
  return kPi * neutron_velocity(lambda, constants) / (constants.gamma_n * r_c * length);
}

QuadrupoleSpec QuadrupoleSpec::from_ratio(double ratio, double rotation) {
  QuadrupoleSpec s;
  s.ratio = ratio;
  s.rotation = rotation;
  s.validate();
  return s;
}

QuadrupoleSpec QuadrupoleSpec::from_physical(double gradient, double length, double lambda, double sigma_perp,
                                             const PhysicalConstants& constants, double rotation) {
  require_positive(sigma_perp, "QuadrupoleSpec: sigma_perp");
  QuadrupoleSpec s;
  const double r_c = rc_from_physical(gradient, length, lambda, constants);
  s.magnet = MagnetGeometry{gradient, length, lambda, r_c};
  s.ratio = r_c / sigma_perp;
  s.rotation = rotation;
  s.validate(constants);
  return s;
}

void QuadrupoleSpec::validate(const PhysicalConstants& constants) const {
  require_positive(ratio, "QuadrupoleSpec: ratio");
  if (!std::isfinite(rotation)) throw ParameterError("QuadrupoleSpec: rotation must be finite");
  if (!magnet) return;
  const auto& m = *magnet;
  require_positive(m.r_c, "QuadrupoleSpec: r_c");
  const double flip = constants.gamma_n * m.gradient * m.r_c * m.length / neutron_velocity(m.lambda, constants);
  if (std::abs(flip - kPi) > 1e-12 * kPi)
    throw ParameterError("QuadrupoleSpec: magnet parameters violate the spin-flip condition");
}

QuadOverlapKernel::QuadOverlapKernel(const ModeIndex& input, int n_max, const specfun::QuadratureRule& rule)
    : input_(input), n_max_(n_max) {
  if (n_max < 0 || n_max > specfun::kLaguerreMaxDegree) throw ParameterError("quadrupole: n_max outside [0, 500]");
  if (input.n_r < 0 || input.n_r > specfun::kLaguerreMaxDegree)
    throw ParameterError("quadrupole: input n_r outside [0, 500]");
  flipped_ell_ = input.spin == Spin::up ? input.ell + 1 : input.ell - 1;
  nodes_ = Eigen::Map<const Eigen::VectorXd>(rule.nodes().data(), rule.order());
  const Eigen::MatrixXd in_table = radial_table(input.n_r, input.ell, rule);
  weighted_input_ = overlap_measure(rule).cwiseProduct(in_table.row(input.n_r).transpose());
  same_table_ = radial_table(n_max, input.ell, rule);
  flipped_table_ = radial_table(n_max, flipped_ell_, rule);
}

QuadBranches QuadOverlapKernel::branches(double ratio) const {
  require_positive(ratio, "quadrupole: ratio");
  // Flip angle pi r / (2 r_c) at r = sigma xi.
  const double k = kPi / (2.0 * ratio);
  const Eigen::VectorXd cos_w = weighted_input_.cwiseProduct((k * nodes_).array().cos().matrix());
  const Eigen::VectorXd sin_w = weighted_input_.cwiseProduct((k * nodes_).array().sin().matrix());
  const Eigen::VectorXd same = same_table_ * cos_w;
  const Eigen::VectorXd flip = flipped_table_ * sin_w;

  QuadBranches b;
  b.input = input_;
  b.flipped_ell = flipped_ell_;
  b.same_spin.assign(same.data(), same.data() + same.size());
  b.flipped.assign(flip.data(), flip.data() + flip.size());
  return b;
}

QuadBranches quad_branches(const ModeIndex& input, double ratio, int n_max, const specfun::QuadratureRule& rule) {
  return QuadOverlapKernel(input, n_max, rule).branches(ratio);
}

SpinOrbitState quad_apply(const SpinOrbitState& input, const QuadrupoleSpec& spec, int n_max,
                          const specfun::QuadratureRule& rule) {
  spec.validate();
  const double total = input.captured_probability() + input.tail_estimate();
  if (std::abs(total - 1.0) > kInputNormTolerance)
    throw ParameterError("quad_apply: input is not normalized (captured + tail = " + std::to_string(total) + ")");

  const Complex raise_phase = Complex{0.0, 1.0} * std::polar(1.0, -spec.rotation);
  const Complex lower_phase = Complex{0.0, 1.0} * std::polar(1.0, spec.rotation);

  SpinOrbitState::CoefficientMap out;
  double truncated = 0.0;
  for (const auto& [mode, amp] : input.coefficients()) {
    const QuadBranches b = quad_branches(mode, spec.ratio, n_max, rule);
    const Spin flipped_spin = flipped(mode.spin);
    const Complex flip_phase = mode.spin == Spin::up ? raise_phase : lower_phase;
    double kept = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      out[{n, mode.ell, mode.spin}] += amp * b.same_spin[n];
      out[{n, b.flipped_ell, flipped_spin}] += amp * flip_phase * b.flipped[n];
      kept += b.same_spin[n] * b.same_spin[n] + b.flipped[n] * b.flipped[n];
    }
    truncated += std::norm(amp) * std::max(0.0, 1.0 - kept);
  }
  return SpinOrbitState(std::move(out), input.sigma_perp(), input.tail_estimate() + truncated);
}

SpinOrbitState quad_apply(const SpinOrbitState& input, const QuadrupoleSpec& spec, int n_max) {
  return quad_apply(input, spec, n_max, specfun::radial_quadrature(specfun::kDefaultQuadratureOrder));
}

SweepTable quad_coefficient_sweep(const std::vector<double>& ratio_grid, const std::vector<int>& n_list, int n_max,
                                  int quadrature_order) {
  std::vector<std::string> columns{"ratio"};
  for (int n : n_list) {
    if (n < 0 || n > n_max) throw ParameterError("quad_coefficient_sweep: n outside [0, n_max]");
    columns.push_back("c_up_n" + std::to_string(n));
    columns.push_back("c_dn_n" + std::to_string(n));
  }
  const QuadOverlapKernel kernel({0, 0, Spin::up}, n_max, specfun::radial_quadrature(quadrature_order));

  SweepTable table(columns);
  table.set_metadata("input", "(0,0,up)");
  table.set_metadata("n_max_quad", static_cast<double>(n_max));
  table.set_metadata("quadrature_order", static_cast<double>(quadrature_order));
  for (double ratio : ratio_grid) {
    const QuadBranches b = kernel.branches(ratio);
    std::vector<double> row{ratio};
    for (int n : n_list) {
      row.push_back(b.same_spin[n]);
      row.push_back(b.flipped[n]);
    }
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace spinorbit
