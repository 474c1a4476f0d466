#include "spinorbit/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "spinorbit/errors.hpp"

namespace spinorbit {

std::string to_string(SweptAngle a) { return a == SweptAngle::beta ? "beta" : "theta"; }

void RamseyConfig::validate() const {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ParameterError("RamseyConfig: ratio must be positive and finite");
  if (!std::isfinite(beta) || !std::isfinite(theta)) throw ParameterError("RamseyConfig: angles must be finite");
  if (!std::isfinite(sweep.start) || !std::isfinite(sweep.stop))
    throw ParameterError("RamseyConfig: sweep bounds must be finite");
  if (!(sweep.step > 0.0)) throw ParameterError("RamseyConfig: sweep step must be positive");
  if (sweep.stop < sweep.start) throw ParameterError("RamseyConfig: sweep stop below start");
}

Spinor ramsey_exit_state(const RamseyConfig& config, double xi, double phi) {
  config.validate();
  const double u00 = mode_radial(0, 0, xi);
  const double half = 0.5 * (config.beta - config.theta);
  const double flip = kPi * xi / config.ratio;
  const Complex i{0.0, 1.0};
  return {(std::cos(flip) * std::cos(half) - i * std::sin(half)) * u00,
          -i * std::sin(flip) * std::cos(half) * std::polar(1.0, phi) * u00};
}

double fringe_amplitude(double ratio) {
  if (!(ratio > 0.0)) throw ParameterError("fringe_amplitude: ratio must be positive");
  const double a = kPi / ratio;
  if (a > specfun::kDawsonMaxArgument) return 0.5 + 0.25 / (a * a);  // a F(a) ~ 1/2 + 1/(4a^2)
  return a * specfun::dawson(a);
}

double max_fringe_amplitude_ratio() {
  // a F(a) is unimodal on (0, inf); search a in [0.5, 3].
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [](double a) { return a * specfun::dawson(a); };
  double lo = 0.5, hi = 3.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return kPi / (0.5 * (lo + hi));
}

RamseyIntensities intensities_analytic(const RamseyConfig& config) {
  config.validate();
  const double c = std::cos(0.5 * (config.beta - config.theta));
  const double down = fringe_amplitude(config.ratio) * c * c;
  return {1.0 - down, down};
}

RamseyIntensities intensities_numeric(const RamseyConfig& config, const specfun::QuadratureRule& rule) {
  config.validate();
  // |e^{i phi}| = 1, so the phi integral contributes 2 pi.
  RamseyIntensities out;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (int k = 0; k < rule.order(); ++k) {
    const Spinor s = ramsey_exit_state(config, nodes[k], 0.0);
    const double measure = 2.0 * kPi * weights[k] * nodes[k];
    out.up += measure * std::norm(s.up);
    out.down += measure * std::norm(s.down);
  }
  return out;
}

SpinOrbitState solenoid_apply(const SpinOrbitState& state, double beta) {
  if (!std::isfinite(beta)) throw ParameterError("solenoid_apply: beta must be finite");
  const Complex up_phase = std::polar(1.0, 0.5 * beta);
  const Complex down_phase = std::polar(1.0, -0.5 * beta);
  SpinOrbitState::CoefficientMap out;
  for (const auto& [mode, c] : state.coefficients()) out[mode] = c * (mode.spin == Spin::up ? up_phase : down_phase);
  return SpinOrbitState(std::move(out), state.sigma_perp(), state.tail_estimate());
}

SpinOrbitState ramsey_composed_state(const RamseyConfig& config, int n_max, const specfun::QuadratureRule& rule) {
  config.validate();
  const SpinOrbitState input = SpinOrbitState::basis_state({0, 0, Spin::up});
  const SpinOrbitState first = quad_apply(input, QuadrupoleSpec::from_ratio(config.ratio, 0.0), n_max, rule);
  const SpinOrbitState phased = solenoid_apply(first, config.beta);
  return quad_apply(phased, QuadrupoleSpec::from_ratio(config.ratio, config.theta), n_max, rule);
}

RamseyIntensities intensities_composed(const RamseyConfig& config, int n_max, const specfun::QuadratureRule& rule) {
  const SpinOrbitState out = ramsey_composed_state(config, n_max, rule);
  return {out.spin_probability(Spin::up), out.spin_probability(Spin::down)};
}

SweepTable fringe_sweep(const RamseyConfig& config) {
  config.validate();
  const std::string name = to_string(config.sweep.variable);
  SweepTable table({name, "I_up", "I_down"});
  table.set_metadata("ratio", config.ratio);
  table.set_metadata("swept", name);
  if (config.sweep.variable == SweptAngle::beta)
    table.set_metadata("theta", config.theta);
  else
    table.set_metadata("beta", config.beta);

  RamseyConfig point = config;
  for (double angle : linear_grid(config.sweep.start, config.sweep.stop, config.sweep.step)) {
    (config.sweep.variable == SweptAngle::beta ? point.beta : point.theta) = angle;
    const RamseyIntensities I = intensities_analytic(point);
    table.add_row({angle, I.up, I.down});
  }
  return table;
}

}  // namespace spinorbit
