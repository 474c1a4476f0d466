#include "spinorbit/basis.hpp"

#include <cmath>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

void PhysicalConstants::validate() const {
  for (double v : {gamma_n, mass_n, hbar})
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("PhysicalConstants: all constants must be positive");
}

std::string to_string(Spin s) { return s == Spin::up ? "up" : "down"; }

std::string to_string(const ModeIndex& m) {
  return "(" + std::to_string(m.n_r) + "," + std::to_string(m.ell) + "," + to_string(m.spin) + ")";
}

SpinOrbitState::SpinOrbitState(CoefficientMap coeffs, double sigma_perp, double tail_estimate)
    : sigma_perp_(sigma_perp), tail_(tail_estimate) {
  if (!(sigma_perp > 0.0)) throw ParameterError("SpinOrbitState: sigma_perp must be positive");
  if (!(tail_estimate >= 0.0)) throw ParameterError("SpinOrbitState: tail estimate must be non-negative");
  for (auto& [mode, c] : coeffs) {
    if (mode.n_r < 0) throw ParameterError("SpinOrbitState: negative n_r in " + to_string(mode));
    const double p = std::norm(c);
    if (std::abs(c) < kPruneThreshold) {
      pruned_ += p;
      continue;
    }
    captured_ += p;
    coeffs_.emplace(mode, c);
  }
}

SpinOrbitState SpinOrbitState::basis_state(const ModeIndex& mode, double sigma_perp) {
  return SpinOrbitState({{mode, Complex{1.0, 0.0}}}, sigma_perp);
}

Complex SpinOrbitState::amplitude(const ModeIndex& mode) const {
  const auto it = coeffs_.find(mode);
  return it == coeffs_.end() ? Complex{} : it->second;
}

double SpinOrbitState::spin_probability(Spin s) const {
  double p = 0.0;
  for (const auto& [mode, c] : coeffs_)
    if (mode.spin == s) p += std::norm(c);
  return p;
}

WavepacketGeometry::WavepacketGeometry(double sigma_perp, PhysicalConstants constants)
    : sigma_perp_(sigma_perp), constants_(constants) {
  constants_.validate();
  if (!(sigma_perp > 0.0) || !std::isfinite(sigma_perp))
    throw ParameterError("WavepacketGeometry: sigma_perp must be positive");
  omega_perp_ = std::sqrt(constants_.hbar / (2.0 * constants_.mass_n * sigma_perp * sigma_perp));
}

WavepacketGeometry WavepacketGeometry::from_omega(double omega_perp, PhysicalConstants constants) {
  if (!(omega_perp > 0.0)) throw ParameterError("WavepacketGeometry: omega_perp must be positive");
  return WavepacketGeometry(std::sqrt(constants.hbar / (2.0 * constants.mass_n)) / omega_perp, constants);
}

namespace {

constexpr double kRescale = 1e150;

void check_radial_args(int n_r, double xi) {
  if (n_r < 0 || n_r > specfun::kLaguerreMaxDegree)
    throw ParameterError("mode_radial: n_r " + std::to_string(n_r) + " outside [0, 500]");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw ParameterError("mode_radial: xi must be finite and >= 0");
}

// Fills out[0..n_max] with the radial profiles at xi using
//   f_0 = 1/sqrt(Gamma(a+1)),
//   f_{n+1} = ((2n+1+a-x) f_n - sqrt(n(n+a)) f_{n-1}) / sqrt((n+1)(n+a+1)),
// which is L_n^a(x) * sqrt(n!/(n+a)!). The prefactor lives in a log scale.
template <class Out>
void radial_column(int n_max, int abs_ell, double xi, Out&& out) {
  const double a = abs_ell;
  if (xi == 0.0 && abs_ell > 0) {
    for (int n = 0; n <= n_max; ++n) out(n, 0.0);
    return;
  }
  const double x = xi * xi;
  double log_scale = -0.5 * std::log(kPi) - 0.5 * x - 0.5 * specfun::log_gamma(a + 1.0);
  if (abs_ell > 0) log_scale += a * std::log(xi);

  double prev = 0.0, cur = 1.0;
  out(0, std::exp(log_scale));
  for (int n = 0; n < n_max; ++n) {
    const double next =
        ((2.0 * n + 1.0 + a - x) * cur - std::sqrt(n * (n + a)) * prev) / std::sqrt((n + 1.0) * (n + a + 1.0));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
    out(n + 1, cur * std::exp(log_scale));
  }
}

}  // namespace

double mode_radial(int n_r, int ell, double xi) {
  check_radial_args(n_r, xi);
  double value = 0.0;
  radial_column(n_r, std::abs(ell), xi, [&](int n, double v) {
    if (n == n_r) value = v;
  });
  return value;
}

Eigen::MatrixXd radial_table(int n_max, int ell, const specfun::QuadratureRule& rule) {
  check_radial_args(n_max, 0.0);
  const auto nodes = rule.nodes();
  Eigen::MatrixXd table(n_max + 1, rule.order());
  for (int i = 0; i < rule.order(); ++i)
    radial_column(n_max, std::abs(ell), nodes[i], [&](int n, double v) { table(n, i) = v; });
  return table;
}

Eigen::VectorXd overlap_measure(const specfun::QuadratureRule& rule) {
  Eigen::VectorXd m(rule.order());
  for (int i = 0; i < rule.order(); ++i) m[i] = 2.0 * kPi * rule.weights()[i] * rule.nodes()[i];
  return m;
}

Complex inner_product(const ModeIndex& a, const ModeIndex& b, const specfun::QuadratureRule& rule) {
  if (a.spin != b.spin || a.ell != b.ell) return {0.0, 0.0};
  const double v = rule.integrate(
      [&](double xi) { return 2.0 * kPi * xi * mode_radial(a.n_r, a.ell, xi) * mode_radial(b.n_r, b.ell, xi); });
  return {v, 0.0};
}

double total_energy(int n_r, int ell, double k_z, double b_dot_mu, const WavepacketGeometry& geometry) {
  if (n_r < 0) throw ParameterError("total_energy: n_r must be >= 0");
  const auto& c = geometry.constants();
  const double transverse = c.hbar * geometry.omega_perp() * (2.0 * n_r + std::abs(ell) + 1.0);
  const double longitudinal = c.hbar * c.hbar * k_z * k_z / (2.0 * c.mass_n);
  return transverse + longitudinal - b_dot_mu;
}

double state_norm(const SpinOrbitState& state) {
  double sum = 0.0;
  for (const auto& [mode, c] : state.coefficients()) sum += std::norm(c);
  return sum;
}

}  // namespace spinorbit
