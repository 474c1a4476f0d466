#include "spinorbit/spp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

bool is_integer(double v) { return v == std::round(v); }

// Input components must add up, with their recorded tail, to one.
constexpr double kInputNormTolerance = 1e-2;

}  // namespace

SppSpec SppSpec::from_material(const SppMaterial& m) {
  SppSpec s;
  s.q = -m.scattering_length_density * m.lambda * m.step_height / (2.0 * kPi);
  s.alpha0 = -m.scattering_length_density * m.lambda * m.base_height;
  s.material = m;
  return s;
}

void SppSpec::validate() const {
  if (!std::isfinite(q) || !std::isfinite(alpha0)) throw ParameterError("SppSpec: q and alpha0 must be finite");
  if (!material) return;
  const SppSpec derived = from_material(*material);
  if (!close_rel(derived.q, q, 1e-12) || !close_rel(derived.alpha0, alpha0, 1e-12))
    throw ParameterError("SppSpec: material parameters disagree with (q, alpha0)");
}

Complex azimuthal_factor(double t) {
  if (is_integer(t)) return t == 0.0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  return std::polar(1.0, kPi * t) * specfun::sinc(kPi * t);
}

Eigen::VectorXd radial_overlaps(int n_in, int ell_in, int ell_out, int n_max, const specfun::QuadratureRule& rule) {
  const Eigen::MatrixXd out_table = radial_table(n_max, ell_out, rule);
  const Eigen::MatrixXd in_table = radial_table(n_in, ell_in, rule);
  const Eigen::VectorXd weighted = overlap_measure(rule).cwiseProduct(in_table.row(n_in).transpose());
  return out_table * weighted;
}

int spp_required_order(int n_in, int abs_ell_in, int n_max, int abs_ell_out) {
  // degree of xi^(1+|l_in|+|l_out|) L_n(xi^2) L_{n_in}(xi^2) must be <= 2N-1
  const int degree = 1 + abs_ell_in + abs_ell_out + 2 * n_max + 2 * n_in;
  return (degree + 2) / 2;
}

double spp_radial_tail_model(int ell_in, int ell_out, int n_max) {
  const double delta = std::abs(ell_out) - std::abs(ell_in);
  if (n_max <= 0) return 1.0;
  return std::min(1.0, delta * delta / (4.0 * n_max));
}

SpinOrbitState spp_apply(const SpinOrbitState& input, const SppSpec& spec, int n_max, int ell_window,
                         int base_order) {
  spec.validate();
  if (n_max < 0 || n_max > specfun::kLaguerreMaxDegree) throw ParameterError("spp_apply: n_max outside [0, 500]");
  if (ell_window < 1) throw ParameterError("spp_apply: ell_window must be >= 1");
  const double total = input.captured_probability() + input.tail_estimate();
  if (std::abs(total - 1.0) > kInputNormTolerance)
    throw ParameterError("spp_apply: input is not normalized (captured + tail = " + std::to_string(total) + ")");

  const bool integer_q = is_integer(spec.q);
  const Complex global_phase = std::polar(1.0, spec.alpha0);

  // Channel lists per input component, and the rule that integrates them all.
  int max_n_in = 0, max_abs_in = 0, max_abs_out = 0;
  for (const auto& [mode, c] : input.coefficients()) {
    max_n_in = std::max(max_n_in, mode.n_r);
    max_abs_in = std::max(max_abs_in, std::abs(mode.ell));
    const int centre = static_cast<int>(std::lround(mode.ell + spec.q));
    const int reach = integer_q ? 0 : ell_window;
    max_abs_out = std::max({max_abs_out, std::abs(centre - reach), std::abs(centre + reach)});
  }
  const int order = std::clamp(std::max(base_order, spp_required_order(max_n_in, max_abs_in, n_max, max_abs_out)),
                               specfun::kMinQuadratureOrder, specfun::kMaxQuadratureOrder);
  const specfun::QuadratureRule rule = specfun::radial_quadrature(order);
  const Eigen::VectorXd measure = overlap_measure(rule);

  std::map<int, Eigen::MatrixXd> tables;
  auto table_for = [&](int ell) -> const Eigen::MatrixXd& {
    const int key = std::abs(ell);
    auto it = tables.find(key);
    if (it == tables.end()) it = tables.emplace(key, radial_table(std::max(n_max, max_n_in), key, rule)).first;
    return it->second;
  };

  SpinOrbitState::CoefficientMap out;
  double tail = 0.0;
  for (const auto& [mode, amp] : input.coefficients()) {
    const Eigen::VectorXd in_weighted = measure.cwiseProduct(table_for(mode.ell).row(mode.n_r).transpose());
    const int centre = static_cast<int>(std::lround(mode.ell + spec.q));
    const int lo = integer_q ? centre : centre - ell_window;
    const int hi = integer_q ? centre : centre + ell_window;

    double window_weight = 0.0;
    double radial_tail = 0.0;
    for (int ell = lo; ell <= hi; ++ell) {
      const Complex factor = azimuthal_factor(mode.ell + spec.q - ell);
      const double channel = std::norm(factor);
      window_weight += channel;
      if (channel == 0.0) continue;
      radial_tail += channel * spp_radial_tail_model(mode.ell, ell, n_max);
      const Eigen::VectorXd overlaps = table_for(ell).topRows(n_max + 1) * in_weighted;
      for (int n = 0; n <= n_max; ++n) out[{n, ell, mode.spin}] += amp * global_phase * factor * overlaps[n];
    }
    // sum over all ell of sinc^2(pi (q - ell)) is exactly 1
    const double omitted = std::max(0.0, 1.0 - window_weight);
    tail += std::norm(amp) * (omitted + radial_tail);
  }
  return SpinOrbitState(std::move(out), input.sigma_perp(), input.tail_estimate() + tail);
}

namespace {

std::string probability_column(const ModeIndex& m) {
  std::string ell = m.ell < 0 ? "m" + std::to_string(-m.ell) : std::to_string(m.ell);
  return "p_n" + std::to_string(m.n_r) + "_l" + ell;
}

}  // namespace

SweepTable spp_probability_table(const std::vector<double>& q_grid, const std::vector<ModeIndex>& modes,
                                 int quadrature_order) {
  std::vector<std::string> columns{"q"};
  int max_n = 0, max_abs = 0;
  for (const auto& m : modes) {
    if (m.n_r < 0) throw ParameterError("spp_probability_table: negative n_r");
    columns.push_back(probability_column(m));
    max_n = std::max(max_n, m.n_r);
    max_abs = std::max(max_abs, std::abs(m.ell));
  }
  for (double q : q_grid)
    if (!std::isfinite(q)) throw ParameterError("spp_probability_table: q values must be finite");

  const int order = std::clamp(std::max(quadrature_order, spp_required_order(0, 0, max_n, max_abs)),
                               specfun::kMinQuadratureOrder, specfun::kMaxQuadratureOrder);
  const specfun::QuadratureRule rule = specfun::radial_quadrature(order);

  // Radial overlaps do not depend on q.
  std::vector<double> radial;
  radial.reserve(modes.size());
  for (const auto& m : modes)
    radial.push_back(m.spin == Spin::up ? radial_overlaps(0, 0, m.ell, m.n_r, rule)[m.n_r] : 0.0);

  SweepTable table(columns);
  table.set_metadata("input", "(0,0,up)");
  table.set_metadata("effective_quadrature_order", static_cast<double>(order));
  for (double q : q_grid) {
    std::vector<double> row{q};
    for (std::size_t k = 0; k < modes.size(); ++k)
      row.push_back(std::norm(azimuthal_factor(q - modes[k].ell) * radial[k]));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace spinorbit
