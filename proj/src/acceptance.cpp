#include "spinorbit/acceptance.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "json.hpp"
#include "spinorbit/entanglement.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/quadrupole.hpp"
#include "spinorbit/ramsey.hpp"
#include "spinorbit/specfun.hpp"
#include "spinorbit/spp.hpp"

namespace spinorbit {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

AcceptanceCheck within(std::string label, double measured, double target, double tol) {
  return {std::move(label), measured, num(target) + " +/- " + num(tol), std::abs(measured - target) <= tol};
}

AcceptanceCheck at_most(std::string label, double measured, double bound) {
  return {std::move(label), measured, "<= " + num(bound), measured <= bound};
}

AcceptanceCheck at_least(std::string label, double measured, double bound) {
  return {std::move(label), measured, ">= " + num(bound), measured >= bound};
}

AcceptanceCheck in_range(std::string label, double measured, double lo, double hi) {
  return {std::move(label), measured, "in [" + num(lo) + ", " + num(hi) + "]", measured >= lo && measured <= hi};
}

specfun::QuadratureRule config_rule(const RunConfig& c) { return specfun::radial_quadrature(c.quadrature_order); }

// 1. Maximum of the traced concurrence over ratio in [1, 3].
std::vector<AcceptanceCheck> traced_maximum(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const ConcurrenceSweep s = concurrence_sweep(linear_grid(1.0, 3.0, 0.005), {0}, c.n_max_quad, c.quadrature_order);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {within("max_conc_traced", s.max_concurrence, 0.97, 0.01), within("argmax_ratio", s.argmax_ratio, 1.82, 0.02),
          at_most("runtime_s", secs, 30.0)};
}

// 2. Radially filtered concurrences at ratio 1.82.
std::vector<AcceptanceCheck> filtered_concurrences(const RunConfig& c) {
  const QuadBranches b = QuadOverlapKernel({0, 0, Spin::up}, std::max(c.n_max_quad, 2), config_rule(c)).branches(1.82);
  const double targets[] = {1.00, 0.77, 0.55};
  std::vector<AcceptanceCheck> out;
  for (int eta = 0; eta < 3; ++eta)
    out.push_back(within("conc_eta" + std::to_string(eta), concurrence_pure(filter_radial(b, eta)), targets[eta], 0.01));
  return out;
}

// 3. Design calculator at 13.8 T/cm, 10 cm, 0.271 nm, 100 nm.
std::vector<AcceptanceCheck> design_ratio(const RunConfig& c) {
  const double ratio = rc_from_physical(13.8 * 100.0, 0.10, 0.271e-9, c.constants) / 100e-9;
  return {within("ratio", ratio, 1.82, 0.02 * 1.82)};
}

double worst_unitarity_residual(const std::vector<double>& ratios, int n_max, const specfun::QuadratureRule& rule) {
  const QuadOverlapKernel kernel({0, 0, Spin::up}, n_max, rule);
  double worst = 0.0;
  for (double r : ratios) {
    const QuadBranches b = kernel.branches(r);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) sum += b.same_spin[n] * b.same_spin[n] + b.flipped[n] * b.flipped[n];
    worst = std::max(worst, std::abs(1.0 - sum));
  }
  return worst;
}

// 4. Unitarity of the quadrupole coefficients and its convergence in n_max.
std::vector<AcceptanceCheck> unitarity(const RunConfig& c) {
  std::vector<double> ratios;
  for (int i = 0; i < 50; ++i) ratios.push_back(0.2 + i * (10.0 - 0.2) / 49.0);
  const auto rule = config_rule(c);
  const double full = worst_unitarity_residual(ratios, c.n_max_quad, rule);
  // The doubling n_max/2 -> n_max; one more doubling only meets round-off.
  const double half = worst_unitarity_residual(ratios, c.n_max_quad / 2, rule);
  const double shrink = full > 0.0 ? half / full : INFINITY;
  return {at_most("max_residual", full, 1e-6), at_least("shrink_factor_doubling", shrink, 10.0)};
}

// 5. Selection rules and reality of the coefficient families.
std::vector<AcceptanceCheck> selection_rules(const RunConfig& c) {
  const auto rule = config_rule(c);
  const ModeIndex inputs[] = {{0, 0, Spin::up}, {1, 0, Spin::up}, {0, 2, Spin::up}, {2, -1, Spin::up},
                              {0, 0, Spin::down}, {1, 3, Spin::down}};
  double leakage = 0.0, imag = 0.0;
  for (double ratio : {0.3, 0.9, 1.82, 3.0, 7.5}) {
    const QuadrupoleSpec spec = QuadrupoleSpec::from_ratio(ratio);
    for (const ModeIndex& in : inputs) {
      const SpinOrbitState out = quad_apply(SpinOrbitState::basis_state(in), spec, c.n_max_quad, rule);
      const int flipped_ell = in.spin == Spin::up ? in.ell + 1 : in.ell - 1;
      for (const auto& [m, amp] : out.coefficients()) {
        if (m.ell == in.ell && m.spin == in.spin) {
          imag = std::max(imag, std::abs(amp.imag()));
        } else if (m.ell == flipped_ell && m.spin == flipped(in.spin)) {
          imag = std::max(imag, std::abs(amp.real()));  // amplitude is i C
        } else {
          leakage += std::norm(amp);
        }
      }
    }
  }
  return {at_most("leakage", leakage, 1e-20), at_most("max_abs_imag_C", imag, 1e-12)};
}

// 6. Integer charge q = 1 on (0,0,up).
std::vector<AcceptanceCheck> spp_integer(const RunConfig& c) {
  const SpinOrbitState out = spp_apply(SpinOrbitState::basis_state({0, 0, Spin::up}), SppSpec{1.0, 0.0, {}},
                                       c.n_max_spp, c.ell_window, c.quadrature_order);
  double off_channel = 0.0;
  for (const auto& [m, amp] : out.coefficients())
    if (m.ell != 1) off_channel += std::norm(amp);
  const double captured = out.captured_probability();
  const double model = 1.0 / (4.0 * std::max(c.n_max_spp, 1));
  const double tail_ratio = (1.0 - captured) / model;

  double radial_leak = 0.0;
  for (double q : {0.25, 0.5, 1.5}) {
    const SpinOrbitState f = spp_apply(SpinOrbitState::basis_state({0, 0, Spin::up}), SppSpec{q, 0.0, {}},
                                       c.n_max_spp, c.ell_window, c.quadrature_order);
    for (const auto& [m, amp] : f.coefficients())
      if (m.ell == 0 && m.n_r >= 1) radial_leak += std::norm(amp);
  }
  return {at_most("probability_outside_l1", off_channel, 1e-20), at_least("captured_probability", captured, 0.998),
          in_range("tail_over_model", tail_ratio, 0.5, 2.0), at_most("p_nr_ge1_l0", radial_leak, 1e-20)};
}

// 7. |C_{0,0}| = |sinc(q pi)| for fractional q.
std::vector<AcceptanceCheck> spp_fractional(const RunConfig& c) {
  std::vector<AcceptanceCheck> out;
  for (double q : {0.25, 0.5, 1.5}) {
    const SpinOrbitState f = spp_apply(SpinOrbitState::basis_state({0, 0, Spin::up}), SppSpec{q, 0.0, {}},
                                       c.n_max_spp, c.ell_window, c.quadrature_order);
    const double err = std::abs(std::abs(f.amplitude({0, 0, Spin::up})) - std::abs(specfun::sinc(q * kPi)));
    out.push_back(at_most("abs_err_q" + num(q), err, 1e-10));
  }
  return out;
}

// 8. Wootters route against the pure-state and X-state closed forms.
std::vector<AcceptanceCheck> concurrence_oracles(const RunConfig& c) {
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> g;
  double pure_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    TwoBranchState s{0, {g(rng), g(rng)}, {g(rng), g(rng)}};
    const double norm = std::sqrt(std::norm(s.up) + std::norm(s.down));
    s.up /= norm;
    s.down /= norm;
    Eigen::Vector4cd v;
    v << s.up, 0.0, 0.0, s.down;
    const double wootters = concurrence_mixed(DensityMatrix::pure(two_qubit_basis(0), v));
    pure_err = std::max(pure_err, std::abs(wootters - concurrence_pure(s)));
  }

  const QuadOverlapKernel kernel({0, 0, Spin::up}, c.n_max_quad, config_rule(c));
  double x_err = 0.0;
  for (double r : linear_grid(0.2, 5.0, 0.01)) {
    const DensityMatrix rho = rho_traced(kernel.branches(r));
    x_err = std::max(x_err, std::abs(concurrence_mixed(rho) - x_state_concurrence(rho)));
  }
  return {at_most("max_err_vs_pure", pure_err, 1e-8), at_most("max_err_vs_x_state", x_err, 1e-8)};
}

// 9. Ramsey closed form against quadrature; beta - theta dependence.
std::vector<AcceptanceCheck> ramsey_lattice(const RunConfig& c) {
  const auto rule = config_rule(c);
  double oracle = 0.0, norm = 0.0, shift_num = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (double ratio : {0.5, 1.0, 1.82, 3.0, 6.0}) {
        RamseyConfig rc;
        rc.beta = 2.0 * kPi * i / 10.0;
        rc.theta = 2.0 * kPi * j / 10.0;
        rc.ratio = ratio;
        const RamseyIntensities a = intensities_analytic(rc);
        const RamseyIntensities n = intensities_numeric(rc, rule);
        oracle = std::max({oracle, std::abs(a.up - n.up), std::abs(a.down - n.down)});
        norm = std::max(norm, std::abs(n.up + n.down - 1.0));
        RamseyConfig shifted = rc;
        shifted.beta += 0.7;
        shifted.theta += 0.7;
        shift_num = std::max(shift_num, std::abs(intensities_numeric(shifted, rule).down - n.down));
      }

  RamseyConfig base;
  base.ratio = 1.82;
  base.theta = kPi;
  base.sweep = {SweptAngle::beta, 0.0, 2.0 * kPi, kPi / 50.0};
  RamseyConfig moved = base;
  moved.theta = kPi / 2.0;
  moved.sweep.start -= kPi / 2.0;
  moved.sweep.stop -= kPi / 2.0;
  const SweepTable t1 = fringe_sweep(base);
  const SweepTable t2 = fringe_sweep(moved);
  double shift = t1.rows().size() == t2.rows().size() ? 0.0 : INFINITY;
  for (std::size_t r = 0; r < std::min(t1.rows().size(), t2.rows().size()); ++r)
    for (std::size_t k = 1; k < 3; ++k) shift = std::max(shift, std::abs(t1.rows()[r][k] - t2.rows()[r][k]));

  return {at_most("max_analytic_vs_numeric", oracle, 1e-6), at_most("max_norm_defect", norm, 1e-10),
          at_most("fringe_shift_defect", shift, 1e-12), at_most("numeric_shift_defect", shift_num, 1e-10)};
}

// 10. Three-element composition against the closed exit state.
std::vector<AcceptanceCheck> ramsey_composition(const RunConfig& c) {
  const auto rule = config_rule(c);
  RamseyConfig rc;
  rc.ratio = 1.82;
  rc.beta = 0.0;
  rc.theta = 0.0;
  const double down = intensities_composed(rc, c.n_max_quad, rule).down;
  std::vector<AcceptanceCheck> out{within("I_down_beta0_theta0", down, fringe_amplitude(1.82), 1e-6)};
  double worst = 0.0;
  for (auto [beta, theta] : {std::pair{kPi, 0.0}, {0.0, kPi}, {1.1, 0.4}, {2.5, -0.8}}) {
    rc.beta = beta;
    rc.theta = theta;
    const RamseyIntensities comp = intensities_composed(rc, c.n_max_quad, rule);
    const RamseyIntensities ana = intensities_analytic(rc);
    worst = std::max({worst, std::abs(comp.up - ana.up), std::abs(comp.down - ana.down)});
  }
  out.push_back(at_most("max_composed_vs_closed", worst, 1e-6));
  return out;
}

using Big = boost::multiprecision::cpp_bin_float_50;

Big laguerre_series(int n, double alpha, double x) {
  // sum_k (-1)^k binom(n+alpha, n-k) x^k / k!
  Big sum = 0, term = 1;
  const Big a = alpha, bx = x;
  // k = 0 term: binom(n+alpha, n)
  for (int j = 1; j <= n; ++j) term *= (a + j) / j;
  for (int k = 0; k <= n; ++k) {
    sum += term;
    // binom(n+a, n-k-1) = binom(n+a, n-k) (n-k) / (a+k+1)
    term *= -bx * Big(n - k) / (Big(k + 1) * (a + k + 1));
  }
  return sum;
}

// 11. Special functions and basis orthonormality.
std::vector<AcceptanceCheck> special_functions(const RunConfig& c) {
  double ode = 0.0;
  const double h = 1e-3;
  for (int i = 0; i <= 1000; ++i) {
    const double x = -5.0 + 0.01 * i;
    const double d = (-specfun::dawson(x + 2 * h) + 8 * specfun::dawson(x + h) - 8 * specfun::dawson(x - h) +
                      specfun::dawson(x - 2 * h)) /
                     (12 * h);
    ode = std::max(ode, std::abs(d + 2.0 * x * specfun::dawson(x) - 1.0));
  }

  // Maximum where 1 - 2x F(x) = 0, by bisection.
  double lo = 0.5, hi = 1.5;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (1.0 - 2.0 * mid * specfun::dawson(mid) > 0.0 ? lo : hi) = mid;
  }
  const double xmax = 0.5 * (lo + hi);

  double lag = 0.0;
  for (int n = 0; n <= 30; ++n)
    for (double alpha : {0.0, 0.5, 1.0, 3.0, 6.0})
      for (double x : {0.05, 0.3, 1.7, 4.2, 9.5, 23.0}) {
        const Big ref = laguerre_series(n, alpha, x);
        const double rel = static_cast<double>(boost::multiprecision::abs((specfun::laguerre(n, alpha, x) - ref) / ref));
        lag = std::max(lag, rel);
      }

  const auto rule = config_rule(c);
  double ortho = 0.0;
  for (int ell = -6; ell <= 6; ++ell)
    for (int a = 0; a <= 12; ++a)
      for (int b = a; b <= 12; ++b) {
        const Complex ip = inner_product({a, ell, Spin::up}, {b, ell, Spin::up}, rule);
        ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }

  return {at_most("dawson_ode_residual", ode, 1e-8), within("dawson_argmax", xmax, 0.9241389, 1e-6),
          within("dawson_max", specfun::dawson(xmax), 0.5410443, 1e-6), at_most("laguerre_rel_err", lag, 1e-10),
          at_most("orthonormality_err", ortho, 1e-10)};
}

struct Entry {
  const char* name;
  std::vector<AcceptanceCheck> (*run)(const RunConfig&);
};

constexpr Entry kCriteria[kCriterionCount] = {
    {"traced-concurrence-maximum", traced_maximum},
    {"filtered-concurrences", filtered_concurrences},
    {"design-calculator", design_ratio},
    {"quadrupole-unitarity", unitarity},
    {"quadrupole-selection-rules", selection_rules},
    {"spp-integer-charge", spp_integer},
    {"spp-fractional-charge", spp_fractional},
    {"concurrence-oracles", concurrence_oracles},
    {"ramsey-closed-vs-numeric", ramsey_lattice},
    {"ramsey-composition", ramsey_composition},
    {"special-functions", special_functions},
};

}  // namespace

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  if (id < 1 || id > kCriterionCount) throw ParameterError("acceptance: criterion id outside [1, 11]");
  const Entry& e = kCriteria[id - 1];
  CriterionResult r{id, e.name, {}, 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    r.checks = e.run(config);
  } catch (const std::exception& ex) {
    r.checks = {{std::string("error: ") + ex.what(), NAN, "no exception", false}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const RunConfig& config) {
  config.validate();
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, config));
  return out;
}

std::string format_text_line(const CriterionResult& r) {
  std::string line = (r.pass() ? "PASS " : "FAIL ") + std::string(r.id < 10 ? " " : "") + std::to_string(r.id) + " " +
                     r.name;
  for (const auto& c : r.checks)
    line += "  " + c.label + "=" + num(c.measured) + " [" + c.requirement + "]" + (c.pass ? "" : "!");
  return line;
}

std::string format_json_line(const CriterionResult& r) {
  nlohmann::ordered_json j;
  j["criterion"] = r.id;
  j["name"] = r.name;
  j["status"] = r.pass() ? "pass" : "fail";
  j["seconds"] = r.seconds;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["label"] = c.label;
    if (std::isfinite(c.measured))
      cj["measured"] = c.measured;
    else
      cj["measured"] = num(c.measured);
    cj["requirement"] = c.requirement;
    cj["pass"] = c.pass;
    j["checks"].push_back(cj);
  }
  return j.dump();
}

}  // namespace spinorbit
