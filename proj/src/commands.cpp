#include "spinorbit/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spinorbit/entanglement.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/quadrupole.hpp"
#include "spinorbit/spp.hpp"

namespace spinorbit {

namespace {

std::vector<double> grid_or(const std::optional<GridSpec>& g, GridSpec fallback) {
  const GridSpec s = g.value_or(fallback);
  return linear_grid(s.from, s.to, s.step);
}

void require_positive_ratios(const std::vector<double>& grid) {
  for (double r : grid)
    if (!(r > 0.0)) throw ParameterError("ratio grid values must be positive");
}

// Strongest coupling is the smallest ratio.
void check_quad_convergence(const std::vector<double>& grid, const RunConfig& c) {
  if (grid.empty()) return;
  const double r = *std::min_element(grid.begin(), grid.end());
  const QuadBranches b =
      QuadOverlapKernel({0, 0, Spin::up}, c.n_max_quad, specfun::radial_quadrature(c.quadrature_order)).branches(r);
  double captured = 0.0;
  for (std::size_t n = 0; n < b.same_spin.size(); ++n)
    captured += b.same_spin[n] * b.same_spin[n] + b.flipped[n] * b.flipped[n];
  if (captured < kCaptureThreshold)
    throw ConvergenceError("quadrupole expansion not converged at ratio " + format_number(r), captured,
                           std::max(0.0, 1.0 - captured));
}

// The fractional q farthest from an integer spreads the most probability.
void check_spp_convergence(const std::vector<double>& grid, const RunConfig& c) {
  if (grid.empty()) return;
  double worst = grid.front(), dist = -1.0;
  for (double q : grid) {
    const double d = std::abs(q - std::round(q));
    if (d > dist) {
      dist = d;
      worst = q;
    }
  }
  const SpinOrbitState out = spp_apply(SpinOrbitState::basis_state({0, 0, Spin::up}, c.sigma_perp),
                                       SppSpec{worst, 0.0, {}}, c.n_max_spp, c.ell_window, c.quadrature_order);
  if (out.captured_probability() < kCaptureThreshold)
    throw ConvergenceError("phase-plate expansion not converged at q " + format_number(worst),
                           out.captured_probability(), out.tail_estimate());
}

const std::vector<ModeIndex> kFig1Modes = {
    {0, 0, Spin::up}, {0, 1, Spin::up}, {0, -1, Spin::up}, {1, 1, Spin::up}, {1, -1, Spin::up}};

SweepTable q_table(const std::vector<double>& grid, const RunConfig& c) {
  check_spp_convergence(grid, c);
  return spp_probability_table(grid, kFig1Modes, c.quadrature_order);
}

SweepTable fringe_table(double ratio, double beta, double theta, SweptAngle swept, const GridSpec& g) {
  RamseyConfig rc;
  rc.ratio = ratio;
  rc.beta = beta;
  rc.theta = theta;
  rc.sweep = {swept, g.from, g.to, g.step};
  return fringe_sweep(rc);
}

const GridSpec kAngleGrid{0.0, 2.0 * kPi, kPi / 50.0};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

SweepTable figure_table(int figure, const RunConfig& config, const FigureOptions& options) {
  config.validate();
  SweepTable table;
  switch (figure) {
    case 1:
      table = q_table(grid_or(options.grid, {-2.0, 2.0, 0.01}), config);
      break;
    case 2: {
      const auto grid = grid_or(options.grid, {0.2, 5.0, 0.01});
      require_positive_ratios(grid);
      check_quad_convergence(grid, config);
      table = quad_coefficient_sweep(grid, {0, 1}, config.n_max_quad, config.quadrature_order);
      break;
    }
    case 3:
    case 4: {
      const auto grid = grid_or(options.grid, {0.2, 5.0, figure == 3 ? 0.01 : 0.005});
      require_positive_ratios(grid);
      check_quad_convergence(grid, config);
      ConcurrenceSweep s = concurrence_sweep(grid, {0, 1, 2}, config.n_max_quad, config.quadrature_order);
      table = figure == 3 ? std::move(s.filtered) : std::move(s.traced);
      break;
    }
    case 5:
      table = fringe_table(options.ratio, options.beta, options.theta, options.swept, options.grid.value_or(kAngleGrid));
      break;
    default:
      throw ParameterError("figure number must be 1..5");
  }
  table.set_metadata("figure", static_cast<double>(figure));
  record_config(table, config);
  return table;
}

DesignReport design_report(const DesignInput& in, const RunConfig& config) {
  for (double v : {in.gradient_t_per_cm, in.length_cm, in.lambda_nm, in.sigma_nm})
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError("design: inputs must be positive and finite");
  config.validate();
  DesignReport r;
  r.input = in;
  r.gradient = units::tesla_per_cm_to_si(in.gradient_t_per_cm);
  r.length = units::cm_to_si(in.length_cm);
  r.lambda = units::nm_to_si(in.lambda_nm);
  r.sigma = units::nm_to_si(in.sigma_nm);
  r.velocity = neutron_velocity(r.lambda, config.constants);
  r.transit_time = r.length / r.velocity;
  r.r_c = rc_from_physical(r.gradient, r.length, r.lambda, config.constants);
  r.ratio = r.r_c / r.sigma;
  r.bore_diameter = 2.0 * kMagnetSurfaceField / r.gradient;

  const int n_max = std::max(config.n_max_quad, 2);
  const QuadBranches b =
      QuadOverlapKernel({0, 0, Spin::up}, n_max, specfun::radial_quadrature(config.quadrature_order)).branches(r.ratio);
  for (int eta = 0; eta < 3; ++eta) {
    const FilteredState f = filter_radial(b, eta);
    r.conc_eta[eta] = concurrence_pure(f);
    r.p_eta[eta] = f.p_eta;
  }
  r.conc_traced = concurrence_mixed(rho_traced(b));
  return r;
}

void print_design(std::ostream& os, const DesignReport& r) {
  os << "gradient        " << fixed(r.input.gradient_t_per_cm, 4) << " T/cm  (" << sci(r.gradient) << " T/m)\n"
     << "length          " << fixed(r.input.length_cm, 4) << " cm  (" << sci(r.length) << " m)\n"
     << "wavelength      " << fixed(r.input.lambda_nm, 4) << " nm  (" << sci(r.lambda) << " m)\n"
     << "sigma_perp      " << fixed(r.input.sigma_nm, 4) << " nm  (" << sci(r.sigma) << " m)\n"
     << "v_z             " << fixed(r.velocity, 3) << " m/s\n"
     << "t_Q             " << sci(r.transit_time) << " s\n"
     << "r_c             " << fixed(units::si_to_nm(r.r_c), 3) << " nm  (" << sci(r.r_c) << " m)\n"
     << "r_c/sigma_perp  " << fixed(r.ratio, 4) << "\n";
  for (int eta = 0; eta < 3; ++eta)
    os << "conc_eta" << eta << "       " << fixed(r.conc_eta[eta], 6) << "  (p_eta" << eta << " "
       << fixed(r.p_eta[eta], 6) << ")\n";
  os << "conc_traced     " << fixed(r.conc_traced, 6) << "\n"
     << "bore_diameter   " << fixed(r.bore_diameter * 1e3, 3) << " mm  (" << fixed(kMagnetSurfaceField, 1)
     << " T pole field)\n";
}

SweepParam parse_sweep_param(const std::string& s) {
  if (s == "ratio") return SweepParam::ratio;
  if (s == "q") return SweepParam::q;
  if (s == "beta") return SweepParam::beta;
  if (s == "theta") return SweepParam::theta;
  throw ParameterError("sweep parameter must be ratio, q, beta or theta");
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::ratio:
      return "ratio";
    case SweepParam::q:
      return "q";
    case SweepParam::beta:
      return "beta";
    case SweepParam::theta:
      return "theta";
  }
  return "";
}

SweepTable sweep_table(const SweepRequest& req, const RunConfig& config) {
  config.validate();
  SweepTable table;
  switch (req.param) {
    case SweepParam::ratio: {
      const auto grid = linear_grid(req.grid.from, req.grid.to, req.grid.step);
      require_positive_ratios(grid);
      check_quad_convergence(grid, config);
      const int n_max = std::max(config.n_max_quad, 2);
      const QuadOverlapKernel kernel({0, 0, Spin::up}, n_max, specfun::radial_quadrature(config.quadrature_order));
      table = SweepTable({"ratio", "c_up_n0", "c_dn_n0", "conc_eta0", "conc_eta1", "conc_eta2", "conc_traced",
                          "fringe_amplitude"});
      for (double r : grid) {
        const QuadBranches b = kernel.branches(r);
        table.add_row({r, b.same_spin[0], b.flipped[0], concurrence_pure(filter_radial(b, 0)),
                       concurrence_pure(filter_radial(b, 1)), concurrence_pure(filter_radial(b, 2)),
                       concurrence_mixed(rho_traced(b)), fringe_amplitude(r)});
      }
      break;
    }
    case SweepParam::q:
      table = q_table(linear_grid(req.grid.from, req.grid.to, req.grid.step), config);
      break;
    case SweepParam::beta:
    case SweepParam::theta:
      table = fringe_table(req.ratio, req.beta, req.theta,
                           req.param == SweepParam::beta ? SweptAngle::beta : SweptAngle::theta, req.grid);
      break;
  }
  table.set_metadata("sweep", to_string(req.param));
  record_config(table, config);
  return table;
}

void emit_table(const SweepTable& table, const RunConfig& config, std::ostream& fallback) {
  std::ostringstream buf;
  if (config.format == OutputFormat::csv)
    write_csv(buf, table);
  else
    write_jsonl(buf, table);

  if (config.output_path.empty()) {
    fallback << buf.str();
    fallback.flush();
    if (!fallback) throw IoError("failed writing output stream");
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + config.output_path + " for writing");
  out << buf.str();
  out.close();
  if (!out) throw IoError("failed writing " + config.output_path);
}

}  // namespace spinorbit
