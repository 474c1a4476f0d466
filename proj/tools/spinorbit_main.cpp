// spinorbit: figure sweeps, magnet design and acceptance checks.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <set>

#include "spinorbit/acceptance.hpp"
#include "spinorbit/commands.hpp"
#include "spinorbit/config.hpp"
#include "spinorbit/errors.hpp"

using namespace spinorbit;

namespace {

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> quadrature_order;
  std::optional<int> n_max_spp;
  std::optional<int> n_max_quad;
  std::optional<int> ell_window;
  std::optional<double> sigma_perp;
};

RunConfig resolve_config(const Overrides& o) {
  RunConfig c;
  if (o.config_path)
    c = load_config_file(*o.config_path);
  else if (auto env = default_config_path())
    c = load_config_file(*env);
  if (o.out) c.output_path = *o.out;
  if (o.format) c.format = parse_format(*o.format);
  if (o.quadrature_order) c.quadrature_order = *o.quadrature_order;
  if (o.n_max_spp) c.n_max_spp = *o.n_max_spp;
  if (o.n_max_quad) c.n_max_quad = *o.n_max_quad;
  if (o.ell_window) c.ell_window = *o.ell_window;
  if (o.sigma_perp) c.sigma_perp = *o.sigma_perp;
  c.validate();
  return c;
}

std::optional<GridSpec> grid_from(const std::optional<double>& from, const std::optional<double>& to,
                                  const std::optional<double>& step) {
  if (!from && !to && !step) return std::nullopt;
  if (!from || !to || !step) throw ParameterError("--from, --to and --step must be given together");
  return GridSpec{*from, *to, *step};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-orbit state simulator for neutron wavepackets"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "key=value config file (default: $SPINORBIT_CONFIG)");
  app.add_option("--out", o.out, "output file (default: stdout)");
  app.add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--quadrature-order", o.quadrature_order, "radial quadrature nodes");
  app.add_option("--n-max-spp", o.n_max_spp, "phase-plate radial truncation");
  app.add_option("--n-max-quad", o.n_max_quad, "quadrupole radial truncation");
  app.add_option("--ell-window", o.ell_window, "phase-plate ell half-window");
  app.add_option("--sigma-perp", o.sigma_perp, "transverse coherence length, m");

  std::optional<double> from, to, step;

  auto* fig = app.add_subcommand("fig", "reproduce a figure sweep as CSV");
  int figure = 0;
  FigureOptions fig_opts;
  std::string swept = "beta";
  fig->add_option("n", figure, "figure number")->required()->check(CLI::Range(1, 5));
  fig->add_option("--theta", fig_opts.theta, "second quadrupole rotation (fig 5)");
  fig->add_option("--beta", fig_opts.beta, "solenoid phase when theta is swept (fig 5)");
  fig->add_option("--ratio", fig_opts.ratio, "r_c/sigma_perp (fig 5)");
  fig->add_option("--sweep", swept, "swept angle (fig 5)")->check(CLI::IsMember({"beta", "theta"}));
  fig->add_option("--from", from, "grid start");
  fig->add_option("--to", to, "grid end");
  fig->add_option("--step", step, "grid step");

  auto* design = app.add_subcommand("design", "magnet design calculator");
  DesignInput din;
  design->add_option("--gradient", din.gradient_t_per_cm, "field gradient, T/cm")->capture_default_str();
  design->add_option("--length", din.length_cm, "quadrupole length, cm")->capture_default_str();
  design->add_option("--lambda", din.lambda_nm, "neutron wavelength, nm")->capture_default_str();
  design->add_option("--sigma", din.sigma_nm, "transverse coherence length, nm")->capture_default_str();

  auto* check = app.add_subcommand("check", "run the acceptance criteria");
  std::vector<int> only;
  check->add_option("--criteria", only, "subset of criterion ids")->delimiter(',')->check(CLI::Range(1, 11));

  auto* sweep = app.add_subcommand("sweep", "generic one-parameter sweep");
  SweepRequest req;
  std::string param;
  sweep->add_option("--param", param, "ratio, q, beta or theta")
      ->required()
      ->check(CLI::IsMember({"ratio", "q", "beta", "theta"}));
  sweep->add_option("--from", req.grid.from, "grid start")->required();
  sweep->add_option("--to", req.grid.to, "grid end")->required();
  sweep->add_option("--step", req.grid.step, "grid step")->required();
  sweep->add_option("--ratio", req.ratio, "fixed r_c/sigma_perp for angle sweeps");
  sweep->add_option("--beta", req.beta, "fixed beta for theta sweeps");
  sweep->add_option("--theta", req.theta, "fixed theta for beta sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig config = resolve_config(o);
    if (fig->parsed()) {
      fig_opts.grid = grid_from(from, to, step);
      fig_opts.swept = swept == "theta" ? SweptAngle::theta : SweptAngle::beta;
      emit_table(figure_table(figure, config, fig_opts), config, std::cout);
    } else if (design->parsed()) {
      print_design(std::cout, design_report(din, config));
    } else if (check->parsed()) {
      const std::set<int> subset(only.begin(), only.end());
      bool all = true;
      for (int id = 1; id <= kCriterionCount; ++id) {
        if (!subset.empty() && !subset.count(id)) continue;
        const CriterionResult r = run_criterion(id, config);
        std::cout << format_json_line(r) << '\n' << std::flush;
        all = all && r.pass();
      }
      return all ? kExitOk : kExitNonConvergence;
    } else if (sweep->parsed()) {
      req.param = parse_sweep_param(param);
      emit_table(sweep_table(req, config), config, std::cout);
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n'
              << "tail-report: captured=" << format_number(e.captured()) << " tail=" << format_number(e.tail())
              << '\n';
    return kExitNonConvergence;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
