#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "spinorbit/config.hpp"
#include "spinorbit/ramsey.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNonConvergence = 2,
  kExitIo = 3,
};

/// Expansions that capture less than this probability are reported as
/// non-converged.
inline constexpr double kCaptureThreshold = 0.95;

struct GridSpec {
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
};

/// Per-figure knobs. Unset grid means the figure's default range.
struct FigureOptions {
  std::optional<GridSpec> grid;
  double ratio = 1.82;  ///< fig 5 only
  double beta = kPi;    ///< fig 5, fixed value when theta is swept
  double theta = kPi;   ///< fig 5, fixed value when beta is swept
  SweptAngle swept = SweptAngle::beta;
};

/// Default grids: fig 1 q in [-2, 2] step 0.01; figs 2-3 ratio in [0.2, 5]
/// step 0.01; fig 4 ratio in [0.2, 5] step 0.005; fig 5 angle in [0, 2 pi]
/// step pi/50. Throws ConvergenceError when the truncated expansion at the
/// strongest coupling on the grid captures less than kCaptureThreshold.
SweepTable figure_table(int figure, const RunConfig& config, const FigureOptions& options = {});

namespace units {
inline double tesla_per_cm_to_si(double v) { return v * 100.0; }
inline double si_to_tesla_per_cm(double v) { return v / 100.0; }
inline double cm_to_si(double v) { return v * 1e-2; }
inline double si_to_cm(double v) { return v / 1e-2; }
inline double nm_to_si(double v) { return v * 1e-9; }
inline double si_to_nm(double v) { return v / 1e-9; }
}  // namespace units

/// Magnet design inputs in laboratory units.
struct DesignInput {
  double gradient_t_per_cm = 13.8;
  double length_cm = 10.0;
  double lambda_nm = 0.271;
  double sigma_nm = 100.0;
};

inline constexpr double kMagnetSurfaceField = 0.7;  ///< T, NdFeB

struct DesignReport {
  DesignInput input;
  double gradient = 0.0;  ///< T/m
  double length = 0.0;    ///< m
  double lambda = 0.0;    ///< m
  double sigma = 0.0;     ///< m
  double velocity = 0.0;  ///< m/s
  double transit_time = 0.0;  ///< s
  double r_c = 0.0;       ///< m
  double ratio = 0.0;
  double conc_eta[3] = {0.0, 0.0, 0.0};
  double p_eta[3] = {0.0, 0.0, 0.0};
  double conc_traced = 0.0;
  double bore_diameter = 0.0;  ///< m, at kMagnetSurfaceField on the pole faces
};

/// Throws ParameterError on nonpositive input.
DesignReport design_report(const DesignInput& input, const RunConfig& config);
void print_design(std::ostream& os, const DesignReport& report);

enum class SweepParam { ratio, q, beta, theta };
SweepParam parse_sweep_param(const std::string& s);
std::string to_string(SweepParam p);

struct SweepRequest {
  SweepParam param = SweepParam::ratio;
  GridSpec grid;
  double ratio = 1.82;  ///< fixed ratio for angle sweeps
  double beta = kPi;
  double theta = kPi;
};

/// ratio: ratio,c_up_n0,c_dn_n0,conc_eta0,conc_eta1,conc_eta2,conc_traced,fringe_amplitude
/// q: the fig 1 columns; beta/theta: the fig 5 columns.
SweepTable sweep_table(const SweepRequest& request, const RunConfig& config);

/// Serializes in config.format to config.output_path, or to `fallback` when
/// the path is empty. The file is written in one piece; failures throw IoError.
void emit_table(const SweepTable& table, const RunConfig& config, std::ostream& fallback);

}  // namespace spinorbit
