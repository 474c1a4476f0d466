#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinorbit/config.hpp"

namespace spinorbit {

/// One measured quantity and the bound it is held to.
struct AcceptanceCheck {
  std::string label;
  double measured = 0.0;
  std::string requirement;  ///< e.g. "0.97 +/- 0.01" or "<= 1e-06"
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<AcceptanceCheck> checks;
  double seconds = 0.0;

  bool pass() const;
};

/// Runs the numbered acceptance criteria with the numerical settings of
/// `config`. Exceptions inside a criterion are reported as a failed check.
std::vector<CriterionResult> run_acceptance(const RunConfig& config);

/// Single criterion by id (1..11).
CriterionResult run_criterion(int id, const RunConfig& config);

inline constexpr int kCriterionCount = 11;

/// `PASS  3 design-calculator  ratio=1.8135 [1.82 +/- 2%] ...`
std::string format_text_line(const CriterionResult& r);
/// One JSON object per criterion.
std::string format_json_line(const CriterionResult& r);

}  // namespace spinorbit
