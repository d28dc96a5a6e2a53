#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "psisolve/core.hpp"

namespace psisolve {

using RealFunction = std::function<double(double)>;

struct SolverOptions {
  double tolerance = 1e-10;      // target bracket width
  double initial_step = 1.0;     // seed for geometric expansion
  int max_expansions = 200;      // doubling cap toward unbounded endpoints
  int scan_points = 4096;        // grid size for plateau / flip detection
  double zero_threshold = 1e-13; // |f| at or below counts as zero

  // Optional warm start: if (a,b) straddles the sign change (f(a) > 0,
  // f(b) < 0), the scan phase is skipped.
  std::optional<std::pair<double, double>> seed_bracket;

  void validate() const;
};

enum class BracketFailure { NoPositiveValueFound, NoNegativeValueFound };

struct BracketError {
  BracketFailure reason;
  std::pair<double, double> scanned_range;
};

using BracketResult = std::variant<std::pair<double, double>, BracketError>;

/// Probe points covering `domain`: a uniform core grid, geometric expansion
/// toward unbounded endpoints, and geometric approach toward bounded ones.
/// Sorted, deduplicated, all strictly inside the domain.
std::vector<double> probe_grid(const OpenInterval& domain,
                               const SolverOptions& opts);

/// Search for (a, b) with a < b, f(a) > 0, f(b) < 0.
BracketResult bracket(const RealFunction& f, const OpenInterval& domain,
                      const SolverOptions& opts);

/// Locate the point of sign change of decreasing type for f on `domain`,
/// tolerating jump discontinuities and flat segments. Failures are data.
SignChangeOutcome find_sign_change(const RealFunction& f,
                                   const OpenInterval& domain,
                                   const SolverOptions& opts = {});

}  // namespace psisolve
