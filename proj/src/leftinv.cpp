#include "psisolve/leftinv.hpp"

#include <cmath>

namespace psisolve {

namespace {

SolverOptions grid_options(const SolverOptions& opts, int points) {
  SolverOptions g = opts;
  g.scan_points = points;
  // Far enough to separate bounded from unbounded ranges without
  // overflowing typical callables.
  g.max_expansions = std::min(g.max_expansions, 120);
  g.seed_bracket.reset();
  return g;
}

constexpr double kDivergenceThreshold = 1e15;

}  // namespace

MonotoneFunction::MonotoneFunction(RealFunction evaluate, OpenInterval domain,
                                   std::optional<RealFunction> analytic_inverse,
                                   std::optional<RangeHull> analytic_hull)
    : evaluate_(std::move(evaluate)),
      domain_(std::move(domain)),
      analytic_inverse_(std::move(analytic_inverse)),
      analytic_hull_(std::move(analytic_hull)) {
  // Increase spot check on 256 points. Non-finite values (overflow near
  // unbounded endpoints) are skipped, and exact ties are tolerated because
  // strictly increasing functions saturate in floating point far from the
  // origin; this certifies nothing beyond the grid, construction only
  // rejects detected decreases.
  SolverOptions opts;
  std::vector<double> grid = probe_grid(domain_, grid_options(opts, 256));
  bool have_prev = false;
  double prev_t = 0.0, prev_v = 0.0;
  for (double t : grid) {
    double v = evaluate_(t);
    if (!std::isfinite(v)) continue;
    if (have_prev && prev_v - v > 1e-12 * std::max(1.0, std::abs(prev_v))) {
      throw Error(ErrorCode::NotIncreasing,
                  "monotonicity spot-check failed between t=" +
                      std::to_string(prev_t) + " and t=" + std::to_string(t));
    }
    have_prev = true;
    prev_t = t;
    prev_v = v;
  }
}

RangeHull range_hull(const MonotoneFunction& f, const SolverOptions& opts) {
  if (f.analytic_hull()) return *f.analytic_hull();

  const OpenInterval& dom = f.domain();
  const double step = opts.initial_step;

  // f is increasing, so the endpoint limits exist in the extended reals;
  // follow a geometric sequence toward each endpoint and keep the last
  // finite value, declaring the limit infinite past a divergence threshold.
  auto limit_toward = [&](bool upper_end) -> std::optional<double> {
    const auto& bound = upper_end ? dom.upper() : dom.lower();
    double last = 0.0;
    bool have = false;
    if (bound) {
      double anchor =
          upper_end ? (dom.bounded_below() ? *dom.lower() : *bound - 64.0 * step)
                    : (dom.bounded_above() ? *dom.upper() : *bound + 64.0 * step);
      double span = std::abs(*bound - anchor);
      for (int k = 2; k <= 52; ++k) {
        double t = upper_end ? *bound - std::ldexp(span, -k)
                             : *bound + std::ldexp(span, -k);
        if (!dom.contains(t)) continue;
        double v = f(t);
        if (!std::isfinite(v)) return std::nullopt;
        last = v;
        have = true;
      }
    } else {
      double anchor = upper_end ? (dom.bounded_below() ? *dom.lower() : 0.0)
                                : (dom.bounded_above() ? *dom.upper() : 0.0);
      for (int k = 0; k <= std::min(opts.max_expansions, 120); ++k) {
        double t = anchor + (upper_end ? std::ldexp(step, k)
                                       : -std::ldexp(step, k));
        if (!dom.contains(t)) continue;
        double v = f(t);
        if (!std::isfinite(v) || std::abs(v) > kDivergenceThreshold) {
          return std::nullopt;
        }
        last = v;
        have = true;
      }
    }
    if (!have) return std::nullopt;
    return last;
  };

  return RangeHull{limit_toward(false), limit_toward(true)};
}

double generalized_left_inverse(const MonotoneFunction& f, double y,
                                const SolverOptions& opts) {
  opts.validate();
  if (std::isnan(y)) throw Error(ErrorCode::NaNInput, "y is NaN");

  RangeHull hull = range_hull(f, opts);
  // The hull is open at finite endpoints: the sup there may not lie in the
  // domain, so endpoint values are rejected.
  if (hull.lower && y <= *hull.lower) {
    throw Error(ErrorCode::OutOfHull,
                "y=" + std::to_string(y) + " at or below hull infimum");
  }
  if (hull.upper && y >= *hull.upper) {
    throw Error(ErrorCode::OutOfHull,
                "y=" + std::to_string(y) + " at or above hull supremum");
  }

  if (f.analytic_inverse()) return (*f.analytic_inverse())(y);

  std::vector<double> grid =
      probe_grid(f.domain(), grid_options(opts, std::max(opts.scan_points, 64)));
  // a: largest probe with f(a) <= y; b: smallest probe with f(b) > y.
  std::optional<double> a, b;
  for (double t : grid) {
    double v = f(t);
    if (std::isnan(v)) continue;
    if (v <= y) {
      a = t;
    } else {
      b = t;
      break;
    }
  }
  if (!a) {
    throw Error(ErrorCode::OutOfHull, "no probe satisfies f(u) <= y");
  }
  if (!b) {
    throw Error(ErrorCode::OutOfHull, "no probe satisfies f(u) > y");
  }

  double lo = *a, hi = *b;
  while (hi - lo > opts.tolerance) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) <= y) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace psisolve
