#pragma once

#include <functional>
#include <optional>

#include "psisolve/core.hpp"
#include "psisolve/signchange.hpp"

namespace psisolve {

/// Convex hull of a function's range, as extended reals (nullopt = infinite
/// in that direction).
struct RangeHull {
  std::optional<double> lower;  // nullopt: -infinity
  std::optional<double> upper;  // nullopt: +infinity
};

/// A strictly increasing, possibly discontinuous function on an open
/// interval. Strict increase is spot-checked on a 256-point grid at
/// construction; detected violations throw NotIncreasing.
class MonotoneFunction {
 public:
  MonotoneFunction(RealFunction evaluate, OpenInterval domain,
                   std::optional<RealFunction> analytic_inverse = {},
                   std::optional<RangeHull> analytic_hull = {});

  double operator()(double t) const { return evaluate_(t); }
  const OpenInterval& domain() const noexcept { return domain_; }
  const std::optional<RealFunction>& analytic_inverse() const noexcept {
    return analytic_inverse_;
  }
  const std::optional<RangeHull>& analytic_hull() const noexcept {
    return analytic_hull_;
  }

 private:
  RealFunction evaluate_;
  OpenInterval domain_;
  std::optional<RealFunction> analytic_inverse_;
  std::optional<RangeHull> analytic_hull_;
};

/// Endpoint limits of f over its domain, estimated along sequences
/// approaching the endpoints (the analytic hull is used when provided).
RangeHull range_hull(const MonotoneFunction& f, const SolverOptions& opts = {});

/// g(y) = sup{u in domain : f(u) <= y} on conv(f(domain)). Computed by the
/// analytic inverse when available, else by monotone bisection on the
/// predicate f(u) <= y. Throws OutOfHull for y outside the hull.
double generalized_left_inverse(const MonotoneFunction& f, double y,
                                const SolverOptions& opts = {});

}  // namespace psisolve
