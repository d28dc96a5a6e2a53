#include "psisolve/signchange.hpp"

#include <algorithm>
#include <cmath>

namespace psisolve {

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::BadOptions, "tolerance must be positive");
  }
  if (!(initial_step > 0.0)) {
    throw Error(ErrorCode::BadOptions, "initial-step must be positive");
  }
  if (scan_points < 16) {
    throw Error(ErrorCode::BadOptions, "scan-points must be at least 16");
  }
  if (max_expansions < 1) {
    throw Error(ErrorCode::BadOptions, "max-expansions must be at least 1");
  }
  if (zero_threshold < 0.0) {
    throw Error(ErrorCode::BadOptions, "zero-threshold must be nonnegative");
  }
}

std::vector<double> probe_grid(const OpenInterval& domain,
                               const SolverOptions& opts) {
  opts.validate();
  const double step = opts.initial_step;
  const int expansions = std::min(opts.max_expansions, 500);

  // Core window: the domain itself when bounded, otherwise a data-scale
  // window around a reference point near the finite side (or 0).
  double lo_w, hi_w;
  if (domain.bounded_below() && domain.bounded_above()) {
    lo_w = *domain.lower();
    hi_w = *domain.upper();
  } else if (domain.bounded_below()) {
    lo_w = *domain.lower();
    hi_w = lo_w + step * 64.0;
  } else if (domain.bounded_above()) {
    hi_w = *domain.upper();
    lo_w = hi_w - step * 64.0;
  } else {
    lo_w = -step * 64.0;
    hi_w = step * 64.0;
  }

  std::vector<double> probes;
  probes.reserve(std::size_t(opts.scan_points) + 2 * std::size_t(expansions) +
                 128);

  const int n = opts.scan_points;
  for (int i = 1; i <= n; ++i) {
    probes.push_back(lo_w + (hi_w - lo_w) * double(i) / double(n + 1));
  }

  const double span = hi_w - lo_w;
  if (domain.bounded_below()) {
    for (int k = 2; k <= 52; ++k) {
      probes.push_back(*domain.lower() + std::ldexp(span, -k));
    }
  } else {
    for (int k = 0; k <= expansions; ++k) {
      probes.push_back(lo_w - std::ldexp(step, k));
    }
  }
  if (domain.bounded_above()) {
    for (int k = 2; k <= 52; ++k) {
      probes.push_back(*domain.upper() - std::ldexp(span, -k));
    }
  } else {
    for (int k = 0; k <= expansions; ++k) {
      probes.push_back(hi_w + std::ldexp(step, k));
    }
  }

  std::erase_if(probes, [&](double t) { return !domain.contains(t); });
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  return probes;
}

namespace {

struct Scan {
  std::vector<double> t;
  std::vector<double> v;
};

Scan evaluate_scan(const RealFunction& f, const OpenInterval& domain,
                   const SolverOptions& opts) {
  Scan scan;
  scan.t = probe_grid(domain, opts);
  scan.v.reserve(scan.t.size());
  for (double t : scan.t) scan.v.push_back(f(t));
  return scan;
}

BracketResult bracket_from_scan(const Scan& scan) {
  const auto& t = scan.t;
  const auto& v = scan.v;
  std::ptrdiff_t last_pos = -1;
  for (std::ptrdiff_t i = std::ptrdiff_t(v.size()) - 1; i >= 0; --i) {
    if (v[std::size_t(i)] > 0.0) {
      last_pos = i;
      break;
    }
  }
  if (last_pos < 0) {
    return BracketError{BracketFailure::NoPositiveValueFound,
                        {t.front(), t.back()}};
  }
  for (std::size_t i = std::size_t(last_pos) + 1; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      return std::make_pair(t[std::size_t(last_pos)], t[i]);
    }
  }
  return BracketError{BracketFailure::NoNegativeValueFound,
                      {t.front(), t.back()}};
}

// Bisection on [a, b] with f(a) > 0, f(b) < 0, treating encountered zeros
// by locating the extent of the zero set and re-testing signs just outside.
SignChangeOutcome bisect(const RealFunction& f, double a, double b,
                         const SolverOptions& opts) {
  const double zt = opts.zero_threshold;
  double left = a;    // invariant: f(left) > 0
  double right = b;   // invariant: f(right) < 0

  auto resolve_zero = [&](double zmid) -> SignChangeOutcome {
    // Boundary between the positive region and the zero set.
    const double res = opts.tolerance / 1024.0;
    double pl = left, zl = zmid;
    while (zl - pl > res && pl < zl) {
      double m = 0.5 * (pl + zl);
      if (m <= pl || m >= zl) break;
      if (f(m) > zt) pl = m; else zl = m;
    }
    // Boundary between the zero set and the negative region.
    double zr = zmid, nr = right;
    while (nr - zr > res && zr < nr) {
      double m = 0.5 * (zr + nr);
      if (m <= zr || m >= nr) break;
      if (f(m) < -zt) nr = m; else zr = m;
    }
    if (zr - zl > opts.tolerance) {
      return SignChangeOutcome::zero_plateau(zl, zr);
    }
    // Sub-tolerance zero set: indistinguishable from a single point.
    return SignChangeOutcome::point(0.5 * (zl + zr), {pl, nr});
  };

  while (right - left > opts.tolerance) {
    double mid = 0.5 * (left + right);
    if (mid <= left || mid >= right) break;  // hit float resolution
    double v = f(mid);
    if (v > zt) {
      left = mid;
    } else if (v < -zt) {
      right = mid;
    } else {
      return resolve_zero(mid);
    }
  }
  return SignChangeOutcome::point(0.5 * (left + right), {left, right});
}

}  // namespace

BracketResult bracket(const RealFunction& f, const OpenInterval& domain,
                      const SolverOptions& opts) {
  return bracket_from_scan(evaluate_scan(f, domain, opts));
}

SignChangeOutcome find_sign_change(const RealFunction& f,
                                   const OpenInterval& domain,
                                   const SolverOptions& opts) {
  opts.validate();

  if (opts.seed_bracket) {
    auto [a, b] = *opts.seed_bracket;
    if (a < b && domain.contains(a) && domain.contains(b) && f(a) > 0.0 &&
        f(b) < 0.0) {
      return bisect(f, a, b, opts);
    }
  }

  Scan scan = evaluate_scan(f, domain, opts);

  // Increasing-type evidence: some s < t with f(s) < 0 < f(t).
  std::ptrdiff_t first_neg = -1;
  for (std::size_t i = 0; i < scan.v.size(); ++i) {
    if (first_neg < 0) {
      if (scan.v[i] < 0.0) first_neg = std::ptrdiff_t(i);
    } else if (scan.v[i] > 0.0) {
      return SignChangeOutcome::not_decreasing_type(
          {{scan.t[std::size_t(first_neg)], scan.v[std::size_t(first_neg)]},
           {scan.t[i], scan.v[i]}});
    }
  }

  BracketResult br = bracket_from_scan(scan);
  if (auto* err = std::get_if<BracketError>(&br)) {
    bool all_zero = std::all_of(scan.v.begin(), scan.v.end(), [&](double v) {
      return std::abs(v) <= opts.zero_threshold;
    });
    if (all_zero) {
      return SignChangeOutcome::zero_plateau(scan.t.front(), scan.t.back());
    }
    return SignChangeOutcome::no_flip(
        {{err->scanned_range.first, scan.v.front()},
         {err->scanned_range.second, scan.v.back()}});
  }

  auto [a, b] = std::get<std::pair<double, double>>(br);
  return bisect(f, a, b, opts);
}

}  // namespace psisolve
