#include "psisolve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace psisolve {

namespace {

// Strictness on a grid needs a declared float margin.
double strict_margin(double scale) {
  return 1e-13 * std::max(1.0, std::abs(scale));
}

std::vector<double> check_grid(const OpenInterval& domain, int grid_count) {
  if (grid_count < 16) {
    throw Error(ErrorCode::BadOptions, "grid-count must be at least 16");
  }
  if (domain.bounded_below() && domain.bounded_above()) {
    std::vector<double> grid;
    grid.reserve(std::size_t(grid_count));
    double lo = *domain.lower(), hi = *domain.upper();
    for (int i = 1; i <= grid_count; ++i) {
      grid.push_back(lo + (hi - lo) * double(i) / double(grid_count + 1));
    }
    return grid;
  }
  SolverOptions opts;
  opts.scan_points = grid_count;
  return probe_grid(domain, opts);
}

GridInfo describe_grid(const std::vector<double>& grid) {
  GridInfo info;
  info.lo = grid.front();
  info.hi = grid.back();
  info.count = int(grid.size());
  std::ostringstream os;
  os << info.count << " points on [" << info.lo << ", " << info.hi << "]";
  info.description = os.str();
  return info;
}

}  // namespace

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::HoldsOnGrid: return "holds-on-grid";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

RatioFunction::RatioFunction(PsiFamily family, double x, double y)
    : family_(std::move(family)),
      x_(x),
      y_(y),
      domain_(OpenInterval::whole()) {
  double tx = theta1(family_, x_);
  double ty = theta1(family_, y_);
  if (!(tx < ty)) {
    throw Error(ErrorCode::Theta1Order,
                "theta1(x) must be strictly below theta1(y)");
  }
  domain_ = OpenInterval::bounded(tx, ty);
}

double RatioFunction::operator()(double t) const {
  return -family_.psi(x_, t) / family_.psi(y_, t);
}

double RatioFunction::variant(double t) const {
  double px = family_.psi(x_, t);
  return px / (px - family_.psi(y_, t));
}

PropertyReport check_level_of_increase(const RealFunction& f,
                                       const OpenInterval& domain, double y,
                                       int grid_count) {
  std::vector<double> grid = check_grid(domain, grid_count);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

  PropertyReport report;
  report.property_id = "level-of-increase(y=" + std::to_string(y) + ")";
  report.grid = describe_grid(grid);

  // A violation is u < v with y <= f(u) and y >= f(v); scanning from the
  // first u with f(u) >= y suffices.
  std::ptrdiff_t first_u = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (first_u < 0) {
      if (values[i] >= y) first_u = std::ptrdiff_t(i);
      continue;
    }
    if (values[i] <= y) {
      report.verdict = Verdict::Violated;
      report.witnesses = {{grid[std::size_t(first_u)], grid[i]}};
      report.margin = std::min(values[std::size_t(first_u)] - y,
                               y - values[i]);
      report.note = "f(u) >= y >= f(v) with u < v";
      if (report.margin < 1e-12) {
        report.note += " (boundary equality on the grid)";
      }
      return report;
    }
  }

  report.verdict = Verdict::HoldsOnGrid;
  double vmin = *std::min_element(values.begin(), values.end());
  double vmax = *std::max_element(values.begin(), values.end());
  if (y < vmin) {
    report.note = "case (i): y below f on the grid";
    report.margin = vmin - y;
  } else if (y > vmax) {
    report.note = "case (ii): y above f on the grid";
    report.margin = y - vmax;
  } else {
    report.note = "case (iii): y - f changes sign on the grid";
    double m = std::numeric_limits<double>::infinity();
    if (first_u >= 0) {
      for (std::size_t i = std::size_t(first_u) + 1; i < values.size(); ++i) {
        m = std::min(m, values[i] - y);
      }
    }
    report.margin = std::isfinite(m) ? m : 0.0;
  }
  return report;
}

PropertyReport check_eps_increasing(const RealFunction& f,
                                    const OpenInterval& domain, double eps,
                                    bool strict, int grid_count) {
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::BadOptions, "epsilon must be positive");
  }
  std::vector<double> grid = check_grid(domain, grid_count);

  PropertyReport report;
  report.property_id = std::string(strict ? "strict-" : "") +
                       "eps-increasing(eps=" + std::to_string(eps) + ")";
  report.grid = describe_grid(grid);

  // Worst drop max_{u<v} (f(u) - f(v)) via a running prefix max.
  double pref_max = -std::numeric_limits<double>::infinity();
  double pref_arg = grid.front();
  double worst = -std::numeric_limits<double>::infinity();
  std::pair<double, double> worst_pair{grid.front(), grid.front()};
  for (double t : grid) {
    double v = f(t);
    if (!std::isfinite(v)) continue;
    if (pref_max > -std::numeric_limits<double>::infinity()) {
      double drop = pref_max - v;
      if (drop > worst) {
        worst = drop;
        worst_pair = {pref_arg, t};
      }
    }
    if (v > pref_max) {
      pref_max = v;
      pref_arg = t;
    }
  }

  double bar = strict ? eps - strict_margin(pref_max) : eps;
  if (worst >= bar && (strict || worst > eps)) {
    report.verdict = Verdict::Violated;
    report.witnesses = {worst_pair};
    report.margin = worst - eps;
    report.note = "f(u) exceeds f(v) + eps for u < v";
  } else {
    report.verdict = Verdict::HoldsOnGrid;
    report.margin = eps - worst;
    report.note = "worst grid drop " + std::to_string(worst);
  }
  return report;
}

namespace {

PropertyReport monotone_report(const std::string& id,
                               const std::vector<double>& grid,
                               const std::vector<double>& values,
                               bool strict) {
  PropertyReport report;
  report.property_id = id;
  report.grid = describe_grid(grid);

  double pref_max = -std::numeric_limits<double>::infinity();
  double pref_arg = grid.front();
  double min_slack = std::numeric_limits<double>::infinity();
  std::pair<double, double> worst_pair{grid.front(), grid.front()};
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = values[i];
    if (!std::isfinite(v)) continue;
    scale = std::max(scale, std::abs(v));
    if (pref_max > -std::numeric_limits<double>::infinity()) {
      double slack = v - pref_max;
      if (slack < min_slack) {
        min_slack = slack;
        worst_pair = {pref_arg, grid[i]};
      }
    }
    if (v > pref_max) {
      pref_max = v;
      pref_arg = grid[i];
    }
  }

  double m = strict_margin(scale);
  bool holds = strict ? (min_slack > m) : (min_slack >= -m);
  report.margin = min_slack;
  if (holds) {
    report.verdict = Verdict::HoldsOnGrid;
    report.note = std::string("grid ") +
                  (strict ? "strictly increasing" : "increasing") +
                  ", strictness margin " + std::to_string(m);
  } else {
    report.verdict = Verdict::Violated;
    report.witnesses = {worst_pair};
    report.note = "non-increasing pair on the grid";
  }
  return report;
}

}  // namespace

PropertyReport check_ratio_monotone(const PsiFamily& family, double x,
                                    double y, int grid_count, bool strict) {
  RatioFunction ratio(family, x, y);
  std::vector<double> grid = check_grid(ratio.domain(), grid_count);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = ratio(grid[i]);
  return monotone_report("ratio-monotone(" + family.id + ")", grid, values,
                         strict);
}

PropertyReport check_levels_for_Tn(const PsiFamily& family, double x, double y,
                                   int n, int grid_count) {
  if (n < 2) throw Error(ErrorCode::BadOptions, "n must be at least 2");
  RatioFunction ratio(family, x, y);
  RealFunction f = [&ratio](double t) { return ratio(t); };

  PropertyReport aggregate;
  aggregate.property_id =
      "levels-for-Tn(" + family.id + ", n=" + std::to_string(n) + ")";
  aggregate.verdict = Verdict::HoldsOnGrid;
  aggregate.margin = std::numeric_limits<double>::infinity();
  std::ostringstream note;
  for (int k = 1; k <= n - 1; ++k) {
    double level = double(k) / double(n - k);
    PropertyReport r =
        check_level_of_increase(f, ratio.domain(), level, grid_count);
    aggregate.grid = r.grid;
    aggregate.margin = std::min(aggregate.margin, r.margin);
    note << "k=" << k << " level=" << level << ": " << verdict_name(r.verdict)
         << "; ";
    if (r.verdict == Verdict::Violated &&
        aggregate.verdict != Verdict::Violated) {
      aggregate.verdict = Verdict::Violated;
      aggregate.witnesses = r.witnesses;
    }
  }
  aggregate.note = note.str();
  return aggregate;
}

PropertyReport check_Tn_lambda(const PsiFamily& family,
                               const std::vector<WeightedSample>& corpus,
                               const SolverOptions& opts) {
  if (corpus.empty()) {
    throw Error(ErrorCode::BadOptions, "corpus must be nonempty");
  }
  PropertyReport report;
  report.property_id = "Tn-lambda(" + family.id + ")";
  report.grid.count = int(corpus.size());
  report.grid.description =
      std::to_string(corpus.size()) + " weighted samples";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EstimateResult r = estimate(family, corpus[i], opts);
    if (r.outcome.kind != SignChangeKind::Point) {
      report.verdict = Verdict::Violated;
      report.witnesses = {{double(i), double(corpus[i].size())}};
      report.note = "sample #" + std::to_string(i) + " (n=" +
                    std::to_string(corpus[i].size()) + ") yields " +
                    sign_change_kind_name(r.outcome.kind);
      return report;
    }
  }
  report.verdict = Verdict::HoldsOnGrid;
  report.note = "all samples yield a certified point of sign change";
  return report;
}

PsiFamily make_step_table_family(std::vector<double> weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::InvalidParameter, "weights must be nonempty");
  }
  for (double w : weights) {
    if (!(w > 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "weights must be positive");
    }
  }
  const auto w = std::make_shared<const std::vector<double>>(std::move(weights));
  PsiFamily fam;
  fam.id = "step-table(m=" + std::to_string(w->size()) + ")";
  fam.evaluate = [w](double x, double t) {
    auto i = std::lround(x);
    if (i < 1 || std::size_t(i) > w->size() || double(i) != x) {
      throw Error(ErrorCode::DomainError,
                  "x must be an index in {1,...," +
                      std::to_string(w->size()) + "}");
    }
    double wi = (*w)[std::size_t(i) - 1];
    return t < double(i) ? wi : -wi;
  };
  fam.continuous_in_t = false;
  fam.strictly_decreasing_in_t = false;
  fam.analytic_theta1 = [](double x) { return x; };
  return fam;
}

namespace {

PropertyReport match_report(const std::string& id, bool match,
                            const std::string& expected,
                            const std::string& computed,
                            std::vector<std::pair<double, double>> witnesses) {
  PropertyReport report;
  report.property_id = "reproduce:" + id;
  report.verdict = match ? Verdict::HoldsOnGrid : Verdict::Violated;
  report.witnesses = std::move(witnesses);
  report.note = "expected=" + expected + "; computed=" + computed +
                "; match=" + (match ? "true" : "false");
  return report;
}

PropertyReport reproduce_ex_t2_fail() {
  SolverOptions opts;
  opts.scan_points = 512;
  bool ok = true;
  std::vector<std::pair<double, double>> witnesses;

  // Distinct weights: T2 holds with the estimator at the heavier index.
  PsiFamily distinct = make_step_table_family({1.0, 2.0});
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      auto out = estimate(distinct, WeightedSample::unit({double(i), double(j)}),
                          opts)
                     .outcome;
      double expected = i == j ? double(i) : 2.0;  // w1 < w2
      bool good = out.kind == SignChangeKind::Point &&
                  std::abs(out.location - expected) <= 1e-6;
      if (!good) {
        ok = false;
        witnesses.push_back({double(i), double(j)});
      }
    }
  }

  // Equal weights: the pair sum vanishes on [i, j) and T2 fails.
  PsiFamily equal = make_step_table_family({1.0, 1.0});
  auto out = estimate(equal, WeightedSample::unit({1.0, 2.0}), opts).outcome;
  if (out.kind != SignChangeKind::ZeroPlateau) {
    ok = false;
    witnesses.push_back({1.0, 2.0});
  }

  return match_report(
      "ex-T2-fail", ok,
      "T2 holds iff weights distinct, estimator at the heavier index",
      ok ? "same" : "mismatch", std::move(witnesses));
}

PropertyReport reproduce_ex_not_omitted() {
  // Two step functions with psi(x_i, theta1(x_i)) != 0; the pair sum has
  // zeros at t = 1 and t = 2 with negative values in between, hence no
  // point of sign change despite a strictly monotone ratio.
  auto psi1 = [](double t) {
    if (t < 1.0) return 2.0;
    if (t <= 2.0) return -t;
    return -2.0;
  };
  auto psi2 = [](double t) {
    if (t < 2.0) return 1.0;
    if (t == 2.0) return 2.0;
    return -1.0;
  };
  auto g = [&](double t) { return psi1(t) + psi2(t); };

  bool ok = g(0.0) > 0.0 && g(1.0) == 0.0 && g(1.5) < 0.0 && g(2.0) == 0.0 &&
            g(3.0) < 0.0;
  return match_report(
      "ex-not-omitted", ok, "zeros at t=1 and t=2, no point of sign change",
      ok ? "g(1)=0, g(1.5)<0, g(2)=0" : "unexpected sign pattern",
      {{1.0, g(1.0)}, {1.5, g(1.5)}, {2.0, g(2.0)}});
}

PropertyReport reproduce_ex_div_noomit() {
  // (n, k) = (3, 2), w = (k-1, 1) = (1, 1): T3 holds exhaustively over X^3,
  // while the k-sample (x1, x2) yields a zero plateau.
  SolverOptions opts;
  opts.scan_points = 512;
  PsiFamily fam = make_step_table_family({1.0, 1.0});
  bool ok = true;
  std::vector<std::pair<double, double>> witnesses;

  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      for (int c = 1; c <= 2; ++c) {
        auto out =
            estimate(fam,
                     WeightedSample::unit({double(a), double(b), double(c)}),
                     opts)
                .outcome;
        int n1 = (a == 1) + (b == 1) + (c == 1);
        double expected = (3 - 2 * n1) < 0 ? 1.0 : 2.0;
        if (out.kind != SignChangeKind::Point ||
            std::abs(out.location - expected) > 1e-6) {
          ok = false;
          witnesses.push_back({double(a * 100 + b * 10 + c), 0.0});
        }
      }
    }
  }

  auto pair_out =
      estimate(fam, WeightedSample::unit({1.0, 2.0}), opts).outcome;
  if (pair_out.kind != SignChangeKind::ZeroPlateau) {
    ok = false;
    witnesses.push_back({12.0, 0.0});
  }

  return match_report("ex-div-noomit", ok,
                      "T3 holds on all of X^3, T2 fails with a zero plateau",
                      ok ? "same" : "mismatch", std::move(witnesses));
}

PropertyReport reproduce_huber_t2(const std::string& id, const PsiFamily& fam,
                                  std::vector<double> points, double plo,
                                  double phi_, const std::string& expected) {
  SolverOptions opts;
  auto out = estimate(fam, WeightedSample::unit(std::move(points)), opts)
                 .outcome;
  bool ok = out.kind == SignChangeKind::ZeroPlateau &&
            std::abs(out.plateau.first - plo) <= 1e-6 &&
            std::abs(out.plateau.second - phi_) <= 1e-6;
  std::ostringstream computed;
  computed << sign_change_kind_name(out.kind);
  if (out.kind == SignChangeKind::ZeroPlateau) {
    computed << " [" << out.plateau.first << ", " << out.plateau.second << "]";
  }
  return match_report(id, ok, expected, computed.str(),
                      {{out.plateau.first, out.plateau.second}});
}

PropertyReport reproduce_mixture_ratio() {
  PsiFamily fam = make_family(NormalMixtureSpec{1.0});
  PropertyReport r = check_ratio_monotone(fam, 1.0, 5.0, 512, false);
  bool ok = r.verdict == Verdict::Violated;
  PropertyReport report = match_report(
      "mixture-ratio", ok, "ratio on (1,5) is not increasing",
      std::string("ratio check: ") + verdict_name(r.verdict), r.witnesses);
  report.grid = r.grid;
  report.margin = r.margin;
  return report;
}

}  // namespace

const std::vector<std::string>& counterexample_ids() {
  static const std::vector<std::string> ids = {
      "ex-T2-fail",   "ex-not-omitted", "ex-div-noomit",
      "huber-T2",     "median-even",    "mixture-ratio"};
  return ids;
}

PropertyReport reproduce(const std::string& id) {
  if (id == "ex-T2-fail") return reproduce_ex_t2_fail();
  if (id == "ex-not-omitted") return reproduce_ex_not_omitted();
  if (id == "ex-div-noomit") return reproduce_ex_div_noomit();
  if (id == "huber-T2") {
    return reproduce_huber_t2(
        "huber-T2",
        make_family(MathieuFamilySpec{{MathieuKind::Huber, 1.0}}),
        {0.0, 3.0}, 1.0, 2.0, "no sign change: zero plateau on [1, 2]");
  }
  if (id == "median-even") {
    return reproduce_huber_t2("median-even", make_family(MedianSpec{}),
                              {1.0, 2.0}, 1.0, 2.0,
                              "no sign change: zero plateau on [1, 2]");
  }
  if (id == "mixture-ratio") return reproduce_mixture_ratio();
  throw Error(ErrorCode::UnknownId, "unknown counterexample id '" + id + "'");
}

std::vector<WeightedSample> random_corpus(int count, int max_n, double lo,
                                          double hi, std::uint64_t seed,
                                          bool weighted) {
  if (count < 1 || max_n < 1) {
    throw Error(ErrorCode::BadOptions, "count and max_n must be positive");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(1, max_n);
  std::uniform_real_distribution<double> point_dist(lo, hi);
  std::uniform_real_distribution<double> weight_dist(0.1, 3.0);

  std::vector<WeightedSample> corpus;
  corpus.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    int n = size_dist(rng);
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> ws(static_cast<std::size_t>(n), 1.0);
    for (double& x : xs) x = point_dist(rng);
    if (weighted) {
      for (double& w : ws) w = weight_dist(rng);
    }
    corpus.emplace_back(std::move(xs), std::move(ws));
  }
  return corpus;
}

}  // namespace psisolve
