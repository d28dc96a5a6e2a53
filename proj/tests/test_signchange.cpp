#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "psisolve/estimators.hpp"
#include "psisolve/psifamilies.hpp"
#include "psisolve/signchange.hpp"

using namespace psisolve;

namespace {

RealFunction median_sum(std::vector<double> points) {
  PsiFamily fam = make_family(MedianSpec{});
  return weighted_psi_sum(fam, WeightedSample::unit(std::move(points)));
}

}  // namespace

TEST_CASE("solver options validation") {
  SolverOptions opts;
  CHECK_NOTHROW(opts.validate());
  opts.tolerance = 0.0;
  CHECK_THROWS_AS(opts.validate(), Error);
  opts.tolerance = 1e-10;
  opts.scan_points = 15;
  CHECK_THROWS_AS(opts.validate(), Error);
}

TEST_CASE("bracket: linear function on a bounded interval") {
  SolverOptions opts;
  auto result = bracket([](double t) { return 1.0 - t; },
                        OpenInterval::bounded(0.0, 2.0), opts);
  auto* pair = std::get_if<std::pair<double, double>>(&result);
  REQUIRE(pair != nullptr);
  CHECK(pair->first < pair->second);
  CHECK(1.0 - pair->first > 0.0);
  CHECK(1.0 - pair->second < 0.0);
}

TEST_CASE("bracket: constant positive reports no negative value") {
  SolverOptions opts;
  auto result =
      bracket([](double) { return 1.0; }, OpenInterval::whole(), opts);
  auto* err = std::get_if<BracketError>(&result);
  REQUIRE(err != nullptr);
  CHECK(err->reason == BracketFailure::NoNegativeValueFound);
  CHECK(err->scanned_range.first < err->scanned_range.second);
}

TEST_CASE("bracket: median sum over (1,2,3) straddles 2") {
  SolverOptions opts;
  auto result = bracket(median_sum({1.0, 2.0, 3.0}), OpenInterval::whole(),
                        opts);
  auto* pair = std::get_if<std::pair<double, double>>(&result);
  REQUIRE(pair != nullptr);
  CHECK(pair->first < 2.0);
  CHECK(pair->second > 2.0);
}

TEST_CASE("find_sign_change: odd-n median is a point") {
  auto out = find_sign_change(median_sum({1.0, 2.0, 3.0}),
                              OpenInterval::whole(), {});
  REQUIRE(out.kind == SignChangeKind::Point);
  CHECK(out.location == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(out.bracket.second - out.bracket.first <= 1e-10);
}

TEST_CASE("find_sign_change: even-n median is a zero plateau") {
  auto out =
      find_sign_change(median_sum({1.0, 2.0}), OpenInterval::whole(), {});
  REQUIRE(out.kind == SignChangeKind::ZeroPlateau);
  CHECK(out.plateau.first == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(out.plateau.second == doctest::Approx(2.0).epsilon(1e-6));
  // Plateau must be wider than the tolerance by construction.
  CHECK(out.plateau.second - out.plateau.first > 1e-10);
}

TEST_CASE("find_sign_change: increasing function is not decreasing type") {
  auto out = find_sign_change([](double t) { return t; },
                              OpenInterval::bounded(-1.0, 1.0), {});
  REQUIRE(out.kind == SignChangeKind::NotDecreasingType);
  REQUIRE(out.witnesses.size() == 2);
  auto [s, fs] = out.witnesses[0];
  auto [t, ft] = out.witnesses[1];
  CHECK(s < t);
  CHECK(fs < 0.0);
  CHECK(ft > 0.0);
}

TEST_CASE("find_sign_change: identically zero reports the scanned plateau") {
  auto out = find_sign_change([](double) { return 0.0; },
                              OpenInterval::bounded(-3.0, 5.0), {});
  REQUIRE(out.kind == SignChangeKind::ZeroPlateau);
  CHECK(out.plateau.first < out.plateau.second);
}

TEST_CASE("find_sign_change: constant negative is a no-flip failure") {
  auto out = find_sign_change([](double) { return -1.0; },
                              OpenInterval::whole(), {});
  CHECK(out.kind == SignChangeKind::NoFlip);
  CHECK_FALSE(out.witnesses.empty());
}

TEST_CASE("point outcomes satisfy the sign pattern on side grids") {
  PsiFamily fam = make_family(ExpectileSpec{0.3});
  auto f = weighted_psi_sum(fam, WeightedSample::unit({-2.0, 0.0, 5.0}));
  auto out = find_sign_change(f, OpenInterval::whole(), {});
  REQUIRE(out.kind == SignChangeKind::Point);

  const double tol = 1e-10;
  bool some_positive = false, some_negative = false;
  for (int i = 0; i < 64; ++i) {
    double left = out.location - tol - double(i + 1) * 0.1;
    double right = out.location + tol + double(i + 1) * 0.1;
    double fl = f(left), fr = f(right);
    CHECK(fl >= 0.0);
    CHECK(fr <= 0.0);
    if (fl > 0.0) some_positive = true;
    if (fr < 0.0) some_negative = true;
  }
  CHECK(some_positive);
  CHECK(some_negative);
}

TEST_CASE("idempotence: re-solving from the returned bracket agrees") {
  auto f = median_sum({4.0, 1.0, 3.0});
  auto first = find_sign_change(f, OpenInterval::whole(), {});
  REQUIRE(first.kind == SignChangeKind::Point);

  SolverOptions warm;
  warm.seed_bracket = first.bracket;
  auto second = find_sign_change(f, OpenInterval::whole(), warm);
  REQUIRE(second.kind == SignChangeKind::Point);
  CHECK(std::abs(second.location - first.location) <= warm.tolerance);
}

TEST_CASE("residual shrinks with tolerance for a continuous strict decrease") {
  PsiFamily fam = make_family(ExpectileSpec{0.7});
  auto f = weighted_psi_sum(fam, WeightedSample::unit({0.0, 1.0, 10.0}));
  double previous = 1e300;
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    SolverOptions opts;
    opts.tolerance = tol;
    auto out = find_sign_change(f, OpenInterval::whole(), opts);
    REQUIRE(out.kind == SignChangeKind::Point);
    double residual = std::abs(f(out.location));
    CHECK(residual <= previous + 1e-15);
    previous = residual;
  }
  CHECK(previous < 1e-10);
}

TEST_CASE("probe grid stays strictly inside the domain and is sorted") {
  SolverOptions opts;
  opts.scan_points = 64;
  for (const OpenInterval& dom :
       {OpenInterval::bounded(0.0, 1.0), OpenInterval::positive(),
        OpenInterval::below(3.0), OpenInterval::whole()}) {
    auto grid = probe_grid(dom, opts);
    REQUIRE(grid.size() >= 16);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(dom.contains(grid[i]));
      if (i > 0) CHECK(grid[i - 1] < grid[i]);
    }
  }
}
