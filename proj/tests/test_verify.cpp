#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "psisolve/verify.hpp"

using namespace psisolve;

TEST_CASE("level of increase: increasing function, interior level") {
  auto r = check_level_of_increase([](double t) { return t; },
                                   OpenInterval::bounded(0.0, 1.0), 0.5, 256);
  CHECK(r.verdict == Verdict::HoldsOnGrid);
  CHECK(r.note.find("case (iii)") != std::string::npos);
  CHECK(r.grid.count == 256);
}

TEST_CASE("level of increase: decreasing function is violated with witness") {
  auto f = [](double t) { return -t; };
  auto r = check_level_of_increase(f, OpenInterval::bounded(0.0, 1.0), -0.5,
                                   256);
  REQUIRE(r.verdict == Verdict::Violated);
  REQUIRE_FALSE(r.witnesses.empty());
  auto [u, v] = r.witnesses.front();
  CHECK(u < v);
  // Witness re-evaluates to the violating inequality.
  CHECK(f(u) >= -0.5);
  CHECK(f(v) <= -0.5);
  CHECK(r.margin >= 1e-12);
}

TEST_CASE("level of increase: levels outside the range classify cases") {
  auto f = [](double t) { return t; };
  auto below = check_level_of_increase(f, OpenInterval::bounded(0.0, 1.0),
                                       -3.0, 64);
  CHECK(below.verdict == Verdict::HoldsOnGrid);
  CHECK(below.note.find("case (i)") != std::string::npos);

  auto above = check_level_of_increase(f, OpenInterval::bounded(0.0, 1.0),
                                       3.0, 64);
  CHECK(above.verdict == Verdict::HoldsOnGrid);
  CHECK(above.note.find("case (ii)") != std::string::npos);
}

TEST_CASE("level of increase: constant function at its own value") {
  // y = c for constant f = c negates Definition-style increase; the verdict
  // is a violation with zero margin, flagged as a boundary equality.
  auto r = check_level_of_increase([](double) { return 0.5; },
                                   OpenInterval::bounded(0.0, 1.0), 0.5, 64);
  CHECK(r.verdict == Verdict::Violated);
  CHECK(r.note.find("boundary") != std::string::npos);
}

TEST_CASE("eps-increasing checks") {
  auto half = [](double) { return 0.5; };
  auto r = check_eps_increasing(half, OpenInterval::bounded(0.0, 1.0),
                                1.0 / 3.0, true, 128);
  CHECK(r.verdict == Verdict::HoldsOnGrid);
  CHECK(r.margin == doctest::Approx(1.0 / 3.0));

  auto dec = [](double t) { return -t; };
  auto v = check_eps_increasing(dec, OpenInterval::bounded(0.0, 1.0), 0.5,
                                true, 256);
  REQUIRE(v.verdict == Verdict::Violated);
  auto [u, w] = v.witnesses.front();
  CHECK(dec(u) >= dec(w) + 0.5 - 1e-9);

  auto inc = check_eps_increasing([](double t) { return t; },
                                  OpenInterval::bounded(0.0, 1.0), 1e-6, true,
                                  128);
  CHECK(inc.verdict == Verdict::HoldsOnGrid);
}

TEST_CASE("ratio function construction and ordering") {
  PsiFamily e = make_family(ExpectileSpec{0.3});
  RatioFunction ratio(e, 0.0, 1.0);
  CHECK(ratio.domain().lower() == 0.0);
  CHECK(ratio.domain().upper() == 1.0);
  // On (theta1(x), theta1(y)) the ratio is positive.
  CHECK(ratio(0.5) > 0.0);
  CHECK_THROWS_AS(RatioFunction(e, 1.0, 0.0), Error);
}

TEST_CASE("ratio variant of the median is the constant one-half") {
  PsiFamily med = make_family(MedianSpec{});
  RatioFunction ratio(med, 0.0, 1.0);
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(ratio(t) == doctest::Approx(1.0));
    CHECK(ratio.variant(t) == doctest::Approx(0.5));
  }
}

TEST_CASE("ratio monotonicity verdicts") {
  auto strict = check_ratio_monotone(make_family(ExpectileSpec{0.3}), 0.0,
                                     1.0, 512, true);
  CHECK(strict.verdict == Verdict::HoldsOnGrid);
  CHECK(strict.note.find("margin") != std::string::npos);

  auto mixture = check_ratio_monotone(make_family(NormalMixtureSpec{1.0}),
                                      1.0, 5.0, 512, false);
  REQUIRE(mixture.verdict == Verdict::Violated);
  REQUIRE_FALSE(mixture.witnesses.empty());
  auto [u, v] = mixture.witnesses.front();
  CHECK(u > 1.0);
  CHECK(v < 5.0);
  CHECK(u < v);

  PsiFamily med = make_family(MedianSpec{});
  CHECK(check_ratio_monotone(med, 0.0, 1.0, 256, true).verdict ==
        Verdict::Violated);
  CHECK(check_ratio_monotone(med, 0.0, 1.0, 256, false).verdict ==
        Verdict::HoldsOnGrid);
}

TEST_CASE("levels for T_n") {
  auto even = check_levels_for_Tn(make_family(QuantileSpec{0.5}), 0.0, 1.0,
                                  2, 256);
  CHECK(even.verdict == Verdict::Violated);

  auto off = check_levels_for_Tn(make_family(QuantileSpec{0.3}), 0.0, 1.0, 2,
                                 256);
  CHECK(off.verdict == Verdict::HoldsOnGrid);

  auto exp5 = check_levels_for_Tn(make_family(ExpectileSpec{0.3}), 0.0, 1.0,
                                  5, 256);
  CHECK(exp5.verdict == Verdict::HoldsOnGrid);
  CHECK(exp5.note.find("k=4") != std::string::npos);
}

TEST_CASE("variant ratio of an off-grid quantile is strictly 1/n-increasing") {
  PsiFamily q = make_family(QuantileSpec{0.3});
  RatioFunction ratio(q, 0.0, 1.0);
  for (int n : {2, 3, 7}) {
    auto r = check_eps_increasing(
        [&ratio](double t) { return ratio.variant(t); }, ratio.domain(),
        1.0 / double(n), true, 128);
    CHECK(r.verdict == Verdict::HoldsOnGrid);
    CHECK(r.margin == doctest::Approx(1.0 / double(n)));
  }
}

TEST_CASE("corpus check over weighted samples") {
  PsiFamily catoni = make_family(MathieuFamilySpec{{MathieuKind::Catoni, 1, 1}});
  SolverOptions opts;
  opts.scan_points = 128;
  auto corpus = random_corpus(100, 7, -10.0, 10.0);
  auto r = check_Tn_lambda(catoni, corpus, opts);
  CHECK(r.verdict == Verdict::HoldsOnGrid);

  PsiFamily huber = make_family(MathieuFamilySpec{{MathieuKind::Huber, 1.0}});
  std::vector<WeightedSample> bad = {WeightedSample::unit({0.0, 3.0})};
  auto v = check_Tn_lambda(huber, bad, opts);
  REQUIRE(v.verdict == Verdict::Violated);
  CHECK(v.note.find("ZeroPlateau") != std::string::npos);
}

TEST_CASE("contrapositive coherence between corpus and level checks") {
  SolverOptions opts;
  opts.scan_points = 256;

  // quantile(1/2): the pair (0,1) has no point of sign change, and the
  // level check at n = 2 must not strictly pass on the same (x, y).
  PsiFamily q = make_family(QuantileSpec{0.5});
  auto corpus_verdict =
      check_Tn_lambda(q, {WeightedSample::unit({0.0, 1.0})}, opts).verdict;
  REQUIRE(corpus_verdict == Verdict::Violated);
  auto level_verdict = check_levels_for_Tn(q, 0.0, 1.0, 2, 256).verdict;
  CHECK(level_verdict != Verdict::HoldsOnGrid);

  // Same coherence on the huber pair.
  PsiFamily h = make_family(MathieuFamilySpec{{MathieuKind::Huber, 1.0}});
  REQUIRE(check_Tn_lambda(h, {WeightedSample::unit({0.0, 3.0})}, opts)
              .verdict == Verdict::Violated);
  CHECK(check_levels_for_Tn(h, 0.0, 3.0, 2, 512).verdict !=
        Verdict::HoldsOnGrid);
}

TEST_CASE("verdict names never claim a proof") {
  CHECK(std::string(verdict_name(Verdict::HoldsOnGrid)) == "holds-on-grid");
  CHECK(std::string(verdict_name(Verdict::Violated)) == "violated");
  CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "inconclusive");
}

TEST_CASE("step-table family") {
  PsiFamily fam = make_step_table_family({1.0, 2.0});
  CHECK(fam.psi(1.0, 0.5) == 1.0);
  CHECK(fam.psi(1.0, 1.0) == -1.0);
  CHECK(fam.psi(2.0, 1.5) == 2.0);
  CHECK(fam.psi(2.0, 2.0) == -2.0);
  CHECK(theta1(fam, 2.0) == 2.0);
  CHECK_THROWS_AS(fam.psi(3.0, 0.0), Error);
  CHECK_THROWS_AS(fam.psi(1.5, 0.0), Error);
  CHECK_THROWS_AS(make_step_table_family({}), Error);
  CHECK_THROWS_AS(make_step_table_family({1.0, -1.0}), Error);
}

TEST_CASE("counterexample reproductions all match the claimed verdicts") {
  for (const std::string& id : counterexample_ids()) {
    CAPTURE(id);
    PropertyReport r = reproduce(id);
    CHECK(r.verdict == Verdict::HoldsOnGrid);
    CHECK(r.note.find("match=true") != std::string::npos);
  }
  CHECK_THROWS_AS(reproduce("bogus"), Error);
}

TEST_CASE("random corpus is reproducible and respects its bounds") {
  auto a = random_corpus(20, 6, -3.0, 3.0, 42, true);
  auto b = random_corpus(20, 6, -3.0, 3.0, 42, true);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].size() <= 6);
    for (double x : a[i].points()) {
      CHECK(x >= -3.0);
      CHECK(x <= 3.0);
    }
  }
  auto c = random_corpus(20, 6, -3.0, 3.0, 43, true);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == c[i])) any_difference = true;
  }
  CHECK(any_difference);

  auto unit = random_corpus(5, 4, 0.0, 1.0, 7, false);
  for (const auto& s : unit) {
    for (double w : s.weights()) CHECK(w == 1.0);
  }
}
