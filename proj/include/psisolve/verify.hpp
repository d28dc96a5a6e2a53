#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psisolve/estimators.hpp"
#include "psisolve/psifamilies.hpp"

namespace psisolve {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

enum class Verdict { HoldsOnGrid, Violated, Inconclusive };

const char* verdict_name(Verdict verdict);

struct GridInfo {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  std::string description;
};

/// Result of a numerical property check. A holds-on-grid verdict is
/// evidence at the stated grid resolution, never a proof; a violated
/// verdict carries re-evaluable witnesses.
struct PropertyReport {
  std::string property_id;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<double, double>> witnesses;
  GridInfo grid;
  double margin = 0.0;
  std::string note;
};

/// t -> -psi(x,t)/psi(y,t) on (theta1(x), theta1(y)); requires
/// theta1(x) < theta1(y) (Theta1Order otherwise).
class RatioFunction {
 public:
  RatioFunction(PsiFamily family, double x, double y);

  double operator()(double t) const;
  /// The companion ratio psi(x,t)/(psi(x,t) - psi(y,t)).
  double variant(double t) const;
  const OpenInterval& domain() const noexcept { return domain_; }

 private:
  PsiFamily family_;
  double x_, y_;
  OpenInterval domain_;
};

/// y is a level of increase for f when y <= f(u) forces y < f(v) for all
/// v > u. Searches grid pairs for a violation; on a pass, classifies which
/// trichotomy case (y below f, y above f, sign change of y - f) applies.
PropertyReport check_level_of_increase(const RealFunction& f,
                                       const OpenInterval& domain, double y,
                                       int grid_count);

PropertyReport check_eps_increasing(const RealFunction& f,
                                    const OpenInterval& domain, double eps,
                                    bool strict, int grid_count);

PropertyReport check_ratio_monotone(const PsiFamily& family, double x,
                                    double y, int grid_count, bool strict);

/// Levels k/(n-k), k = 1..n-1, tested on the ratio function; a violation
/// certifies the family is not a T_n-function.
PropertyReport check_levels_for_Tn(const PsiFamily& family, double x, double y,
                                   int n, int grid_count);

PropertyReport check_Tn_lambda(const PsiFamily& family,
                               const std::vector<WeightedSample>& corpus,
                               const SolverOptions& opts = {});

/// Step-table family over the finite index set {1,...,m}: psi(i, t) = w_i
/// for t < i and -w_i for t >= i.
PsiFamily make_step_table_family(std::vector<double> weights);

/// Reproduce one of the worked counterexamples and compare the computed
/// verdict with the claimed one. Known ids: ex-T2-fail, ex-not-omitted,
/// ex-div-noomit, huber-T2, median-even, mixture-ratio.
PropertyReport reproduce(const std::string& id);

const std::vector<std::string>& counterexample_ids();

/// Reproducible random weighted samples for corpus-level checks.
std::vector<WeightedSample> random_corpus(int count, int max_n, double lo,
                                          double hi,
                                          std::uint64_t seed = kDefaultSeed,
                                          bool weighted = true);

}  // namespace psisolve
