#include "psisolve/estimators.hpp"

#include <cmath>

namespace psisolve {

RealFunction weighted_psi_sum(const PsiFamily& family,
                              const WeightedSample& sample) {
  for (double x : sample.points()) {
    if (!family.x_domain.contains(x)) {
      throw Error(ErrorCode::DomainError,
                  "sample point x=" + std::to_string(x) +
                      " outside the X domain of " + family.id);
    }
  }
  return [family, sample](double t) {
    // Kahan summation: weights spanning orders of magnitude otherwise
    // corrupt sign queries near the estimator.
    double sum = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      double term =
          sample.weights()[i] * family.evaluate(sample.points()[i], t);
      double y = term - carry;
      double s = sum + y;
      carry = (s - sum) - y;
      sum = s;
    }
    return sum;
  };
}

EstimateResult estimate(const PsiFamily& family, const WeightedSample& sample,
                        const SolverOptions& opts) {
  EstimateResult result;
  result.outcome =
      find_sign_change(weighted_psi_sum(family, sample), family.theta, opts);
  result.closed_form_value = closed_form(family, sample);
  if (result.outcome.kind == SignChangeKind::Point &&
      result.closed_form_value) {
    result.agreement =
        std::abs(result.outcome.location - *result.closed_form_value);
  }
  if (family.strictly_decreasing_in_t && family.analytic_theta1 &&
      result.outcome.kind != SignChangeKind::Point) {
    result.solver_anomaly = true;
  }
  return result;
}

std::optional<double> closed_form(const PsiFamily& family,
                                  const WeightedSample& sample) {
  if (!family.closed_form) return std::nullopt;
  return (*family.closed_form)(sample);
}

SignChangeOutcome expectation_sign_change(const PsiFamily& family,
                                          const DiscreteDistribution& dist,
                                          const SolverOptions& opts) {
  WeightedSample sample(dist.atoms(), dist.probabilities());
  return estimate(family, sample, opts).outcome;
}

double bajraktarevic_expectation_point(const MonotoneFunction& f,
                                       const RealFunction& p,
                                       const RealFunction& phi,
                                       const DiscreteDistribution& dist,
                                       const SolverOptions& opts) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    double pp = dist.probabilities()[i] * p(dist.atoms()[i]);
    num += pp * phi(dist.atoms()[i]);
    den += pp;
  }
  return generalized_left_inverse(f, num / den, opts);
}

}  // namespace psisolve
