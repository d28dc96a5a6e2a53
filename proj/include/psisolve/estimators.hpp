#pragma once

#include <optional>

#include "psisolve/core.hpp"
#include "psisolve/leftinv.hpp"
#include "psisolve/psifamilies.hpp"
#include "psisolve/signchange.hpp"

namespace psisolve {

struct EstimateResult {
  SignChangeOutcome outcome;
  std::optional<double> closed_form_value;
  // |solver point - closed form|; present iff both sides exist.
  std::optional<double> agreement;
  // For families that guarantee a Point (strict decrease in t plus T1),
  // any non-Point outcome is a solver anomaly, not a finding.
  bool solver_anomaly = false;
};

/// t -> sum_i lambda_i psi(x_i, t), with compensated summation.
RealFunction weighted_psi_sum(const PsiFamily& family,
                              const WeightedSample& sample);

EstimateResult estimate(const PsiFamily& family, const WeightedSample& sample,
                        const SolverOptions& opts = {});

/// The analytic closed form for this family/sample combination, when one
/// applies; absent otherwise.
std::optional<double> closed_form(const PsiFamily& family,
                                  const WeightedSample& sample);

/// Sign change of t -> E psi(xi, t) for a finite-support distribution
/// (weights = probabilities).
SignChangeOutcome expectation_sign_change(const PsiFamily& family,
                                          const DiscreteDistribution& dist,
                                          const SolverOptions& opts = {});

/// f^(-1)(E(p(xi) phi(xi)) / E(p(xi))) for finite-support xi.
double bajraktarevic_expectation_point(const MonotoneFunction& f,
                                       const RealFunction& p,
                                       const RealFunction& phi,
                                       const DiscreteDistribution& dist,
                                       const SolverOptions& opts = {});

}  // namespace psisolve
