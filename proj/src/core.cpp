#include "psisolve/core.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace psisolve {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NaNInput: return "NaNInput";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::BadProbabilities: return "BadProbabilities";
    case ErrorCode::BadOptions: return "BadOptions";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoAnalyticTheta1: return "NoAnalyticTheta1";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OutOfHull: return "OutOfHull";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::Theta1Order: return "Theta1Order";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "UnknownError";
}

OpenInterval::OpenInterval(std::optional<double> lower,
                           std::optional<double> upper)
    : lower_(lower), upper_(upper) {
  if (lower_ && !std::isfinite(*lower_)) {
    throw Error(ErrorCode::BadInterval,
                "bounded endpoint must be finite; use the unbounded tag");
  }
  if (upper_ && !std::isfinite(*upper_)) {
    throw Error(ErrorCode::BadInterval,
                "bounded endpoint must be finite; use the unbounded tag");
  }
  if (lower_ && upper_ && !(*lower_ < *upper_)) {
    throw Error(ErrorCode::BadInterval, "interval is degenerate");
  }
}

bool OpenInterval::contains(double t) const noexcept {
  if (!std::isfinite(t)) return false;
  if (lower_ && !(t > *lower_)) return false;
  if (upper_ && !(t < *upper_)) return false;
  return true;
}

WeightedSample::WeightedSample(std::vector<double> points,
                               std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "points and weights differ in length");
  }
  if (points_.empty()) {
    throw Error(ErrorCode::LengthMismatch, "sample must be nonempty");
  }
  bool any_positive = false;
  for (double x : points_) {
    if (std::isnan(x)) throw Error(ErrorCode::NaNInput, "NaN sample point");
  }
  for (double w : weights_) {
    if (std::isnan(w)) throw Error(ErrorCode::NaNInput, "NaN weight");
    if (w < 0.0) throw Error(ErrorCode::NegativeWeight, "negative weight");
    if (w > 0.0) any_positive = true;
  }
  if (!any_positive) {
    throw Error(ErrorCode::AllWeightsZero,
                "at least one weight must be strictly positive");
  }
}

WeightedSample WeightedSample::unit(std::vector<double> points) {
  std::vector<double> weights(points.size(), 1.0);
  return WeightedSample(std::move(points), std::move(weights));
}

double WeightedSample::total_weight() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

WeightedSample validate_weighted_sample(std::vector<double> points,
                                        std::vector<double> weights) {
  return WeightedSample(std::move(points), std::move(weights));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> atoms,
                                           std::vector<double> probabilities)
    : atoms_(std::move(atoms)), probs_(std::move(probabilities)) {
  if (atoms_.size() != probs_.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "atoms and probabilities differ in length");
  }
  if (atoms_.empty()) {
    throw Error(ErrorCode::LengthMismatch, "distribution must be nonempty");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (std::isnan(p)) throw Error(ErrorCode::NaNInput, "NaN probability");
    if (p < 0.0) {
      throw Error(ErrorCode::BadProbabilities, "negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::BadProbabilities,
                "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  std::set<double> distinct(atoms_.begin(), atoms_.end());
  if (distinct.size() != atoms_.size()) {
    throw Error(ErrorCode::BadProbabilities, "atoms must be distinct");
  }
  for (double a : atoms_) {
    if (std::isnan(a)) throw Error(ErrorCode::NaNInput, "NaN atom");
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<double> atoms) {
  std::vector<double> probs(atoms.size(), 1.0 / double(atoms.size()));
  return DiscreteDistribution(std::move(atoms), std::move(probs));
}

DiscreteDistribution DiscreteDistribution::point_mass(double atom) {
  return DiscreteDistribution({atom}, {1.0});
}

const char* sign_change_kind_name(SignChangeKind kind) {
  switch (kind) {
    case SignChangeKind::Point: return "Point";
    case SignChangeKind::ZeroPlateau: return "ZeroPlateau";
    case SignChangeKind::NoFlip: return "NoFlip";
    case SignChangeKind::NotDecreasingType: return "NotDecreasingType";
  }
  return "Unknown";
}

SignChangeOutcome SignChangeOutcome::point(double location,
                                           std::pair<double, double> bracket) {
  SignChangeOutcome out;
  out.kind = SignChangeKind::Point;
  out.location = location;
  out.bracket = bracket;
  return out;
}

SignChangeOutcome SignChangeOutcome::zero_plateau(double lo, double hi) {
  SignChangeOutcome out;
  out.kind = SignChangeKind::ZeroPlateau;
  out.plateau = {lo, hi};
  return out;
}

SignChangeOutcome SignChangeOutcome::no_flip(
    std::vector<std::pair<double, double>> witnesses) {
  SignChangeOutcome out;
  out.kind = SignChangeKind::NoFlip;
  out.witnesses = std::move(witnesses);
  return out;
}

SignChangeOutcome SignChangeOutcome::not_decreasing_type(
    std::vector<std::pair<double, double>> witnesses) {
  SignChangeOutcome out;
  out.kind = SignChangeKind::NotDecreasingType;
  out.witnesses = std::move(witnesses);
  return out;
}

}  // namespace psisolve
