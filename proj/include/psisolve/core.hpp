#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "psisolve/errors.hpp"

namespace psisolve {

/// Nondegenerate open interval, possibly unbounded on either side.
/// Unbounded endpoints are an explicit tag (nullopt), never IEEE infinities.
class OpenInterval {
 public:
  static OpenInterval whole() { return OpenInterval({}, {}); }
  static OpenInterval bounded(double lo, double hi) {
    return OpenInterval(lo, hi);
  }
  static OpenInterval above(double lo) { return OpenInterval(lo, {}); }
  static OpenInterval below(double hi) { return OpenInterval({}, hi); }
  static OpenInterval positive() { return above(0.0); }

  OpenInterval(std::optional<double> lower, std::optional<double> upper);

  const std::optional<double>& lower() const noexcept { return lower_; }
  const std::optional<double>& upper() const noexcept { return upper_; }
  bool bounded_below() const noexcept { return lower_.has_value(); }
  bool bounded_above() const noexcept { return upper_.has_value(); }

  /// Strict membership on both ends.
  bool contains(double t) const noexcept;

 private:
  std::optional<double> lower_;
  std::optional<double> upper_;
};

/// A weighted sample (x_i, lambda_i): weights nonnegative, not all zero.
class WeightedSample {
 public:
  WeightedSample(std::vector<double> points, std::vector<double> weights);

  /// Convenience: unit weights.
  static WeightedSample unit(std::vector<double> points);

  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }
  double total_weight() const noexcept;

  bool operator==(const WeightedSample&) const = default;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

WeightedSample validate_weighted_sample(std::vector<double> points,
                                        std::vector<double> weights);

/// Finite-support distribution: distinct atoms, probabilities summing to 1
/// within 1e-12 (farther off is rejected, never renormalized).
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> atoms,
                       std::vector<double> probabilities);

  static DiscreteDistribution uniform(std::vector<double> atoms);
  static DiscreteDistribution point_mass(double atom);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  std::vector<double> atoms_;
  std::vector<double> probs_;
};

enum class SignChangeKind { Point, ZeroPlateau, NoFlip, NotDecreasingType };

const char* sign_change_kind_name(SignChangeKind kind);

/// Result of locating a point of sign change of decreasing type.
/// Point carries a certified bracket (f > 0 on the left end, f < 0 on the
/// right end, width at most the requested tolerance). The other kinds are
/// structured failures with witnesses.
struct SignChangeOutcome {
  SignChangeKind kind;
  double location = 0.0;                          // Point
  std::pair<double, double> bracket{0.0, 0.0};    // Point
  std::pair<double, double> plateau{0.0, 0.0};    // ZeroPlateau
  std::vector<std::pair<double, double>> witnesses;  // (t, f(t)) pairs

  static SignChangeOutcome point(double location,
                                 std::pair<double, double> bracket);
  static SignChangeOutcome zero_plateau(double lo, double hi);
  static SignChangeOutcome no_flip(
      std::vector<std::pair<double, double>> witnesses);
  static SignChangeOutcome not_decreasing_type(
      std::vector<std::pair<double, double>> witnesses);
};

}  // namespace psisolve
