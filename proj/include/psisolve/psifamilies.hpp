#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psisolve/core.hpp"
#include "psisolve/leftinv.hpp"

namespace psisolve {

/// A parametrized psi: X x Theta -> R with declared metadata. Evaluation is
/// pure; families are immutable after construction.
struct PsiFamily {
  std::string id;
  std::function<double(double, double)> evaluate;  // (x, t), no domain check
  OpenInterval theta = OpenInterval::whole();
  OpenInterval x_domain = OpenInterval::whole();
  bool continuous_in_t = false;
  bool strictly_decreasing_in_t = false;
  std::optional<RealFunction> analytic_theta1;
  // Outer optional: the family has a closed-form estimator at all.
  // Inner optional: whether it applies to the given sample.
  std::optional<std::function<std::optional<double>(const WeightedSample&)>>
      closed_form;

  /// Evaluate with the X-domain check (DomainError outside X).
  double psi(double x, double t) const;
};

enum class MathieuKind { Huber, Catoni, Polynomial, Catoni2, L1L2, Fair };

/// f: R+ -> R+ for sign(x-t) f(|x-t|) families. Field use depends on kind:
/// Huber/Polynomial use beta, Catoni uses b, Polynomial uses p,
/// Catoni2 uses alpha.
struct MathieuSpec {
  MathieuKind kind;
  double beta = 1.0;
  double b = 1.0;
  int p = 2;
  double alpha = 1.5;
};

double eval_f_mathieu(const MathieuSpec& spec, double z);

struct MedianSpec {};
struct QuantileSpec { double alpha; };
struct ExpectileSpec { double alpha; };
struct MathieuFamilySpec { MathieuSpec f; };
struct BajraktarevicSpec {
  std::shared_ptr<const MonotoneFunction> f;
  RealFunction p;
  RealFunction phi;
  std::string label = "bajraktarevic";
};
struct NormalMeanSpec { double sigma; };
struct NormalVarSpec { double m; bool rescaled = true; };
struct IsmSpec {};
struct NormalMixtureSpec { double sigma; };

using FamilySpec =
    std::variant<MedianSpec, QuantileSpec, ExpectileSpec, MathieuFamilySpec,
                 BajraktarevicSpec, NormalMeanSpec, NormalVarSpec, IsmSpec,
                 NormalMixtureSpec>;

PsiFamily make_family(const FamilySpec& spec);

/// The unique zero of psi(x, .) when the family declares it analytically.
double theta1(const PsiFamily& family, double x);

/// Textual specs for the CLI: `tag[:subtag][:k=v{,k=v}]`, e.g. `median`,
/// `quantile:alpha=0.3`, `mathieu:huber:beta=1`, `bajraktarevic:cube`.
PsiFamily parse_family_spec(const std::string& text);

struct FamilyDoc {
  std::string spec;
  std::string description;
};
std::vector<FamilyDoc> family_catalog();

}  // namespace psisolve
