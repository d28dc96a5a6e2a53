#include "psisolve/psifamilies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace psisolve {

namespace {

double sign(double z) { return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0); }

bool all_weights_equal(const WeightedSample& sample) {
  const auto& w = sample.weights();
  return std::all_of(w.begin(), w.end(),
                     [&](double wi) { return wi == w.front(); });
}

std::vector<double> sorted_points(const WeightedSample& sample) {
  std::vector<double> xs = sample.points();
  std::sort(xs.begin(), xs.end());
  return xs;
}

// Empirical median, midpoint convention for even n.
double median_value(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

double PsiFamily::psi(double x, double t) const {
  if (!x_domain.contains(x)) {
    throw Error(ErrorCode::DomainError,
                "x=" + std::to_string(x) + " outside the X domain of " + id);
  }
  return evaluate(x, t);
}

double eval_f_mathieu(const MathieuSpec& spec, double z) {
  if (z < 0.0 || std::isnan(z)) {
    throw Error(ErrorCode::DomainError, "f is defined on z >= 0");
  }
  switch (spec.kind) {
    case MathieuKind::Huber:
      return std::min(z, spec.beta);
    case MathieuKind::Catoni:
      return std::log(1.0 + z / spec.b + 0.5 * (z / spec.b) * (z / spec.b));
    case MathieuKind::Polynomial:
      return z / (1.0 + std::pow(z / spec.beta, 1.0 - 1.0 / double(spec.p)));
    case MathieuKind::Catoni2:
      return std::log(1.0 + z + std::pow(z, spec.alpha) / spec.alpha);
    case MathieuKind::L1L2:
      return z / std::sqrt(1.0 + 0.5 * z * z);
    case MathieuKind::Fair:
      return z / (1.0 + z);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown Mathieu kind");
}

namespace {

void validate_mathieu(const MathieuSpec& spec) {
  switch (spec.kind) {
    case MathieuKind::Huber:
      if (!(spec.beta > 0.0))
        throw Error(ErrorCode::InvalidParameter, "huber requires beta > 0");
      break;
    case MathieuKind::Catoni:
      if (!(spec.b > 0.0))
        throw Error(ErrorCode::InvalidParameter, "catoni requires b > 0");
      break;
    case MathieuKind::Polynomial:
      if (spec.p < 1 || !(spec.beta > 0.0))
        throw Error(ErrorCode::InvalidParameter,
                    "poly requires p >= 1 and beta > 0");
      break;
    case MathieuKind::Catoni2:
      if (!(spec.alpha > 1.0 && spec.alpha < 2.0))
        throw Error(ErrorCode::InvalidParameter,
                    "catoni2 requires alpha in (1,2)");
      break;
    case MathieuKind::L1L2:
    case MathieuKind::Fair:
      break;
  }
}

std::string mathieu_id(const MathieuSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case MathieuKind::Huber: os << "mathieu:huber:beta=" << spec.beta; break;
    case MathieuKind::Catoni: os << "mathieu:catoni:b=" << spec.b; break;
    case MathieuKind::Polynomial:
      os << "mathieu:poly:p=" << spec.p << ",beta=" << spec.beta;
      break;
    case MathieuKind::Catoni2:
      os << "mathieu:catoni2:alpha=" << spec.alpha;
      break;
    case MathieuKind::L1L2: os << "mathieu:l1l2"; break;
    case MathieuKind::Fair: os << "mathieu:fair"; break;
  }
  return os.str();
}

struct MakeFamily {
  PsiFamily operator()(const MedianSpec&) const {
    PsiFamily fam;
    fam.id = "median";
    fam.evaluate = [](double x, double t) { return sign(x - t); };
    fam.continuous_in_t = false;
    fam.strictly_decreasing_in_t = false;
    fam.analytic_theta1 = [](double x) { return x; };
    fam.closed_form = [](const WeightedSample& s) -> std::optional<double> {
      if (!all_weights_equal(s)) return std::nullopt;
      return median_value(s.points());
    };
    return fam;
  }

  PsiFamily operator()(const QuantileSpec& spec) const {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  "quantile requires alpha in (0,1)");
    }
    const double alpha = spec.alpha;
    PsiFamily fam;
    fam.id = "quantile:alpha=" + std::to_string(alpha);
    fam.evaluate = [alpha](double x, double t) {
      if (x > t) return alpha;
      if (x < t) return alpha - 1.0;
      return 0.0;
    };
    fam.continuous_in_t = false;
    fam.strictly_decreasing_in_t = false;
    fam.analytic_theta1 = [](double x) { return x; };
    fam.closed_form = [alpha](const WeightedSample& s) -> std::optional<double> {
      if (!all_weights_equal(s)) return std::nullopt;
      const double n = double(s.size());
      double na = n * alpha;
      // Non-uniqueness at alpha in {1/n,...,(n-1)/n}: refuse rather than
      // pick a representative.
      if (std::abs(na - std::round(na)) < 1e-9) return std::nullopt;
      std::vector<double> xs = sorted_points(s);
      auto idx = std::size_t(std::ceil(na));          // 1-based
      auto idx2 = std::size_t(std::floor(na + 1.0));  // equal to idx off-grid
      return 0.5 * (xs[idx - 1] + xs[idx2 - 1]);
    };
    return fam;
  }

  PsiFamily operator()(const ExpectileSpec& spec) const {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  "expectile requires alpha in (0,1)");
    }
    const double alpha = spec.alpha;
    PsiFamily fam;
    fam.id = "expectile:alpha=" + std::to_string(alpha);
    fam.evaluate = [alpha](double x, double t) {
      if (x > t) return alpha * (x - t);
      if (x < t) return (1.0 - alpha) * (x - t);
      return 0.0;
    };
    fam.continuous_in_t = true;
    fam.strictly_decreasing_in_t = true;
    fam.analytic_theta1 = [](double x) { return x; };
    return fam;
  }

  PsiFamily operator()(const MathieuFamilySpec& spec) const {
    validate_mathieu(spec.f);
    const MathieuSpec f = spec.f;
    PsiFamily fam;
    fam.id = mathieu_id(f);
    fam.evaluate = [f](double x, double t) {
      double z = x - t;
      if (z == 0.0) return 0.0;
      return sign(z) * eval_f_mathieu(f, std::abs(z));
    };
    fam.continuous_in_t = true;
    fam.strictly_decreasing_in_t = (f.kind != MathieuKind::Huber);
    fam.analytic_theta1 = [](double x) { return x; };
    return fam;
  }

  PsiFamily operator()(const BajraktarevicSpec& spec) const {
    if (!spec.f || !spec.p || !spec.phi) {
      throw Error(ErrorCode::InvalidParameter,
                  "bajraktarevic requires f, p and phi");
    }
    auto f = spec.f;
    auto p = spec.p;
    auto phi = spec.phi;
    PsiFamily fam;
    fam.id = spec.label;
    fam.theta = f->domain();
    fam.evaluate = [f, p, phi](double x, double t) {
      return p(x) * (phi(x) - (*f)(t));
    };
    fam.continuous_in_t = false;  // f may jump
    fam.strictly_decreasing_in_t = true;
    fam.analytic_theta1 = [f, phi](double x) {
      return generalized_left_inverse(*f, phi(x));
    };
    fam.closed_form = [f, p, phi](
                          const WeightedSample& s) -> std::optional<double> {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        double lp = s.weights()[i] * p(s.points()[i]);
        num += lp * phi(s.points()[i]);
        den += lp;
      }
      return generalized_left_inverse(*f, num / den);
    };
    return fam;
  }

  PsiFamily operator()(const NormalMeanSpec& spec) const {
    if (!(spec.sigma > 0.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  "normal-mean requires sigma > 0");
    }
    const double inv_var = 1.0 / (spec.sigma * spec.sigma);
    PsiFamily fam;
    fam.id = "normal-mean:sigma=" + std::to_string(spec.sigma);
    fam.evaluate = [inv_var](double x, double t) { return (x - t) * inv_var; };
    fam.continuous_in_t = true;
    fam.strictly_decreasing_in_t = true;
    fam.analytic_theta1 = [](double x) { return x; };
    fam.closed_form = [](const WeightedSample& s) -> std::optional<double> {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        num += s.weights()[i] * s.points()[i];
        den += s.weights()[i];
      }
      return num / den;
    };
    return fam;
  }

  PsiFamily operator()(const NormalVarSpec& spec) const {
    const double m = spec.m;
    PsiFamily fam;
    fam.id = std::string(spec.rescaled ? "normal-var" : "normal-var-raw") +
             ":m=" + std::to_string(m);
    fam.theta = OpenInterval::positive();
    if (spec.rescaled) {
      // 2 s^2 * raw psi: equivalent zeros, strictly decreasing in s.
      fam.evaluate = [m](double x, double s) {
        return (x - m) * (x - m) - s;
      };
      fam.strictly_decreasing_in_t = true;
    } else {
      fam.evaluate = [m](double x, double s) {
        return ((x - m) * (x - m) - s) / (2.0 * s * s);
      };
      fam.strictly_decreasing_in_t = false;
    }
    fam.continuous_in_t = true;
    fam.analytic_theta1 = [m](double x) { return (x - m) * (x - m); };
    fam.closed_form = [m](const WeightedSample& s) -> std::optional<double> {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        num += s.weights()[i] * (s.points()[i] - m) * (s.points()[i] - m);
        den += s.weights()[i];
      }
      return num / den;
    };
    return fam;
  }

  PsiFamily operator()(const IsmSpec&) const {
    PsiFamily fam;
    fam.id = "ism";
    fam.theta = OpenInterval::positive();
    fam.x_domain = OpenInterval::bounded(0.0, 1.0);
    fam.evaluate = [](double x, double a) {
      return 1.0 / a + std::log1p(-x * x);
    };
    fam.continuous_in_t = true;
    fam.strictly_decreasing_in_t = true;
    fam.analytic_theta1 = [](double x) { return -1.0 / std::log1p(-x * x); };
    fam.closed_form = [](const WeightedSample& s) -> std::optional<double> {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        num += s.weights()[i];
        den += s.weights()[i] * std::log1p(-s.points()[i] * s.points()[i]);
      }
      return -num / den;
    };
    return fam;
  }

  PsiFamily operator()(const NormalMixtureSpec& spec) const {
    if (!(spec.sigma > 0.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  "normal-mixture requires sigma > 0");
    }
    const double sigma = spec.sigma;
    PsiFamily fam;
    fam.id = "normal-mixture:sigma=" + std::to_string(sigma);
    // Score of the half/half standard-normal + N(m, sigma^2) mixture in m,
    // evaluated through log-density differences so the exponent never
    // overflows: psi = (x-m) / (sigma^2 (1 + sigma e^A)),
    // A = (x-m)^2/(2 sigma^2) - x^2/2.
    fam.evaluate = [sigma](double x, double m) {
      double d = x - m;
      double a = d * d / (2.0 * sigma * sigma) - x * x / 2.0;
      if (a < 700.0) {
        return d / (sigma * sigma * (1.0 + sigma * std::exp(a)));
      }
      return d * std::exp(-a) / (sigma * sigma * sigma);
    };
    fam.continuous_in_t = true;
    fam.strictly_decreasing_in_t = false;
    fam.analytic_theta1 = [](double x) { return x; };
    return fam;
  }
};

}  // namespace

PsiFamily make_family(const FamilySpec& spec) {
  return std::visit(MakeFamily{}, spec);
}

double theta1(const PsiFamily& family, double x) {
  if (!family.analytic_theta1) {
    throw Error(ErrorCode::NoAnalyticTheta1,
                family.id + " declares no analytic theta1");
  }
  if (!family.x_domain.contains(x)) {
    throw Error(ErrorCode::DomainError,
                "x=" + std::to_string(x) + " outside the X domain of " +
                    family.id);
  }
  return (*family.analytic_theta1)(x);
}

namespace {

std::shared_ptr<const MonotoneFunction> builtin_monotone(
    const std::string& name) {
  if (name == "id") {
    return std::make_shared<MonotoneFunction>(
        [](double t) { return t; }, OpenInterval::whole(),
        RealFunction([](double y) { return y; }),
        RangeHull{std::nullopt, std::nullopt});
  }
  if (name == "cube") {
    return std::make_shared<MonotoneFunction>(
        [](double t) { return t * t * t; }, OpenInterval::whole(),
        RealFunction([](double y) { return std::cbrt(y); }),
        RangeHull{std::nullopt, std::nullopt});
  }
  if (name == "exp") {
    return std::make_shared<MonotoneFunction>(
        [](double t) { return std::exp(t); }, OpenInterval::whole(),
        RealFunction([](double y) { return std::log(y); }),
        RangeHull{0.0, std::nullopt});
  }
  throw Error(ErrorCode::ParseError,
              "unknown bajraktarevic builtin f '" + name + "'");
}

struct ParsedSpec {
  std::string tag;
  std::string subtag;
  std::map<std::string, std::string> kv;
};

ParsedSpec split_spec(const std::string& text) {
  ParsedSpec out;
  std::vector<std::string> parts;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ':')) parts.push_back(token);
  if (parts.empty() || parts[0].empty()) {
    throw Error(ErrorCode::ParseError, "empty family spec");
  }
  out.tag = parts[0];
  std::size_t i = 1;
  if (i < parts.size() && parts[i].find('=') == std::string::npos) {
    out.subtag = parts[i++];
  }
  if (i < parts.size()) {
    std::istringstream kvs(parts[i++]);
    std::string pair;
    while (std::getline(kvs, pair, ',')) {
      auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorCode::ParseError,
                    "expected k=v in family spec, got '" + pair + "'");
      }
      out.kv[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  if (i < parts.size()) {
    throw Error(ErrorCode::ParseError, "trailing spec segment '" + parts[i] +
                                           "' in '" + text + "'");
  }
  return out;
}

double kv_double(const ParsedSpec& spec, const std::string& key,
                 std::optional<double> fallback = {}) {
  auto it = spec.kv.find(key);
  if (it == spec.kv.end()) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::ParseError,
                spec.tag + " requires parameter '" + key + "'");
  }
  try {
    std::size_t consumed = 0;
    double v = std::stod(it->second, &consumed);
    if (consumed != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError,
                "cannot parse '" + it->second + "' for '" + key + "'");
  }
}

}  // namespace

PsiFamily parse_family_spec(const std::string& text) {
  ParsedSpec spec = split_spec(text);
  const std::string& tag = spec.tag;

  if (tag == "median") return make_family(MedianSpec{});
  if (tag == "quantile") {
    return make_family(QuantileSpec{kv_double(spec, "alpha")});
  }
  if (tag == "expectile") {
    return make_family(ExpectileSpec{kv_double(spec, "alpha")});
  }
  if (tag == "mathieu") {
    MathieuSpec f;
    if (spec.subtag == "huber") {
      f.kind = MathieuKind::Huber;
      f.beta = kv_double(spec, "beta", 1.0);
    } else if (spec.subtag == "catoni") {
      f.kind = MathieuKind::Catoni;
      f.b = kv_double(spec, "b", 1.0);
    } else if (spec.subtag == "poly") {
      f.kind = MathieuKind::Polynomial;
      f.p = int(kv_double(spec, "p", 2.0));
      f.beta = kv_double(spec, "beta", 1.0);
    } else if (spec.subtag == "catoni2") {
      f.kind = MathieuKind::Catoni2;
      f.alpha = kv_double(spec, "alpha", 1.5);
    } else if (spec.subtag == "l1l2") {
      f.kind = MathieuKind::L1L2;
    } else if (spec.subtag == "fair") {
      f.kind = MathieuKind::Fair;
    } else {
      throw Error(ErrorCode::ParseError,
                  "unknown mathieu subtag '" + spec.subtag + "'");
    }
    return make_family(MathieuFamilySpec{f});
  }
  if (tag == "bajraktarevic") {
    if (spec.subtag.empty()) {
      throw Error(ErrorCode::ParseError,
                  "bajraktarevic requires a builtin f, e.g. bajraktarevic:id");
    }
    BajraktarevicSpec b;
    b.f = builtin_monotone(spec.subtag);
    std::string pname = spec.kv.count("p") ? spec.kv.at("p") : "one";
    std::string phiname = spec.kv.count("phi") ? spec.kv.at("phi") : "id";
    if (phiname == "id") {
      b.phi = [](double x) { return x; };
    } else if (phiname == "cube") {
      b.phi = [](double x) { return x * x * x; };
    } else {
      throw Error(ErrorCode::ParseError, "unknown phi '" + phiname + "'");
    }
    if (pname == "one") {
      b.p = [](double) { return 1.0; };
    } else if (pname == "absphi1") {
      RealFunction phi = b.phi;
      b.p = [phi](double x) { return 1.0 + std::abs(phi(x)); };
    } else {
      throw Error(ErrorCode::ParseError, "unknown p '" + pname + "'");
    }
    b.label = "bajraktarevic:" + spec.subtag + ":p=" + pname +
              ",phi=" + phiname;
    return make_family(b);
  }
  if (tag == "normal-mean") {
    return make_family(NormalMeanSpec{kv_double(spec, "sigma", 1.0)});
  }
  if (tag == "normal-var") {
    return make_family(
        NormalVarSpec{kv_double(spec, "m", 0.0),
                      kv_double(spec, "raw", 0.0) == 0.0});
  }
  if (tag == "ism") return make_family(IsmSpec{});
  if (tag == "normal-mixture") {
    return make_family(NormalMixtureSpec{kv_double(spec, "sigma", 1.0)});
  }
  throw Error(ErrorCode::ParseError, "unknown family tag '" + tag + "'");
}

std::vector<FamilyDoc> family_catalog() {
  return {
      {"median", "sign(x - t), Theta = R; closed form: empirical median for "
                 "equal weights"},
      {"quantile:alpha=A", "alpha / 0 / alpha-1 step in x - t, A in (0,1); "
                           "closed form off the k/n grid for equal weights"},
      {"expectile:alpha=A", "asymmetric linear score, A in (0,1); strictly "
                            "decreasing in t"},
      {"mathieu:huber:beta=B", "sign(x-t) min(|x-t|, B), B > 0"},
      {"mathieu:catoni:b=B", "sign(x-t) ln(1 + z/B + z^2/(2B^2)), B > 0"},
      {"mathieu:poly:p=P,beta=B", "sign(x-t) z/(1+(z/B)^(1-1/P))"},
      {"mathieu:catoni2:alpha=A", "sign(x-t) ln(1 + z + z^A/A), A in (1,2)"},
      {"mathieu:l1l2", "(x-t)/sqrt(1 + (x-t)^2/2)"},
      {"mathieu:fair", "(x-t)/(1 + |x-t|)"},
      {"bajraktarevic:F[:p=P,phi=G]",
       "p(x)(phi(x) - f(t)); F in {id, cube, exp}, P in {one, absphi1}, "
       "G in {id, cube}; closed form: weighted f-mean of phi values"},
      {"normal-mean:sigma=S", "(x - t)/S^2, Theta = R; closed form: weighted "
                              "average"},
      {"normal-var:m=M[,raw=1]", "(x-M)^2 - s on Theta = (0, inf) (raw=1: "
                                 "unrescaled score); closed form: weighted "
                                 "average of (x-M)^2"},
      {"ism", "1/a + ln(1 - x^2), X = (0,1), Theta = (0, inf); closed form: "
              "-sum(w)/sum(w ln(1-x^2))"},
      {"normal-mixture:sigma=S", "score in m of the half/half standard-normal "
                                 "+ N(m, S^2) mixture"},
  };
}

}  // namespace psisolve
