#include "psisolve/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "psisolve/estimators.hpp"
#include "psisolve/verify.hpp"

namespace psisolve::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_double(const std::string& token, int line, int position) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError,
                "cannot parse '" + token + "' as a number at line " +
                    std::to_string(line) + ", token " +
                    std::to_string(position));
  }
  return value;
}

bool looks_numeric(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  auto [ptr, ec] = std::from_chars(begin, begin + token.size(), value);
  return ec == std::errc{} && ptr == begin + token.size();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) cells.push_back("");
  return cells;
}

std::string slurp(const std::string& path, std::istream& input) {
  if (path == "-") {
    std::ostringstream os;
    os << input.rdbuf();
    return os.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

std::vector<double> parse_plain(const std::string& text) {
  std::vector<double> values;
  std::istringstream is(text);
  std::string token;
  int position = 0;
  while (is >> token) {
    ++position;
    values.push_back(parse_double(token, 1, position));
  }
  return values;
}

std::vector<double> parse_csv(const std::string& text, int column) {
  if (column < 0) {
    throw Error(ErrorCode::BadOptions, "--csv-col must be nonnegative");
  }
  std::vector<double> values;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split(line, ',');
    if (std::size_t(column) >= cells.size()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + " has only " +
                      std::to_string(cells.size()) + " columns");
    }
    const std::string& cell = cells[std::size_t(column)];
    if (values.empty() && lineno == 1 && !looks_numeric(cell)) {
      continue;  // header row
    }
    values.push_back(parse_double(cell, lineno, column + 1));
  }
  return values;
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& flag) {
  std::vector<double> values;
  int position = 0;
  for (const std::string& token : split(text, ',')) {
    ++position;
    if (token.empty()) {
      throw Error(ErrorCode::ParseError,
                  flag + ": empty item at position " +
                      std::to_string(position));
    }
    values.push_back(parse_double(token, 1, position));
  }
  if (values.empty()) throw Error(ErrorCode::EmptyInput, flag + " is empty");
  return values;
}

ordered_json pair_json(const std::pair<double, double>& p) {
  return ordered_json::array({p.first, p.second});
}

ordered_json outcome_json(const SignChangeOutcome& outcome) {
  ordered_json j;
  j["kind"] = sign_change_kind_name(outcome.kind);
  j["location"] = outcome.kind == SignChangeKind::Point
                      ? ordered_json(outcome.location)
                      : ordered_json(nullptr);
  j["bracket"] = outcome.kind == SignChangeKind::Point
                     ? pair_json(outcome.bracket)
                     : ordered_json(nullptr);
  j["plateau"] = outcome.kind == SignChangeKind::ZeroPlateau
                     ? pair_json(outcome.plateau)
                     : ordered_json(nullptr);
  if (!outcome.witnesses.empty()) {
    ordered_json w = ordered_json::array();
    for (const auto& [t, v] : outcome.witnesses) {
      w.push_back(ordered_json::array({t, v}));
    }
    j["witnesses"] = std::move(w);
  }
  return j;
}

ordered_json estimate_json(const EstimateResult& result) {
  ordered_json j = outcome_json(result.outcome);
  j["closed_form"] = result.closed_form_value
                         ? ordered_json(*result.closed_form_value)
                         : ordered_json(nullptr);
  j["agreement"] = result.agreement ? ordered_json(*result.agreement)
                                    : ordered_json(nullptr);
  return j;
}

ordered_json report_json(const PropertyReport& report) {
  ordered_json j;
  j["property_id"] = report.property_id;
  j["verdict"] = verdict_name(report.verdict);
  ordered_json w = ordered_json::array();
  for (const auto& [a, b] : report.witnesses) {
    w.push_back(ordered_json::array({a, b}));
  }
  j["witnesses"] = std::move(w);
  j["grid"] = {{"lo", report.grid.lo},
               {"hi", report.grid.hi},
               {"count", report.grid.count},
               {"description", report.grid.description}};
  j["margin"] = report.margin;
  j["note"] = report.note;
  return j;
}

std::string note_field(const std::string& note, const std::string& key) {
  auto pos = note.find(key + "=");
  if (pos == std::string::npos) return "";
  pos += key.size() + 1;
  auto end = note.find(';', pos);
  return note.substr(pos, end == std::string::npos ? end : end - pos);
}

ordered_json reproduce_json(const std::string& id,
                            const PropertyReport& report) {
  ordered_json j;
  j["id"] = id;
  j["expected"] = note_field(report.note, "expected");
  j["computed"] = note_field(report.note, "computed");
  j["match"] = report.verdict == Verdict::HoldsOnGrid;
  ordered_json w = ordered_json::array();
  for (const auto& [a, b] : report.witnesses) {
    w.push_back(ordered_json::array({a, b}));
  }
  j["witnesses"] = std::move(w);
  return j;
}

void emit(const ordered_json& j, const std::string& format,
          std::ostream& out) {
  if (format == "table") {
    std::size_t width = 0;
    for (const auto& item : j.items()) {
      width = std::max(width, item.key().size());
    }
    for (const auto& item : j.items()) {
      std::string value = item.value().is_string()
                              ? item.value().get<std::string>()
                              : item.value().dump();
      out << std::left << std::setw(int(width) + 2) << item.key() << value
          << "\n";
    }
  } else {
    out << j.dump() << "\n";
  }
}

struct CommonOptions {
  std::string psi;
  std::string data_path;
  std::string weights_path;
  std::optional<int> csv_col;
  double tolerance = 1e-10;
  int grid = 4096;
  std::optional<std::uint64_t> seed_flag;
  std::string format = "json";
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PSISOLVE_SEED")) {
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(env, env + std::string(env).size(), value);
    if (ec == std::errc{} && *ptr == '\0') return value;
    throw Error(ErrorCode::BadOptions,
                "PSISOLVE_SEED is not a nonnegative integer");
  }
  return kDefaultSeed;
}

SolverOptions solver_options(const CommonOptions& c) {
  SolverOptions opts;
  opts.tolerance = c.tolerance;
  opts.scan_points = c.grid;
  opts.validate();
  return opts;
}

WeightedSample load_sample(const CommonOptions& c, std::istream& in) {
  std::vector<double> points = ingest_data(c.data_path, in, c.csv_col);
  std::vector<double> weights;
  if (c.weights_path.empty()) {
    weights.assign(points.size(), 1.0);
  } else {
    weights = ingest_data(c.weights_path, in);
  }
  return WeightedSample(std::move(points), std::move(weights));
}

int cmd_estimate(const CommonOptions& c, std::istream& in, std::ostream& out) {
  PsiFamily family = parse_family_spec(c.psi);
  EstimateResult result =
      estimate(family, load_sample(c, in), solver_options(c));
  emit(estimate_json(result), c.format, out);
  return result.solver_anomaly ? 2 : 0;
}

int cmd_verify(const CommonOptions& c, const std::string& check, double x,
               double y, int n, bool strict, int count, int max_n, double lo,
               double hi, double eps, std::istream&, std::ostream& out) {
  PsiFamily family = parse_family_spec(c.psi);
  PropertyReport report;
  if (check == "ratio") {
    report = check_ratio_monotone(family, x, y, c.grid, strict);
  } else if (check == "levels") {
    report = check_levels_for_Tn(family, x, y, n, c.grid);
  } else if (check == "eps") {
    RatioFunction ratio(family, x, y);
    report = check_eps_increasing([&ratio](double t) { return ratio(t); },
                                  ratio.domain(), eps, strict, c.grid);
  } else if (check == "corpus") {
    SolverOptions opts = solver_options(c);
    auto corpus =
        random_corpus(count, max_n, lo, hi, resolve_seed(c.seed_flag));
    report = check_Tn_lambda(family, corpus, opts);
  } else {
    throw Error(ErrorCode::BadOptions,
                "--check must be ratio, levels, eps, or corpus");
  }
  emit(report_json(report), c.format, out);
  return 0;
}

int cmd_expectation(const CommonOptions& c, const std::string& atoms,
                    const std::string& probs, std::istream& in,
                    std::ostream& out) {
  PsiFamily family = parse_family_spec(c.psi);
  std::vector<double> a, p;
  if (!atoms.empty() || !probs.empty()) {
    if (atoms.empty() || probs.empty()) {
      throw Error(ErrorCode::BadOptions,
                  "--atoms and --probs must be given together");
    }
    a = parse_list(atoms, "--atoms");
    p = parse_list(probs, "--probs");
  } else if (!c.data_path.empty()) {
    // Two-column file: atom probability per line.
    std::vector<double> flat = ingest_data(c.data_path, in);
    if (flat.size() % 2 != 0) {
      throw Error(ErrorCode::ParseError,
                  "expectation data must have atom/probability pairs");
    }
    for (std::size_t i = 0; i < flat.size(); i += 2) {
      a.push_back(flat[i]);
      p.push_back(flat[i + 1]);
    }
  } else {
    throw Error(ErrorCode::BadOptions,
                "expectation needs --atoms/--probs or --data");
  }
  DiscreteDistribution dist(std::move(a), std::move(p));
  SignChangeOutcome outcome =
      expectation_sign_change(family, dist, solver_options(c));
  emit(outcome_json(outcome), c.format, out);
  bool anomaly = family.strictly_decreasing_in_t && family.analytic_theta1 &&
                 outcome.kind != SignChangeKind::Point;
  return anomaly ? 2 : 0;
}

int cmd_reproduce(const std::string& id, const CommonOptions& c,
                  std::ostream& out) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = counterexample_ids();
  } else {
    ids.push_back(id);
  }
  bool all_match = true;
  for (const std::string& one : ids) {
    PropertyReport report = reproduce(one);
    if (report.verdict != Verdict::HoldsOnGrid) all_match = false;
    emit(reproduce_json(one, report), c.format, out);
  }
  return all_match ? 0 : 1;
}

int cmd_list_families(const CommonOptions& c, std::ostream& out) {
  for (const FamilyDoc& doc : family_catalog()) {
    ordered_json j;
    j["spec"] = doc.spec;
    j["description"] = doc.description;
    emit(j, c.format, out);
  }
  return 0;
}

}  // namespace

std::vector<double> ingest_data(const std::string& path, std::istream& input,
                                std::optional<int> csv_col) {
  std::string text = slurp(path, input);
  bool csv = csv_col.has_value() ||
             (path.size() > 4 && path.substr(path.size() - 4) == ".csv");
  std::vector<double> values =
      csv ? parse_csv(text, csv_col.value_or(0)) : parse_plain(text);
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "no values found in '" + path + "'");
  }
  return values;
}

int run_cli(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"weighted psi-estimators as points of sign change"};
  app.require_subcommand(1);

  CommonOptions c;
  std::string check = "ratio";
  double x = 0.0, y = 1.0, lo = -10.0, hi = 10.0, eps = 1.0;
  int n = 2, count = 100, max_n = 8;
  bool strict = false;
  std::string atoms, probs, reproduce_id;
  int csv_col_value = -1;

  auto add_common = [&](CLI::App* sub, bool needs_psi) {
    if (needs_psi) {
      sub->add_option("--psi", c.psi, "family spec, e.g. quantile:alpha=0.3")
          ->required();
    }
    sub->add_option("--tol", c.tolerance, "bracket width tolerance");
    sub->add_option("--grid", c.grid, "scan/check grid size");
    sub->add_option("--seed", c.seed_flag, "random seed");
    sub->add_option("--format", c.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* est = app.add_subcommand("estimate", "solve a weighted psi-sum");
  add_common(est, true);
  est->add_option("--data", c.data_path, "points file or - for stdin")
      ->required();
  est->add_option("--weights", c.weights_path, "weights file");
  est->add_option("--csv-col", csv_col_value, "0-based CSV column");

  CLI::App* ver = app.add_subcommand("verify", "run a property check");
  add_common(ver, true);
  ver->add_option("--check", check, "ratio, levels, eps, or corpus");
  ver->add_option("--x", x, "first sample point");
  ver->add_option("--y", y, "second sample point");
  ver->add_option("--n", n, "sample size for level checks");
  ver->add_option("--eps", eps, "epsilon for the eps check");
  ver->add_flag("--strict", strict, "require strict increase");
  ver->add_option("--count", count, "corpus size");
  ver->add_option("--max-n", max_n, "max sample size in the corpus");
  ver->add_option("--lo", lo, "corpus point range, lower");
  ver->add_option("--hi", hi, "corpus point range, upper");

  CLI::App* exp_ = app.add_subcommand(
      "expectation", "sign change of the psi-expectation function");
  add_common(exp_, true);
  exp_->add_option("--atoms", atoms, "comma-separated atoms");
  exp_->add_option("--probs", probs, "comma-separated probabilities");
  exp_->add_option("--data", c.data_path, "two-column atom/probability file");

  CLI::App* rep =
      app.add_subcommand("reproduce", "re-run a catalogued counterexample");
  add_common(rep, false);
  rep->add_option("id", reproduce_id, "counterexample id or 'all'")
      ->required();

  CLI::App* lst = app.add_subcommand("list-families", "family catalog");
  add_common(lst, false);

  try {
    app.parse(argc, argv);
    if (csv_col_value >= 0) c.csv_col = csv_col_value;
    if (c.grid < 16) {
      throw Error(ErrorCode::BadOptions, "--grid must be at least 16");
    }
    if (!(c.tolerance > 0.0)) {
      throw Error(ErrorCode::BadOptions, "--tol must be positive");
    }

    if (est->parsed()) return cmd_estimate(c, in, out);
    if (ver->parsed()) {
      return cmd_verify(c, check, x, y, n, strict, count, max_n, lo, hi, eps,
                        in, out);
    }
    if (exp_->parsed()) return cmd_expectation(c, atoms, probs, in, out);
    if (rep->parsed()) return cmd_reproduce(reproduce_id, c, out);
    if (lst->parsed()) return cmd_list_families(c, out);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    ordered_json j;
    j["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    ordered_json j;
    j["error"] = {{"code", error_code_name(e.code())},
                  {"message", e.what()}};
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = {{"code", "Internal"}, {"message", e.what()}};
    err << j.dump() << "\n";
    return 2;
  }
}

}  // namespace psisolve::cli
