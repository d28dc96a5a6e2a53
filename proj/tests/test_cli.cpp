#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "psisolve/cli.hpp"

using namespace psisolve;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args,
              const std::string& stdin_text = "") {
  std::vector<const char*> argv = {"psisolve"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int status = cli::run_cli(int(argv.size()), argv.data(), in, out, err);
  return {status, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path path = fs::temp_directory_path() / name;
  std::ofstream file(path);
  file << content;
  return path;
}

}  // namespace

TEST_CASE("ingest: whitespace-separated floats") {
  auto path = write_temp("psisolve_plain.txt", "1 2 3\n");
  std::istringstream in;
  CHECK(cli::ingest_data(path.string(), in) ==
        std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("ingest: stdin via dash") {
  std::istringstream in("4.5 -1e2\n");
  CHECK(cli::ingest_data("-", in) == std::vector<double>{4.5, -100.0});
}

TEST_CASE("ingest: csv column with header") {
  auto path = write_temp("psisolve_cols.csv", "x,y\n1,4\n2,5\n");
  std::istringstream in;
  CHECK(cli::ingest_data(path.string(), in, 1) ==
        std::vector<double>{4.0, 5.0});
  // .csv suffix alone selects column 0.
  CHECK(cli::ingest_data(path.string(), in) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("ingest: parse and empty errors") {
  auto bad = write_temp("psisolve_bad.txt", "1 abc");
  std::istringstream in;
  try {
    cli::ingest_data(bad.string(), in);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("token 2") != std::string::npos);
  }

  auto empty = write_temp("psisolve_empty.txt", "   \n");
  try {
    cli::ingest_data(empty.string(), in);
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }

  try {
    cli::ingest_data("/nonexistent/file.txt", in);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}

TEST_CASE("estimate: quantile point with closed form") {
  auto data = write_temp("psisolve_q.txt", "4 1 3 2\n");
  auto r = run({"estimate", "--psi", "quantile:alpha=0.3", "--data",
                data.string()});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "Point");
  CHECK(std::abs(j["location"].get<double>() - 2.0) < 1e-8);
  CHECK(j["closed_form"].get<double>() == doctest::Approx(2.0));
  CHECK(j["agreement"].get<double>() <= 1e-8);
}

TEST_CASE("estimate: even-n median prints plateau and closed form") {
  auto data = write_temp("psisolve_m.txt", "1 2\n");
  auto r = run({"estimate", "--psi", "median", "--data", data.string()});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "ZeroPlateau");
  CHECK(j["location"].is_null());
  REQUIRE(j["plateau"].is_array());
  CHECK(std::abs(j["plateau"][0].get<double>() - 1.0) < 1e-6);
  CHECK(std::abs(j["plateau"][1].get<double>() - 2.0) < 1e-6);
  CHECK(j["closed_form"].get<double>() == doctest::Approx(1.5));
  CHECK(j["agreement"].is_null());
}

TEST_CASE("estimate: weights file and stdin data") {
  auto weights = write_temp("psisolve_w.txt", "1 1 2\n");
  auto r = run({"estimate", "--psi", "bajraktarevic:id", "--data", "-",
                "--weights", weights.string()},
               "1 2 3\n");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["closed_form"].get<double>() == doctest::Approx(2.25));
}

TEST_CASE("estimate: table format") {
  auto data = write_temp("psisolve_t.txt", "1 2 3\n");
  auto r = run({"estimate", "--psi", "median", "--data", data.string(),
                "--format", "table"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("kind") != std::string::npos);
  CHECK(r.out.find("Point") != std::string::npos);
}

TEST_CASE("verify: ratio check reports a property verdict") {
  auto r = run({"verify", "--psi", "expectile:alpha=0.3", "--check", "ratio",
                "--x", "0", "--y", "1", "--strict", "--grid", "128"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "holds-on-grid");

  auto v = run({"verify", "--psi", "normal-mixture:sigma=1", "--check",
                "ratio", "--x", "1", "--y", "5", "--grid", "512"});
  REQUIRE(v.status == 0);  // a violated verdict is a successful computation
  auto jv = nlohmann::json::parse(v.out);
  CHECK(jv["verdict"] == "violated");
}

TEST_CASE("expectation: atoms and probabilities") {
  auto r = run({"expectation", "--psi", "expectile:alpha=0.5", "--atoms",
                "1,3", "--probs", "0.5,0.5"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "Point");
  CHECK(std::abs(j["location"].get<double>() - 2.0) < 1e-8);

  auto bad = run({"expectation", "--psi", "median", "--atoms", "1,2"});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("reproduce: single id and the full suite") {
  auto r = run({"reproduce", "huber-T2"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["id"] == "huber-T2");
  CHECK(j["match"] == true);
  CHECK(j["computed"].get<std::string>().find("ZeroPlateau") !=
        std::string::npos);

  auto all = run({"reproduce", "all"});
  REQUIRE(all.status == 0);
  int lines = 0;
  std::istringstream is(all.out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ++lines;
    auto obj = nlohmann::json::parse(line);
    CHECK(obj["match"] == true);
  }
  CHECK(lines == 6);

  auto unknown = run({"reproduce", "bogus"});
  CHECK(unknown.status == 1);
  CHECK(unknown.err.find("UnknownId") != std::string::npos);
}

TEST_CASE("list-families prints the catalog") {
  auto r = run({"list-families"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("median") != std::string::npos);
  CHECK(r.out.find("quantile") != std::string::npos);
  CHECK(r.out.find("ism") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical reports") {
  auto a = run({"reproduce", "all", "--seed", "7", "--format", "json"});
  auto b = run({"reproduce", "all", "--seed", "7", "--format", "json"});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("emitted json round-trips byte-identically") {
  auto data = write_temp("psisolve_rt.txt", "0.1 0.2 0.30000000000000004\n");
  auto r = run({"estimate", "--psi", "normal-mean:sigma=1", "--data",
                data.string()});
  REQUIRE(r.status == 0);
  std::string line = r.out.substr(0, r.out.find('\n'));
  auto parsed = nlohmann::ordered_json::parse(line);
  CHECK(parsed.dump() == line);
}

TEST_CASE("input errors exit with status 1 and a json error object") {
  auto r = run({"estimate", "--psi", "nonsense", "--data", "-"}, "1 2\n");
  CHECK(r.status == 1);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["code"] == "ParseError");

  auto missing = run({"estimate", "--psi", "median"});
  CHECK(missing.status == 1);
  CHECK_FALSE(missing.err.empty());

  auto usage = run({"frobnicate"});
  CHECK(usage.status == 1);
}

TEST_CASE("help exits zero") {
  auto r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("estimate") != std::string::npos);
}

TEST_CASE("environment seed must be numeric when used") {
  setenv("PSISOLVE_SEED", "not-a-number", 1);
  auto r = run({"verify", "--psi", "mathieu:catoni:b=1", "--check", "corpus",
                "--count", "3", "--max-n", "3", "--grid", "64"});
  unsetenv("PSISOLVE_SEED");
  CHECK(r.status == 1);
  CHECK(r.err.find("PSISOLVE_SEED") != std::string::npos);

  setenv("PSISOLVE_SEED", "123", 1);
  auto ok = run({"verify", "--psi", "mathieu:catoni:b=1", "--check", "corpus",
                 "--count", "3", "--max-n", "3", "--grid", "64"});
  unsetenv("PSISOLVE_SEED");
  CHECK(ok.status == 0);
}
