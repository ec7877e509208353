#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pvalent/cli.hpp"
#include "support.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = pvalent::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> with_class(std::vector<std::string> args, const pvalent::ClassParams& cp) {
  args.emplace_back("--p");
  args.push_back(std::to_string(cp.p));
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  for (const auto& [flag, v] : {std::pair{"--alpha", cp.alpha}, {"--A", cp.A}, {"--B", cp.B}, {"--mu", cp.mu},
                                {"--delta", cp.delta}}) {
    args.emplace_back(flag);
    args.push_back(num(v));
  }
  return args;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pvalent_test_" + name);
}

const std::vector<std::string> kCanonical = {"--alpha", "0", "--A", "1", "--B", "-1"};

std::vector<std::string> canonical(std::vector<std::string> args) {
  args.insert(args.end(), kCanonical.begin(), kCanonical.end());
  return args;
}

}  // namespace

TEST_CASE("check reads a series from stdin") {
  const auto r = run(canonical({"check", "--class", "r", "-"}), R"({"p": 1, "coeffs": [[2, 0.25]]})");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["sum"] == 1.0);
  CHECK(j["member"] == true);
  CHECK(j["class"] == "r");
}

TEST_CASE("extremal output round-trips through check") {
  auto rng = testing::make_rng(81);
  const auto path = temp_file("extremal.json");
  for (int i = 0; i < 20; ++i) {
    const auto cp = pvalent::random_class_params(rng);
    const int k = std::uniform_int_distribution<int>(cp.p + 1, cp.p + 8)(rng);
    for (std::string kind : {"r", "p"}) {
      const auto made = run(with_class({"extremal", "--k", std::to_string(k), "--class", kind, "-o", path.string()}, cp));
      REQUIRE(made.code == 0);
      const auto checked = run(with_class({"check", "--class", kind, path.string()}, cp));
      REQUIRE(checked.code == 0);
      CHECK(std::abs(json::parse(checked.out)["margin"].get<double>()) <= 1e-10);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("errors carry a kind and the matching exit code") {
  auto r = run(canonical({"check", "--class", "r", "-"}), "{not json");
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "ParseError");

  r = run(canonical({"check", "--class", "r", "/nonexistent/series.json"}));
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "IoError");

  r = run({"check", "--class", "r", "--alpha", "1", "--A", "1", "--B", "0", "-"}, R"({"p": 1})");
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "ParameterOutOfRange");

  r = run({"check", "--class", "q", "-"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "BadFlag");

  r = run({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "BadFlag");

  r = run(canonical({"fracbound", "--theorem", "6", "--c", "1", "--eta", "0.5"}));
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "BadFlag");

  r = run(canonical({"oracle", "--check", "starlike", "--zeta", "0", "--r", "0.5", "-"}),
          R"({"p": 1, "coeffs": [[2, 2.0]]})");
  CHECK(r.code == 1);
  const auto pole = json::parse(r.err);
  CHECK(pole["error"] == "PoleOnGrid");
  CHECK(pole["location"]["re"].get<double>() == doctest::Approx(0.5));

  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fracbound") != std::string::npos);
}

TEST_CASE("sweep outputs have stable headers") {
  auto r = run(canonical({"distortion", "--m", "0"}));
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "r,lower,upper");
  std::istringstream lines(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 19);

  for (int index = 7; index <= 10; ++index) {
    r = run(canonical({"fracbound", "--theorem", std::to_string(index), "--c", "1", "--eta", "0.5"}));
    REQUIRE(r.code == 0);
    CHECK(first_line(r.out) == "r,lower,upper");
    r = run(canonical({"fracbound", "--theorem", std::to_string(index), "--c", "1", "--eta", "0.5", "--as-printed"}));
    CHECK(first_line(r.out) == "r,lower,upper,printed_lower,printed_upper");
  }

  r = run(canonical({"distortion", "--m", "1", "--format", "json", "--steps", "3"}));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["samples"].size() == 3);
  CHECK(j["certified"] == true);
}

TEST_CASE("uncertified sweeps warn on stderr") {
  const auto r = run({"distortion", "--m", "0", "--alpha", "0", "--A", "1", "--B", "0", "--mu", "0.9", "--delta", "0"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("hadamard and radius reports") {
  auto r = run(canonical({"hadamard", "--extremal"}));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["order"].get<double>() == doctest::Approx(6.0 / 7.0));

  r = run(canonical({"hadamard", "--extremal", "--beta", "0.5"}));
  CHECK(json::parse(r.out)["order"].get<double>() == doctest::Approx(10.0 / 11.0));

  r = run(canonical({"hadamard"}));
  CHECK(r.code == 1);

  r = run(canonical({"radius", "--kind", "starlike", "--zeta", "0"}));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["radius"].get<double>() == doctest::Approx(2.0));
  CHECK(j["whole_disk"] == true);
}

TEST_CASE("rafid closed form and quadrature agree") {
  const auto r = run({"rafid", "--mu", "0.3", "--delta", "0.6", "--re", "0.4", "--im", "0.2", "-"},
                     R"({"p": 2, "coeffs": [[3, 0.1], [5, 0.02]]})");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["relative_difference"].get<double>() <= 1e-10);
}

TEST_CASE("selftest seed from the environment must be an integer") {
  ::setenv("PVALENT_SEED", "not-a-number", 1);
  const auto r = run({"selftest"});
  ::unsetenv("PVALENT_SEED");
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "BadFlag");
}
