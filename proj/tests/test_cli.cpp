#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "drillvol/cli.hpp"
#include "drillvol/geodesic_data.hpp"

using namespace drillvol;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> keys(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("drillvol_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("numeric tokens") {
  CHECK(cli::parse_numeric_token("0.5") == 0.5);
  CHECK(cli::parse_numeric_token("ln3/2") == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-16));
  CHECK(cli::parse_numeric_token("ln3") == doctest::Approx(std::log(3.0)).epsilon(1e-16));
  CHECK_THROWS_AS(cli::parse_numeric_token("ln5"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_numeric_token("0.5x"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_numeric_token("nan"), std::invalid_argument);
}

TEST_CASE("usage errors exit 2") {
  const Result none = invoke({});
  CHECK(none.code == cli::kExitUsage);
  CHECK(none.err.rfind("error:usage:", 0) == 0);
  CHECK(none.err.find("Usage:") != std::string::npos);
  CHECK(invoke({"bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"bound", "--vol", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"bound", "--vol", "x", "--length", "1", "--R", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"minvol", "--frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"--precision", "40", "minvol"}).code == cli::kExitUsage);
}

TEST_CASE("minvol") {
  const Result r = invoke({"minvol"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.empty());
  const auto kv = keys(r.out);
  CHECK(kv.at("lower_bound").rfind("0.3209", 0) == 0);
  CHECK(kv.at("radius_bound").rfind("0.9557", 0) == 0);
  CHECK(kv.at("lower_bound_exceeds_0.32") == "true");
  CHECK(kv.at("excluded_cases") == "2,3");
  CHECK(r.out == invoke({"minvol"}).out);
}

TEST_CASE("bound") {
  const Result r = invoke({"bound", "--vol", "0.943", "--length", "0.5", "--R", "0.5493"});
  CHECK(r.code == cli::kExitOk);
  const auto kv = keys(r.out);
  CHECK(kv.count("bound_tight"));
  CHECK(kv.count("bound_coarse"));
  CHECK(kv.at("tube_fits") == "true");
  const auto exact = keys(invoke({"bound", "--vol", "0.943", "--length", "0.5", "--R", "ln3/2"}).out);
  CHECK(exact.at("k") == "2.5");
  CHECK(exact.at("bound_coarse") == "5.96405566708");
  CHECK(exact.at("extended_tube_volume") == exact.at("extended_tube_volume_quadrature"));

  const Result bad = invoke({"bound", "--vol", "-1", "--length", "0.5", "--R", "1"});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(bad.err.rfind("error:parameter:", 0) == 0);
}

TEST_CASE("precision flag and environment override") {
  const auto kv = keys(invoke({"--precision", "4", "minvol"}).out);
  CHECK(kv.at("lower_bound") == "0.3209");
  setenv(cli::kPrecisionEnv, "6", 1);
  CHECK(keys(invoke({"minvol"}).out).at("lower_bound") == "0.32094");
  setenv(cli::kPrecisionEnv, "six", 1);
  CHECK(invoke({"minvol"}).code == cli::kExitUsage);
  unsetenv(cli::kPrecisionEnv);
}

TEST_CASE("curvature") {
  const Result r = invoke({"curvature", "--R", "0.8"});
  CHECK(r.code == cli::kExitOk);
  const auto kv = keys(r.out);
  CHECK(kv.at("K_thetalambda") == "-1");
  CHECK(kv.at("k_limit") == kv.at("coth_R_coth_2R"));
  const Result v = invoke({"curvature", "--R", "0.8", "--validate", "--samples", "20"});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out.find("pass=true") != std::string::npos);
  CHECK(invoke({"curvature", "--R", "-1"}).code == cli::kExitFailure);
}

TEST_CASE("smooth writes samples") {
  const std::string csv = temp_path("smooth.csv");
  const Result r = invoke({"smooth", "--R", "0.8", "--eps", "1e-2", "--csv", csv, "--samples", "50"});
  CHECK(r.code == cli::kExitOk);
  const auto kv = keys(r.out);
  CHECK(kv.count("iota"));
  CHECK(kv.count("omega"));
  CHECK(kv.count("delta"));
  CHECK(kv.at("k_eps") == "3.70150336271");
  const std::string body = slurp(csv);
  CHECK(std::count(body.begin(), body.end(), '\n') == 51);
  std::filesystem::remove(csv);
  CHECK(invoke({"smooth", "--R", "0.8", "--eps", "1e-2", "--component", "h"}).code ==
        cli::kExitUsage);
  const Result wide = invoke({"smooth", "--R", "0.1", "--eps", "0.1"});
  CHECK(wide.code == cli::kExitFailure);
  CHECK(wide.err.rfind("error:width:", 0) == 0);
}

TEST_CASE("analyze with report and plot") {
  const std::string report = temp_path("report.csv"), svg = temp_path("plot.svg");
  const Result r = invoke({"analyze", "--input", DRILLVOL_DATA_DIR "/synthetic_weeks.csv",
                           "--report", report, "--plot", svg, "--style", "log10"});
  CHECK(r.code == cli::kExitOk);
  CHECK(keys(r.out).at("violations") == "5");
  std::ifstream in(report);
  CHECK(parse_records(in).size() == 40);
  const std::string first = slurp(svg);
  invoke({"analyze", "--input", DRILLVOL_DATA_DIR "/synthetic_weeks.csv", "--plot", svg,
          "--style", "log10"});
  CHECK(slurp(svg) == first);
  std::filesystem::remove(report);
  std::filesystem::remove(svg);

  const std::string broken = temp_path("broken.csv");
  std::ofstream(broken) << kInputHeader << "\nweeks,1,oops,,0.9,2\n";
  const Result p = invoke({"analyze", "--input", broken});
  CHECK(p.code == cli::kExitFailure);
  CHECK(p.err.rfind("error:parse:", 0) == 0);
  std::filesystem::remove(broken);

  const Result missing = invoke({"analyze", "--input", "/nonexistent.csv"});
  CHECK(missing.code == cli::kExitFailure);
  CHECK(missing.err.rfind("error:io:", 0) == 0);
}

TEST_CASE("version banner only on request") {
  const Result v = invoke({"--version"});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out.find("drillvol") != std::string::npos);
  CHECK(invoke({"minvol"}).out.find("drillvol ") == std::string::npos);
}

}
