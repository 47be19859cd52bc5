#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mulab/cli.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mulab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CaptureStderr {
  std::ostringstream captured;
  std::streambuf* old;
  CaptureStderr() : old(std::cerr.rdbuf(captured.rdbuf())) {}
  ~CaptureStderr() { std::cerr.rdbuf(old); }
};

int run(const std::vector<std::string>& args) { return mulab::cli::run(args); }

}  // namespace

TEST_CASE("simulate writes a deterministic trajectory csv") {
  TempDir tmp;
  const std::vector<std::string> args = {
      "simulate", "--map", "interaction", "--b", "2",    "--x0",  "1",
      "--steps",  "1000",  "--seed",      "42", "--out", tmp.file("t.csv")};
  REQUIRE(run(args) == 0);
  const std::string first = fixtures::read_file(tmp.file("t.csv"));
  CHECK(first.find("t,x,event\n") != std::string::npos);
  CHECK(first.find("# mulab 0.1.0\n") != std::string::npos);
  CHECK(first.find("0,1,\n") != std::string::npos);

  REQUIRE(run(args) == 0);
  CHECK(fixtures::read_file(tmp.file("t.csv")) == first);
}

TEST_CASE("simulate rejects a mismatched parameter letter") {
  CaptureStderr capture;
  const int code = run({"simulate", "--map", "interaction", "--c", "2", "--x0", "1",
                        "--steps", "10"});
  CHECK(code == 2);
}

TEST_CASE("simulate usage errors exit with 2") {
  CaptureStderr capture;
  CHECK(run({"simulate", "--map", "nosuch", "--x0", "1", "--steps", "5"}) == 2);
  CHECK(run({"simulate"}) == 2);
  CHECK(run({}) == 2);
  CHECK(run({"nosuchcommand"}) == 2);
}

TEST_CASE("simulate maps domain errors to exit 1 with error json") {
  CaptureStderr capture;
  const int code = run({"simulate", "--map", "logistic", "--a", "-1", "--x0", "0.5",
                        "--steps", "10"});
  CHECK(code == 1);
  const auto j = nlohmann::json::parse(capture.captured.str());
  CHECK(j.contains("error"));
  CHECK(j.contains("message"));
}

TEST_CASE("sweep writes csv and json summary") {
  TempDir tmp;
  const std::vector<std::string> args = {
      "sweep",  "--map",  "organization",        "--grid",    "1,2",
      "--runs", "50",     "--cap",               "100000",    "--x0",
      "0.5",    "--seed", "7",                   "--out",     tmp.file("s.csv"),
      "--summary", tmp.file("s.json")};
  REQUIRE(run(args) == 0);

  const std::string csv = fixtures::read_file(tmp.file("s.csv"));
  CHECK(csv.find("param,run,termination_step\n") != std::string::npos);
  CHECK(csv.find("1,0,") != std::string::npos);
  CHECK(csv.find("2,49,") != std::string::npos);

  const auto summary = nlohmann::json::parse(fixtures::read_file(tmp.file("s.json")));
  REQUIRE(summary["points"].size() == 2);
  CHECK(summary["points"][0]["fraction_terminated"].get<double>() == 1.0);
  CHECK(summary["points"][1]["n_runs"].get<int>() == 50);

  REQUIRE(run(args) == 0);
  CHECK(fixtures::read_file(tmp.file("s.csv")) == csv);
}

TEST_CASE("measure reports mu_star for the xor table") {
  TempDir tmp;
  fixtures::write_file(tmp.file("xor.csv"), fixtures::xor_table().to_csv());
  REQUIRE(run({"measure", "--table", tmp.file("xor.csv"), "--out",
               tmp.file("xor.json")}) == 0);
  const auto j = nlohmann::json::parse(fixtures::read_file(tmp.file("xor.json")));
  CHECK(j["mu_star"].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(j["interaction_info"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["redundancy"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(j["provenance"]["version"] == "0.1.0");
}

TEST_CASE("measure on a missing file is a domain error") {
  CaptureStderr capture;
  CHECK(run({"measure", "--table", "/nonexistent/nope.csv"}) == 1);
  const auto j = nlohmann::json::parse(capture.captured.str());
  CHECK(j["error"] == "io");
}

TEST_CASE("pipeline produces byte-identical reports on the fixture corpus") {
  TempDir tmp;
  fixtures::write_file(tmp.file("corpus.csv"),
                       mulab::corpus::corpus_csv(fixtures::synergy_corpus()));
  const std::vector<std::string> args = {"pipeline", "--corpus", tmp.file("corpus.csv"),
                                         "--out", tmp.file("report.json")};
  REQUIRE(run(args) == 0);
  const std::string first = fixtures::read_file(tmp.file("report.json"));
  const auto j = nlohmann::json::parse(first);
  CHECK(j["variable_sets"]["words"]["mu_star"].get<double>() < 0.0);
  CHECK(j["variable_sets"]["words"]["n_variables"].get<int>() == 10);

  REQUIRE(run(args) == 0);
  CHECK(fixtures::read_file(tmp.file("report.json")) == first);
}

TEST_CASE("version flag") {
  CHECK(run({"--version"}) == 0);
}
