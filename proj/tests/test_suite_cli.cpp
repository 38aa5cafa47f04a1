#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "modelball/suite.hpp"

using namespace modelball;

namespace {

const char* kFastConfig =
    "suite=comparison-deficits\n"
    "profile=sphere\n"
    "kappa=1.0\n"
    "n=3\n"
    "R=1.0\n"
    "segments=128\n";

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path.string();
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MODELBALL_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

}  // namespace

TEST_CASE("config parsing: defaults, comments, errors") {
  const SuiteConfig c = parse_config(
      "# a comment\n\nsuite=green\nprofile = sphere\nkappa = 0.5\n");
  CHECK(c.suite == "green");
  CHECK(c.profile == "sphere");
  CHECK(c.kappa == doctest::Approx(0.5));
  CHECK(c.segments == 512);  // default preserved

  try {
    parse_config("suite=green\nbogus=1\n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("suite=green\nkappa=abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("suite=nope\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("segments=13\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
}

TEST_CASE("config hash: canonical under comments and order") {
  const SuiteConfig a = parse_config("suite=green\nkappa=0.5\n");
  const SuiteConfig b = parse_config("# hi\nkappa=0.5\n\nsuite=green\n");
  const SuiteConfig c = parse_config("suite=green\nkappa=0.75\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("apply_override reparses and rehashes") {
  SuiteConfig c = parse_config(kFastConfig);
  const std::string h0 = c.hash();
  apply_override(c, "kappa", 0.25);
  CHECK(c.kappa == doctest::Approx(0.25));
  CHECK(c.hash() != h0);
  CHECK_THROWS_AS(apply_override(c, "bogus", 1.0), ConfigError);
}

TEST_CASE("run_suite: comparison deficits on the sphere passes") {
  const SuiteRun run = run_suite(parse_config(kFastConfig));
  CHECK(run.record.passed);
  CHECK(run.record.suite == "comparison-deficits");
  CHECK(run.record.reports.size() == 5);
  CHECK(!run.record.artifacts.empty());
  bool saw_metric = false;
  for (const auto& o : run.record.outcomes)
    if (o.id == "laplacian-r-sup") saw_metric = o.value > 0.5;
  CHECK(saw_metric);
}

TEST_CASE("emit_report is deterministic and writes artifacts") {
  const SuiteConfig c = parse_config(kFastConfig);
  const SuiteRun r1 = run_suite(c);
  const SuiteRun r2 = run_suite(c);
  const std::string j1 = emit_report(r1, "json", "");
  const std::string j2 = emit_report(r2, "json", "");
  CHECK(j1 == j2);
  CHECK(j1.find("\"wall_ms\"") == std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "modelball_emit";
  std::filesystem::remove_all(dir);
  emit_report(r1, "csv", dir.string());
  CHECK(std::filesystem::exists(
      dir / ("comparison-deficits-" + c.hash() + ".csv")));
  CHECK(std::filesystem::exists(dir / "deficits.csv"));
}

TEST_CASE("sweep: kappa family is monotone with unit exponent") {
  const SuiteConfig base = parse_config(kFastConfig);
  const SweepResult sw = sweep_family(base, "kappa", {0.25, 0.5, 1.0});
  CHECK(sw.metric_id == "laplacian-r-sup");
  CHECK(sw.monotone_increasing);
  CHECK(sw.loglog_exponent == doctest::Approx(1.0).epsilon(0.1));
  CHECK(sw.records.size() == 3);
  const std::string json = to_json(sw);
  CHECK(json.find("\"monotone_increasing\": true") != std::string::npos);
  CHECK_THROWS_AS(sweep_family(base, "kappa", {1.0}), ConfigError);
}

TEST_CASE("cli: verify, list-suites, exit codes") {
  const std::string cfg = write_temp("modelball_cfg.txt", kFastConfig);

  const CliResult ok = run_cli("verify " + cfg);
  CHECK(ok.status == 0);
  CHECK(ok.out.find("\"passed\": true") != std::string::npos);

  const CliResult csv = run_cli("verify " + cfg + " --format csv");
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("suite,config_hash,kind,id", 0) == 0);

  const CliResult ls = run_cli("list-suites");
  CHECK(ls.status == 0);
  int lines = 0;
  for (char ch : ls.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 6);

  const std::string bad = write_temp("modelball_bad.txt", "suite=nope\n");
  CHECK(run_cli("verify " + bad).status == 2);
  CHECK(run_cli("verify /nonexistent/file").status == 2);
  CHECK(run_cli("frobnicate").status == 2);

  const CliResult sweep = run_cli("sweep " + cfg +
                                  " --param kappa --values 0.25,1.0");
  CHECK(sweep.status == 0);
  CHECK(sweep.out.find("\"loglog_exponent\"") != std::string::npos);

  // Byte-identical stdout across repeated runs.
  const CliResult again = run_cli("verify " + cfg);
  CHECK(again.out == ok.out);
}
