#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lowmach/report_io.hpp"
#include "lowmach/snapshot_io.hpp"
#include "lowmach_cli/cli.hpp"

using namespace lowmach;
using namespace lowmach::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("lowmach_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

fs::path only_subdir(const fs::path& root, const std::string& prefix) {
  fs::path found;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.path().filename().string().rfind(prefix, 0) == 0) {
      EXPECT_TRUE(found.empty()) << "several " << prefix << " directories";
      found = e.path();
    }
  }
  return found;
}

void expect_manifest_lists_everything(const fs::path& run) {
  const auto files = read_json(run / "manifest.json").at("files");
  std::size_t on_disk = 0;
  for (const auto& e : fs::directory_iterator(run)) {
    ++on_disk;
    const std::string name = e.path().filename().string();
    EXPECT_NE(std::find(files.begin(), files.end(), name), files.end()) << name << " is not in the manifest";
  }
  EXPECT_EQ(on_disk, files.size());
}

}  // namespace

TEST(CliParse, FlagsReachTheSweepConfig) {
  std::ostringstream out;
  const auto rc = parse_config({"simulate", "--eps", "0.1", "--gamma", "2", "--n", "64"}, out);
  ASSERT_TRUE(rc.has_value());
  EXPECT_EQ(rc->command, Subcommand::Simulate);
  EXPECT_EQ(rc->params.eps_list, std::vector<double>{0.1});
  EXPECT_EQ(rc->params.gamma, 2.0);
  EXPECT_EQ(rc->params.n, 64);
}

TEST(CliParse, RejectsGammaBelowOne) {
  const Outcome r = invoke({"simulate", "--gamma", "0.5"});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("ConfigError"), std::string::npos);
  EXPECT_NE(r.err.find("gamma"), std::string::npos);
}

TEST(CliParse, FileAndFlagsMergeBeforeValidation) {
  const fs::path dir = scratch_dir("merge");
  const fs::path cfg = write_text(dir, "c.toml", "[sweep]\nregime = \"well-prepared-ideal\"\nalpha = 0.9\n");
  std::ostringstream out;
  const auto ok = parse_config({"--config", cfg.string(), "sweep", "--beta", "0.5"}, out);
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->params.regime, Regime::WellPreparedIdeal);
  EXPECT_EQ(ok->params.alpha, 0.9);
  EXPECT_EQ(ok->params.beta, 0.5);
  const Outcome bad = invoke({"--config", cfg.string(), "sweep", "--beta", "1.5"});
  EXPECT_EQ(bad.status, kExitError);
  EXPECT_NE(bad.err.find("ConfigError"), std::string::npos);
}

TEST(CliParse, FlagsOverrideFileValues) {
  const fs::path dir = scratch_dir("override");
  const fs::path cfg = write_text(dir, "c.toml", "[sweep]\nn = 32\nseed = 7\neps = [0.4, 0.2, 0.1]\n");
  std::ostringstream out;
  const auto rc = parse_config({"--config", cfg.string(), "sweep", "--n", "16"}, out);
  ASSERT_TRUE(rc.has_value());
  EXPECT_EQ(rc->params.n, 16);
  EXPECT_EQ(rc->params.seed, 7u);
  EXPECT_EQ(rc->params.eps_list, (std::vector<double>{0.4, 0.2, 0.1}));
}

TEST(CliParse, UnknownKeysAndBadValuesAreConfigErrors) {
  const fs::path dir = scratch_dir("unknown");
  const fs::path cfg = write_text(dir, "c.toml", "[sweep]\nviscosity = 1\n");
  EXPECT_EQ(invoke({"--config", cfg.string(), "sweep"}).status, kExitError);
  EXPECT_EQ(invoke({"sweep", "--regime", "sideways"}).status, kExitError);
  EXPECT_EQ(invoke({"sweep", "--eps", "0.1,0.2,0.05"}).status, kExitError);
  EXPECT_EQ(invoke({"simulate", "--no-such-flag"}).status, kExitError);
  EXPECT_EQ(invoke({}).status, kExitError);
}

TEST(CliParse, HelpExitsCleanly) {
  const Outcome r = invoke({"--help"});
  EXPECT_EQ(r.status, kExitPass);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(CliRun, FilterCheckPassesOnDefaults) {
  const fs::path dir = scratch_dir("filter");
  const Outcome r = invoke({"--output", dir.string(), "filter-check"});
  EXPECT_EQ(r.status, kExitPass) << r.out << r.err;
  const fs::path run = only_subdir(dir, "filter-check-");
  ASSERT_FALSE(run.empty());
  EXPECT_EQ(read_json(run / "manifest.json").at("status"), "pass");
  EXPECT_TRUE(fs::exists(run / "residuals.dat"));
  EXPECT_TRUE(fs::exists(run / "quadrature.dat"));
  expect_manifest_lists_everything(run);
}

TEST(CliRun, FilterCheckFailsBelowRoundoff) {
  const fs::path dir = scratch_dir("filter_tight");
  EXPECT_EQ(invoke({"--output", dir.string(), "filter-check", "--tolerance", "1e-300"}).status, kExitFail);
}

TEST(CliRun, MockSweepReportsInjectedSlope) {
  const fs::path dir = scratch_dir("mock");
  const Outcome r = invoke({"--output", dir.string(), "sweep", "--mock-exponent", "1.0", "--eps",
                            "0.2,0.1,0.05,0.025"});
  EXPECT_EQ(r.status, kExitPass) << r.out << r.err;
  EXPECT_NE(r.out.find("slope 1"), std::string::npos);
  const Outcome low = invoke({"--output", (dir / "low").string(), "sweep", "--mock-exponent", "0.5"});
  EXPECT_EQ(low.status, kExitFail);

  const fs::path run = only_subdir(dir, "sweep-mock-");
  ASSERT_TRUE(fs::exists(run / "manifest.json"));
  const auto manifest = read_json(run / "manifest.json");
  const fs::path report = run / manifest.at("report").get<std::string>();
  const auto doc = read_json(report);
  EXPECT_NEAR(doc.at("fit").at("slope").get<double>(), 1.0, 1e-9);
  expect_manifest_lists_everything(run);
  const Outcome summary = invoke({"report", report.string()});
  EXPECT_EQ(summary.status, kExitPass);
  EXPECT_NE(summary.out.find("PASS"), std::string::npos);
}

TEST(CliRun, SimulateWritesDiagnosticsAndFields) {
  const fs::path dir = scratch_dir("simulate");
  const std::vector<std::string> args{"--output", dir.string(), "simulate", "--eps", "0.1", "--n", "16",
                                      "--T", "0.05", "--snapshots", "4", "--field-every", "2"};
  const Outcome r = invoke(args);
  EXPECT_EQ(r.status, kExitPass) << r.out << r.err;
  const fs::path run = only_subdir(dir, "simulate-");
  ASSERT_FALSE(run.empty());
  std::ifstream table(run / "diagnostics.dat");
  std::string line;
  int lines = 0;
  while (std::getline(table, line)) ++lines;
  EXPECT_EQ(lines, 6);
  for (const char* f : {"fields-0000.lms", "fields-0002.lms", "fields-0004.lms"}) {
    ASSERT_TRUE(fs::exists(run / f)) << f;
  }
  EXPECT_FALSE(fs::exists(run / "fields-0001.lms"));
  const Snapshot s = read_snapshot(run / "fields-0004.lms");
  EXPECT_NEAR(s.time, 0.05, 1e-12);
  EXPECT_EQ(s.labels.front(), "rho");
  EXPECT_EQ(s.labels.size(), 9u);

  // rerunning the same configuration reproduces the diagnostics bit for bit
  std::stringstream first;
  first << std::ifstream(run / "diagnostics.dat").rdbuf();
  EXPECT_EQ(invoke(args).status, kExitPass);
  std::stringstream second;
  second << std::ifstream(run / "diagnostics.dat").rdbuf();
  EXPECT_EQ(first.str(), second.str());
  expect_manifest_lists_everything(run);

  // fewer field files on a rerun leave no stale ones behind
  std::vector<std::string> sparse = args;
  sparse.back() = "0";
  EXPECT_EQ(invoke(sparse).status, kExitPass);
  EXPECT_FALSE(fs::exists(run / "fields-0002.lms"));
  expect_manifest_lists_everything(run);
}

TEST(CliRun, VacuumIsARuntimeError) {
  const fs::path dir = scratch_dir("vacuum");
  const Outcome r = invoke({"--output", dir.string(), "simulate", "--regime", "ill-prepared", "--eps", "0.9",
                            "--c0", "1000", "--nu", "1", "--n", "16"});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("VacuumReached"), std::string::npos);
  const fs::path run = only_subdir(dir, "simulate-");
  ASSERT_FALSE(run.empty());
  EXPECT_EQ(read_json(run / "manifest.json").at("status"), "error");
}

TEST(CliRun, ReportRejectsForeignJson) {
  const fs::path dir = scratch_dir("report");
  const fs::path f = write_text(dir, "x.json", "{\"hello\": 1}");
  EXPECT_EQ(invoke({"report", f.string()}).status, kExitError);
  EXPECT_EQ(invoke({"report", (dir / "missing.json").string()}).status, kExitError);
}
