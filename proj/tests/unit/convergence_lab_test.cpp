#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "lowmach/error.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/rate_fit.hpp"
#include "lowmach/report_io.hpp"
#include "lowmach/snapshot_io.hpp"
#include "lowmach/sweep.hpp"
#include "oracles.hpp"

using namespace lowmach;
namespace fs = std::filesystem;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Io;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("lowmach_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

SweepConfig small_config() {
  SweepConfig c;
  c.regime = Regime::WellPreparedViscous;
  c.eps_list = {0.2, 0.1, 0.05};
  c.n = 16;
  c.T = 0.05;
  c.snapshots = 5;
  c.workers = 1;
  return c;
}

}  // namespace

TEST(RateFit, ExactPowerLaws) {
  std::vector<std::pair<double, double>> sq, flat;
  for (double e : {0.2, 0.1, 0.05, 0.025}) {
    sq.emplace_back(e, 3.0 * e * e);
    flat.emplace_back(e, 7.0);
  }
  const RateFit a = fit_rate(sq);
  EXPECT_NEAR(a.slope, 2.0, 1e-12);
  EXPECT_NEAR(std::exp(a.intercept), 3.0, 1e-10);
  EXPECT_LE(a.residual, 1e-12);
  EXPECT_NEAR(fit_rate(flat).slope, 0.0, 1e-12);
}

TEST(RateFit, SmallNoiseBarelyMovesSlope) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<std::pair<double, double>> pts;
  for (double e : {0.2, 0.1, 0.05, 0.025}) pts.emplace_back(e, std::pow(e, 1.3) * (1.0 + noise(gen)));
  EXPECT_NEAR(fit_rate(pts).slope, 1.3, 0.05);
}

TEST(RateFit, RejectsBadInput) {
  const std::vector<std::pair<double, double>> two{{0.1, 1.0}, {0.05, 0.5}};
  EXPECT_EQ(error_code([&] { fit_rate(two); }), Errc::InvalidArgument);
  const std::vector<std::pair<double, double>> same{{0.1, 1.0}, {0.1, 0.5}, {0.1, 0.2}};
  EXPECT_EQ(error_code([&] { fit_rate(same); }), Errc::DegenerateFit);
  const std::vector<std::pair<double, double>> neg{{0.2, 1.0}, {0.1, -0.5}, {0.05, 0.2}};
  EXPECT_EQ(error_code([&] { fit_rate(neg); }), Errc::InvalidArgument);
}

TEST(SweepConfig, PredictedExponents) {
  SweepConfig c;
  c.regime = Regime::WellPreparedIdeal;
  c.alpha = c.beta = 0.5;
  EXPECT_DOUBLE_EQ(c.predicted_exponent(), 0.5);
  c.alpha = c.beta = 0.2;
  EXPECT_DOUBLE_EQ(c.predicted_exponent(), 0.2);
  c.alpha = 0.9;
  c.beta = 0.9;
  EXPECT_NEAR(c.predicted_exponent(), 0.1, 1e-15);
  c.regime = Regime::WellPreparedViscous;
  EXPECT_DOUBLE_EQ(c.predicted_exponent(), 1.0);
}

TEST(SweepConfig, Validation) {
  SweepConfig c;
  EXPECT_NO_THROW(c.validate());
  c.regime = Regime::WellPreparedIdeal;
  c.alpha = 0.9;
  c.beta = 1.5;
  EXPECT_EQ(error_code([&] { c.validate(); }), Errc::ConfigError);
  SweepConfig d;
  d.eps_list = {0.1, 0.2, 0.05};
  EXPECT_EQ(error_code([&] { d.validate(); }), Errc::ConfigError);
  SweepConfig e;
  e.gamma = 0.5;
  EXPECT_EQ(error_code([&] { e.validate(); }), Errc::ConfigError);
  SweepConfig f;
  f.regime = Regime::PartialViscous;
  f.alpha = 1.2;
  EXPECT_EQ(error_code([&] { f.validate(); }), Errc::ConfigError);
  SweepConfig h;
  h.n = 24;
  EXPECT_EQ(error_code([&] { h.validate(); }), Errc::ConfigError);
}

TEST(SweepConfig, RegimeNamesRoundTrip) {
  for (Regime r : {Regime::WellPreparedIdeal, Regime::WellPreparedViscous, Regime::IllPrepared,
                   Regime::PartialViscous}) {
    EXPECT_EQ(parse_regime(to_string(r)), r);
  }
  EXPECT_FALSE(parse_regime("no-such-regime").has_value());
}

TEST(Sweep, MockRunnerSlope) {
  SweepConfig c;
  c.eps_list = {0.2, 0.1, 0.05, 0.025};
  const RateReport r = run_sweep(c, mock_runner(0.7));
  ASSERT_TRUE(r.fit.has_value());
  EXPECT_NEAR(r.fit->slope, 0.7, 1e-6);
  EXPECT_EQ(r.runs.size(), 4u);
  EXPECT_FALSE(r.slope_pass);  // 0.7 < 0.8 * 1
  const RateReport ok = run_sweep(c, mock_runner(1.0));
  EXPECT_TRUE(ok.pass);
}

TEST(Sweep, RunnerErrorsGiveAPartialReport) {
  SweepConfig c;
  c.eps_list = {0.2, 0.1, 0.05, 0.025};
  const EpsilonRunner base = mock_runner(1.0);
  const RateReport r = run_sweep(c, [&](const SweepConfig& cfg, double eps) {
    EpsilonResult res = base(cfg, eps);
    if (eps < 0.03) res.error = "vacuum";
    return res;
  });
  EXPECT_FALSE(r.error.empty());
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.fit.has_value());
  EXPECT_NEAR(r.fit->slope, 1.0, 1e-12);
}

TEST(Sweep, RealRunIsDeterministic) {
  const SweepConfig c = small_config();
  const RateReport a = run_sweep(c);
  const RateReport b = run_sweep(c);
  EXPECT_TRUE(a.error.empty()) << a.error;
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  ASSERT_EQ(a.runs.size(), 3u);
  EXPECT_EQ(a.runs.front().series.size(), 6u);
  EXPECT_EQ(a.runs.front().hypothesis_violations(), 0u);
}

TEST(ReportIo, ConfigRoundTrip) {
  SweepConfig c;
  c.regime = Regime::PartialViscous;
  c.alpha = 0.3;
  c.eps_list = {0.5, 0.25, 0.125};
  c.flow_scale = 0.4;
  c.seed = 99;
  const SweepConfig back = sweep_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  EXPECT_EQ(config_hash(back), config_hash(c));
}

TEST(ReportIo, UnknownKeyAndBadTypes) {
  nlohmann::json j = to_json(SweepConfig{});
  j["viscosity"] = 1.0;
  EXPECT_EQ(error_code([&] { sweep_config_from_json(j); }), Errc::ConfigError);
  nlohmann::json k = nlohmann::json::object();
  k["regime"] = "sideways";
  EXPECT_EQ(error_code([&] { sweep_config_from_json(k); }), Errc::ConfigError);
  EXPECT_NO_THROW(sweep_config_from_json(nlohmann::json::object()));
}

TEST(ReportIo, HashIsStableAndSensitive) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  SweepConfig a, b;
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(ReportIo, WritesJsonAndTable) {
  SweepConfig c;
  c.eps_list = {0.2, 0.1, 0.05};
  const RateReport r = run_sweep(c, mock_runner(1.0));
  const fs::path dir = scratch_dir("report") / "nested";
  const ReportPaths paths = write_rate_report(r, dir);
  EXPECT_EQ(paths.json.filename().string(), "sweep-" + config_hash(c) + ".json");
  nlohmann::json j = read_json(paths.json);
  EXPECT_EQ(j.at("table").get<std::string>(), paths.table.filename().string());
  j.erase("table");
  EXPECT_EQ(j.dump(), to_json(r).dump());
  std::ifstream table(paths.table);
  std::string line;
  int lines = 0;
  while (std::getline(table, line)) ++lines;
  EXPECT_EQ(lines, 4);
  EXPECT_EQ(error_code([&] { read_json(dir / "missing.json"); }), Errc::Io);
}

TEST(SnapshotIo, RoundTrip) {
  const TorusGrid g(3, 8);
  Rng rng(31);
  Snapshot s;
  s.grid = g;
  s.time = 0.375;
  s.add("rho", random_scalar(g, 6, rng));
  s.add("u", random_vector(g, 6, rng));
  ASSERT_EQ(s.labels.size(), 4u);
  const fs::path f = scratch_dir("snap") / "a.lms";
  write_snapshot(f, s);
  const Snapshot t = read_snapshot(f);
  EXPECT_EQ(t.grid.dim(), 3);
  EXPECT_EQ(t.grid.n(), 8);
  EXPECT_EQ(t.time, 0.375);
  EXPECT_EQ(t.labels, s.labels);
  EXPECT_EQ(t.components, s.components);
  EXPECT_LE(oracle::coeff_diff(t.field(0), s.field(0)), 0.0);
}

TEST(SnapshotIo, RejectsForeignFiles) {
  const fs::path f = scratch_dir("snapbad") / "b.lms";
  {
    std::ofstream os(f, std::ios::binary);
    os << "NOTASNAPSHOTFILE";
  }
  EXPECT_EQ(error_code([&] { read_snapshot(f); }), Errc::Io);
  EXPECT_EQ(error_code([&] { read_snapshot(f.parent_path() / "none.lms"); }), Errc::Io);
}
