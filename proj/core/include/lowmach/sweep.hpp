#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lowmach/generators.hpp"
#include "lowmach/modulated_energy.hpp"
#include "lowmach/rate_fit.hpp"

namespace lowmach {

enum class Regime {
  WellPreparedIdeal,    // mu = eps^alpha, nu = eps^beta, ideal limit
  WellPreparedViscous,  // fixed mu, nu, viscous limit
  IllPrepared,          // fixed mu, nu, viscous limit plus acoustic profile
  PartialViscous,       // mu = eps^alpha, 2 mu + lambda = theta, limit without viscosity
};

std::string to_string(Regime r);
/// Accepts the names produced by to_string.
std::optional<Regime> parse_regime(const std::string& name);

struct SweepConfig {
  Regime regime = Regime::WellPreparedViscous;
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  double alpha = 0.5;
  double beta = 0.5;
  double mu = 0.05;
  double nu = 0.05;
  double lambda = 0.0;
  double theta = 0.5;  // 2 mu + lambda held fixed in the partial viscous preset
  double gamma = 2.0;
  int dim = 2;
  int n = 64;
  double T = 0.5;
  int snapshots = 100;       // functional evaluated every T / snapshots
  double dt_max = 0.005;     // upper bound on the step
  double dt_eps_factor = 0.05;  // step also bounded by factor * eps
  double cfl_max = 0.5;
  double c0 = 1.0;
  // Amplitude of the Orszag-Tang base flow. Unset means 1 for well-prepared data
  // and 0.1 for ill-prepared data, where the acoustic waves the flow emits at
  // O(eps) must stay below the oscillation allowed by c0 nu.
  std::optional<double> flow_scale;
  double delta = 0.5;
  double filter_t_min = 0.1;  // filtering comparison starts here
  std::uint64_t seed = 1;
  double pass_fraction = 0.8;
  unsigned workers = 0;  // 0 picks the hardware concurrency

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  /// Parameters of the compressible run at a given eps.
  MhdParams params_for(double eps) const;
  /// Viscosities of the limit system.
  double limit_mu() const;
  double limit_nu() const;
  double base_flow_scale() const;
  /// 2 mu + lambda of the compressible runs in the ill-prepared regimes.
  double osc_theta() const;
  /// min(alpha, beta, 1 - (alpha + beta)/2), 1, or 0 depending on the regime.
  double predicted_exponent() const;
};

/// Per-eps outcome. Peaks are taken over the snapshot times.
struct EpsilonResult {
  double eps = 0.0;
  double peak_total = 0.0;         // w2 + z2 + pi2
  double peak_w2 = 0.0;            // corrected in the ill-prepared regimes
  double peak_w2_uncorrected = 0.0;
  double peak_z = 0.0;             // sup_t ||H^eps - H||
  double peak_p_defect = 0.0;      // sup_t ||P(sqrt(rho) u) - u||
  double peak_rho_dev = 0.0;       // sup_t ||rho - 1||
  double min_q_momentum = 0.0;     // inf_t ||Q(sqrt(rho) u)||
  double energy_defect = 0.0;      // largest rise of E + int D, relative to E(0)
  std::size_t filter_violations = 0;  // snapshots with corrected >= uncorrected
  std::vector<HypothesisCheck> hypotheses;
  std::vector<ModulatedReport> series;
  std::string error;

  std::size_t hypothesis_violations() const;
};

struct RateReport {
  SweepConfig config;
  std::vector<EpsilonResult> runs;
  double predicted = 0.0;
  std::optional<RateFit> fit;      // peak functional vs eps
  std::optional<RateFit> rho_fit;  // peak ||rho - 1|| vs eps
  bool slope_pass = false;
  bool rho_slope_pass = false;
  bool monotone_pass = false;
  bool filtering_pass = false;
  bool hypotheses_pass = false;
  bool pass = false;
  std::vector<std::string> failures;
  std::string error;  // first run error, if any; the report is then partial
};

/// Computes the outcome for one eps. Replaceable for tests.
using EpsilonRunner = std::function<EpsilonResult(const SweepConfig&, double eps)>;

/// A runner that never touches a solver: every functional equals eps^exponent.
EpsilonRunner mock_runner(double exponent);

/// The functional whose rate is fitted for this regime.
double headline_value(const SweepConfig& cfg, const EpsilonResult& r);

/// Called at every snapshot of a run with the compressible state, the limit
/// flow at the same time and the functional evaluated there.
using SnapshotObserver = std::function<void(const CompressibleState&, const IncompressibleState&,
                                            const ModulatedReport&)>;

/// The sweep pipeline for a single eps: limit solve, generated data and the
/// compressible run. Solver errors are recorded in the result.
EpsilonResult run_single(const SweepConfig& cfg, double eps, const SnapshotObserver& observer = {});

/// Solves the limit system once, runs every eps (concurrently up to the worker
/// count), fits the rates and applies the acceptance rules. Solver errors are
/// recorded in the report rather than thrown.
RateReport run_sweep(const SweepConfig& cfg, const EpsilonRunner& runner = {});

}  // namespace lowmach
