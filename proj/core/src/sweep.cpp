#include "lowmach/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "lowmach/error.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach {

namespace {

constexpr std::uint64_t kIllPhiStream = 11;
constexpr std::uint64_t kIllGradStream = 12;
constexpr std::int64_t kIllMaxK2 = 2;

[[noreturn]] void config_error(const std::string& key, const std::string& expected) {
  throw Error(Errc::ConfigError, "invalid '" + key + "': expected " + expected);
}

bool ill_prepared(Regime r) { return r == Regime::IllPrepared || r == Regime::PartialViscous; }

struct Setup {
  TorusGrid grid;
  VectorField u0;
  VectorField H0;
  ScalarField phi0;
  VectorField u_tilde0;
};

Setup make_setup(const SweepConfig& cfg) {
  const TorusGrid grid(cfg.dim, cfg.n);
  auto [u0, H0] = orszag_tang(grid);
  u0 *= cfg.base_flow_scale();
  H0 *= cfg.base_flow_scale();
  Setup s{grid, u0, H0, ScalarField(grid), u0};
  if (ill_prepared(cfg.regime)) {
    Rng rphi(derive_seed(cfg.seed, kIllPhiStream));
    s.phi0 = random_scalar(grid, kIllMaxK2, rphi);
    Rng rgrad(derive_seed(cfg.seed, kIllGradStream));
    s.u_tilde0 += random_gradient(grid, kIllMaxK2, rgrad);
  }
  return s;
}

struct Schedule {
  double dt;
  int steps_per_snapshot;
};

Schedule schedule(const SweepConfig& cfg, double target) {
  const double interval = cfg.T / cfg.snapshots;
  const int steps = std::max(1, static_cast<int>(std::ceil(interval / target - 1e-9)));
  return {interval / steps, steps};
}

struct LimitTrajectory {
  std::vector<IncompressibleState> flow;
  std::vector<OscVector> osc;
};

LimitTrajectory solve_limit(const SweepConfig& cfg, const Setup& setup) {
  LimitTrajectory out;
  const Schedule sch = schedule(cfg, cfg.dt_max);
  const double interval = cfg.T / cfg.snapshots;
  const double mu = cfg.limit_mu(), nu = cfg.limit_nu();
  if (ill_prepared(cfg.regime)) {
    MhdParams p = cfg.params_for(cfg.eps_list.front());
    const IllPreparedData data =
        gen_ill_prepared(setup.grid, p, setup.phi0, setup.u_tilde0, setup.H0, cfg.c0, cfg.seed);
    LimitState s{IncompressibleState(leray_p(data.u_tilde0), dealias(setup.H0)), data.V0, 0.0};
    for (int j = 0; j <= cfg.snapshots; ++j) {
      s.t = j * interval;
      s.flow.t = s.t;
      out.flow.push_back(s.flow);
      out.osc.push_back(s.osc);
      if (j == cfg.snapshots) break;
      for (int k = 0; k < sch.steps_per_snapshot; ++k) {
        step_limit(s, mu, nu, cfg.osc_theta(), cfg.gamma, sch.dt, cfg.cfl_max);
      }
    }
  } else {
    IncompressibleState s(dealias(setup.u0), dealias(setup.H0));
    for (int j = 0; j <= cfg.snapshots; ++j) {
      s.t = j * interval;
      out.flow.push_back(s);
      if (j == cfg.snapshots) break;
      for (int k = 0; k < sch.steps_per_snapshot; ++k) {
        step_incompressible(s, mu, nu, sch.dt, cfg.cfl_max);
      }
    }
  }
  return out;
}

EpsilonResult simulate_eps(const SweepConfig& cfg, double eps, const Setup& setup,
                           const LimitTrajectory& limit, const SnapshotObserver& observer = {}) {
  EpsilonResult res;
  res.eps = eps;
  try {
    const MhdParams p = cfg.params_for(eps);
    const bool ill = ill_prepared(cfg.regime);
    std::optional<CompressibleState> init;
    if (ill) {
      IllPreparedData data = gen_ill_prepared(setup.grid, p, setup.phi0, setup.u_tilde0,
                                              setup.H0, cfg.c0, cfg.seed);
      res.hypotheses = check_ill_prepared(data, p, setup.H0, cfg.c0).checks;
      init = std::move(data.state);
    } else {
      init = gen_well_prepared(setup.grid, p, setup.u0, setup.H0, cfg.seed);
      res.hypotheses = check_well_prepared(*init, p, setup.u0, setup.H0, cfg.delta).checks;
    }
    CompressibleState cs = std::move(*init);

    CompressibleOptions opt;
    opt.cfl_max = cfg.cfl_max;
    CompressibleSolver solver(setup.grid, p, opt);
    const Schedule sch = schedule(cfg, std::min(cfg.dt_max, cfg.dt_eps_factor * eps));
    const double interval = cfg.T / cfg.snapshots;

    double dissipated = 0.0;
    double e0 = 0.0, prev_budget = 0.0;
    double min_q2 = std::numeric_limits<double>::infinity();
    double max_z2 = 0.0, max_p2 = 0.0;
    for (int j = 0; j <= cfg.snapshots; ++j) {
      cs.t = j * interval;
      const auto ju = static_cast<std::size_t>(j);
      ModulatedReport rep =
          ill ? ill_prepared_functional(cs, limit.flow[ju], limit.osc[ju], p, 1e-9, cfg.delta)
              : well_prepared_functional(cs, limit.flow[ju], p, 1e-9, cfg.delta);
      rep.dissipated = dissipated;
      const double budget = rep.energy + dissipated;
      if (j == 0) {
        e0 = rep.energy;
      } else {
        res.energy_defect = std::max(res.energy_defect, (budget - prev_budget) / e0);
      }
      prev_budget = budget;

      res.peak_total = std::max(res.peak_total, rep.total());
      res.peak_w2 = std::max(res.peak_w2, rep.w2);
      res.peak_w2_uncorrected = std::max(res.peak_w2_uncorrected, rep.w2_uncorrected);
      res.peak_rho_dev = std::max(res.peak_rho_dev, rep.rho_dev_l2);
      max_z2 = std::max(max_z2, rep.z2);
      max_p2 = std::max(max_p2, rep.p_defect2);
      min_q2 = std::min(min_q2, rep.q_momentum2);
      if (ill && rep.t >= cfg.filter_t_min - 1e-12 && !(rep.w2 < rep.w2_uncorrected)) {
        ++res.filter_violations;
      }
      res.series.push_back(rep);
      if (observer) observer(cs, limit.flow[ju], rep);
      if (j == cfg.snapshots) break;
      for (int k = 0; k < sch.steps_per_snapshot; ++k) dissipated += solver.step(cs, sch.dt);
    }
    res.peak_z = std::sqrt(max_z2);
    res.peak_p_defect = std::sqrt(max_p2);
    res.min_q_momentum = std::sqrt(min_q2);
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::WellPreparedIdeal: return "well-prepared-ideal";
    case Regime::WellPreparedViscous: return "well-prepared-viscous";
    case Regime::IllPrepared: return "ill-prepared";
    case Regime::PartialViscous: return "partial-viscous";
  }
  return "unknown";
}

std::optional<Regime> parse_regime(const std::string& name) {
  for (Regime r : {Regime::WellPreparedIdeal, Regime::WellPreparedViscous, Regime::IllPrepared,
                   Regime::PartialViscous}) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (eps_list.empty()) config_error("eps", "a non-empty list");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] <= 1.0)) config_error("eps", "values in (0, 1]");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) config_error("eps", "a strictly decreasing list");
  }
  if (dim != 2 && dim != 3) config_error("dim", "2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) config_error("n", "a power of two >= 8");
  if (!(gamma > 1.0)) config_error("gamma", "a value > 1");
  if (!(T > 0.0)) config_error("T", "a positive time");
  if (snapshots < 1) config_error("snapshots", "an integer >= 1");
  if (!(dt_max > 0.0)) config_error("dt-max", "a positive step");
  if (!(dt_eps_factor > 0.0)) config_error("dt-eps-factor", "a positive factor");
  if (!(cfl_max > 0.0)) config_error("cfl-max", "a positive bound");
  if (!(delta > 0.0 && delta < 1.0)) config_error("delta", "a value in (0, 1)");
  if (!(pass_fraction > 0.0 && pass_fraction <= 1.0)) config_error("pass-fraction", "(0, 1]");
  if (!(filter_t_min >= 0.0)) config_error("filter-t-min", "a non-negative time");

  switch (regime) {
    case Regime::WellPreparedIdeal:
      if (!(alpha > 0.0)) config_error("alpha", "a positive exponent");
      if (!(beta > 0.0)) config_error("beta", "a positive exponent");
      if (!(alpha + beta < 2.0)) config_error("alpha+beta", "0 < alpha + beta < 2");
      break;
    case Regime::WellPreparedViscous:
    case Regime::IllPrepared:
      if (!(mu > 0.0)) config_error("mu", "a positive viscosity");
      if (!(nu > 0.0)) config_error("nu", "a positive diffusivity");
      if (regime == Regime::IllPrepared && !(2.0 * mu + dim * lambda > 0.0)) {
        config_error("lambda", "2 mu + d lambda > 0");
      }
      break;
    case Regime::PartialViscous:
      if (!(alpha > 0.0 && alpha < 1.0)) config_error("alpha", "0 < alpha < 1");
      if (!(nu > 0.0)) config_error("nu", "a positive diffusivity");
      if (!(theta > 0.0)) config_error("theta", "a positive value of 2 mu + lambda");
      break;
  }
  if (flow_scale && !(*flow_scale >= 0.0)) config_error("flow-scale", "a non-negative amplitude");
  if (ill_prepared(regime) && !(c0 > 0.0)) config_error("c0", "a positive constant");
  for (double e : eps_list) {
    try {
      params_for(e).validate(dim);
    } catch (const Error& err) {
      throw Error(Errc::ConfigError, "parameters at eps = " + std::to_string(e) + ": " +
                                         err.what());
    }
  }
}

MhdParams SweepConfig::params_for(double eps) const {
  MhdParams p;
  p.eps = eps;
  p.gamma = gamma;
  switch (regime) {
    case Regime::WellPreparedIdeal:
      p.mu = std::pow(eps, alpha);
      p.nu = std::pow(eps, beta);
      p.lambda = lambda;
      break;
    case Regime::WellPreparedViscous:
    case Regime::IllPrepared:
      p.mu = mu;
      p.nu = nu;
      p.lambda = lambda;
      break;
    case Regime::PartialViscous:
      p.mu = std::pow(eps, alpha);
      p.lambda = theta - 2.0 * p.mu;
      p.nu = nu;
      break;
  }
  return p;
}

double SweepConfig::limit_mu() const {
  return (regime == Regime::WellPreparedViscous || regime == Regime::IllPrepared) ? mu : 0.0;
}

double SweepConfig::limit_nu() const { return regime == Regime::WellPreparedIdeal ? 0.0 : nu; }

double SweepConfig::base_flow_scale() const {
  if (flow_scale) return *flow_scale;
  return ill_prepared(regime) ? 0.1 : 1.0;
}

double SweepConfig::osc_theta() const {
  return regime == Regime::PartialViscous ? theta : 2.0 * mu + lambda;
}

double SweepConfig::predicted_exponent() const {
  switch (regime) {
    case Regime::WellPreparedIdeal: return std::min({alpha, beta, 1.0 - 0.5 * (alpha + beta)});
    case Regime::WellPreparedViscous: return 1.0;
    default: return 0.0;
  }
}

std::size_t EpsilonResult::hypothesis_violations() const {
  return static_cast<std::size_t>(std::count_if(
      hypotheses.begin(), hypotheses.end(), [](const auto& c) { return !c.satisfied(); }));
}

EpsilonRunner mock_runner(double exponent) {
  return [exponent](const SweepConfig&, double eps) {
    EpsilonResult r;
    r.eps = eps;
    const double v = std::pow(eps, exponent);
    r.peak_total = r.peak_w2 = r.peak_z = r.peak_p_defect = r.peak_rho_dev = v;
    r.peak_w2_uncorrected = 2.0 * v;
    r.min_q_momentum = 1.0;
    return r;
  };
}

double headline_value(const SweepConfig& cfg, const EpsilonResult& r) {
  return ill_prepared(cfg.regime) ? r.peak_w2 : r.peak_total;
}

EpsilonResult run_single(const SweepConfig& cfg, double eps, const SnapshotObserver& observer) {
  SweepConfig one = cfg;
  one.eps_list = {eps};
  one.validate();
  const Setup setup = make_setup(one);
  EpsilonResult res;
  res.eps = eps;
  std::optional<LimitTrajectory> limit;
  try {
    limit = solve_limit(one, setup);
  } catch (const std::exception& e) {
    res.error = std::string("limit solve: ") + e.what();
    return res;
  }
  return simulate_eps(one, eps, setup, *limit, observer);
}

RateReport run_sweep(const SweepConfig& cfg, const EpsilonRunner& runner) {
  cfg.validate();
  RateReport rep;
  rep.config = cfg;
  rep.predicted = cfg.predicted_exponent();

  EpsilonRunner run = runner;
  std::optional<Setup> setup;
  std::optional<LimitTrajectory> limit;
  if (!run) {
    setup = make_setup(cfg);
    try {
      limit = solve_limit(cfg, *setup);
    } catch (const std::exception& e) {
      rep.error = std::string("limit solve: ") + e.what();
      rep.failures.push_back(rep.error);
      return rep;
    }
    run = [&](const SweepConfig& c, double eps) { return simulate_eps(c, eps, *setup, *limit); };
  }

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  rep.runs.resize(cfg.eps_list.size());
  for (std::size_t start = 0; start < cfg.eps_list.size(); start += workers) {
    const std::size_t stop = std::min(cfg.eps_list.size(), start + workers);
    std::vector<std::future<EpsilonResult>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      const double eps = cfg.eps_list[i];
      if (workers == 1) {
        rep.runs[i] = run(cfg, eps);
      } else {
        jobs.push_back(std::async(std::launch::async, [&run, &cfg, eps] { return run(cfg, eps); }));
      }
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) rep.runs[start + i] = jobs[i].get();
  }

  std::vector<std::pair<double, double>> pts, rho_pts;
  std::vector<double> head, zs, ps;
  for (const auto& r : rep.runs) {
    if (!r.error.empty()) {
      if (rep.error.empty()) rep.error = "eps = " + std::to_string(r.eps) + ": " + r.error;
      continue;
    }
    pts.emplace_back(r.eps, headline_value(cfg, r));
    rho_pts.emplace_back(r.eps, r.peak_rho_dev);
    head.push_back(headline_value(cfg, r));
    zs.push_back(r.peak_z);
    ps.push_back(r.peak_p_defect);
  }
  if (!rep.error.empty()) rep.failures.push_back(rep.error);

  auto try_fit = [&](const auto& p) -> std::optional<RateFit> {
    if (p.size() < 3) return std::nullopt;
    try {
      return fit_rate(p);
    } catch (const Error& e) {
      rep.failures.push_back(std::string("fit: ") + e.what());
      return std::nullopt;
    }
  };
  rep.fit = try_fit(pts);
  rep.rho_fit = try_fit(rho_pts);

  const bool ill = ill_prepared(cfg.regime);
  if (rep.fit) {
    rep.slope_pass = ill ? rep.fit->slope > 0.0
                         : rep.fit->slope >= cfg.pass_fraction * rep.predicted;
  }
  if (rep.rho_fit) rep.rho_slope_pass = rep.rho_fit->slope >= cfg.pass_fraction;
  rep.monotone_pass = !head.empty() && strictly_decreasing(head) &&
                      (!ill || (strictly_decreasing(zs) && strictly_decreasing(ps)));
  rep.filtering_pass = true;
  if (ill) {
    for (const auto& r : rep.runs) {
      if (r.filter_violations > 0) rep.filtering_pass = false;
    }
    if (rep.runs.empty() || !(rep.runs.front().min_q_momentum > 0.0)) rep.filtering_pass = false;
  }
  rep.hypotheses_pass = true;
  for (const auto& r : rep.runs) {
    if (r.hypothesis_violations() > 0) rep.hypotheses_pass = false;
  }

  if (!rep.slope_pass) rep.failures.push_back("fitted slope below the acceptance threshold");
  if (!ill && cfg.regime == Regime::WellPreparedViscous && !rep.rho_slope_pass) {
    rep.failures.push_back("density deviation slope below the acceptance threshold");
  }
  if (ill && !rep.monotone_pass) rep.failures.push_back("peaks do not decrease with eps");
  if (!rep.filtering_pass) rep.failures.push_back("filtering did not beat the uncorrected functional");
  if (!rep.hypotheses_pass) rep.failures.push_back("initial data violate their hypotheses");

  rep.pass = rep.error.empty() && rep.failures.empty();
  return rep;
}

}  // namespace lowmach
