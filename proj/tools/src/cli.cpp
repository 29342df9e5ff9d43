#include "lowmach_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <type_traits>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lowmach/acoustic_filter.hpp"
#include "lowmach/error.hpp"
#include "lowmach/initial_data.hpp"
#include "lowmach/report_io.hpp"
#include "lowmach/resonance.hpp"
#include "lowmach/snapshot_io.hpp"
#include "lowmach/spectral_ops.hpp"

namespace lowmach::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kDefaultOutput = "lowmach-output";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Options that mirror SweepConfig. Each subcommand owns its own copy so that a
// config file section only reaches the subcommand it names.
struct ParamBinding {
  SweepConfig cfg;
  std::string regime = to_string(Regime::WellPreparedViscous);
  std::vector<double> eps;

  void bind(CLI::App* app, bool eps_list) {
    app->add_option("--regime", regime,
                    "well-prepared-ideal, well-prepared-viscous, ill-prepared or partial-viscous")
        ->capture_default_str();
    if (eps_list) {
      eps = cfg.eps_list;
      app->add_option("--eps", eps, "Decreasing Mach numbers, comma separated")
          ->delimiter(',')
          ->capture_default_str();
    } else {
      eps = {0.1};
      app->add_option("--eps", eps, "Mach number")->expected(1)->capture_default_str();
    }
    app->add_option("--alpha", cfg.alpha, "Exponent of mu = eps^alpha")->capture_default_str();
    app->add_option("--beta", cfg.beta, "Exponent of nu = eps^beta")->capture_default_str();
    app->add_option("--mu", cfg.mu, "Shear viscosity")->capture_default_str();
    app->add_option("--nu", cfg.nu, "Magnetic diffusivity")->capture_default_str();
    app->add_option("--lambda", cfg.lambda, "Bulk viscosity")->capture_default_str();
    app->add_option("--theta", cfg.theta, "2 mu + lambda in the partial-viscous preset")
        ->capture_default_str();
    app->add_option("--gamma", cfg.gamma, "Adiabatic exponent (> 1)")->capture_default_str();
    app->add_option("--dim", cfg.dim, "Space dimension, 2 or 3")->capture_default_str();
    app->add_option("--n", cfg.n, "Grid points per direction")->capture_default_str();
    app->add_option("--T", cfg.T, "Final time")->capture_default_str();
    app->add_option("--snapshots", cfg.snapshots, "Diagnostics every T / snapshots")
        ->capture_default_str();
    app->add_option("--dt-max", cfg.dt_max, "Upper bound on the time step")->capture_default_str();
    app->add_option("--dt-eps-factor", cfg.dt_eps_factor, "Step also bounded by factor * eps")
        ->capture_default_str();
    app->add_option("--cfl-max", cfg.cfl_max, "Largest admissible CFL number")->capture_default_str();
    app->add_option("--c0", cfg.c0, "Oscillation amplitude constant")->capture_default_str();
    app->add_option("--flow-scale", cfg.flow_scale,
                    "Base flow amplitude (default 1, or 0.1 with an acoustic profile)");
    app->add_option("--delta", cfg.delta, "Density deviation cut")->capture_default_str();
    app->add_option("--filter-t-min", cfg.filter_t_min, "Filtering comparison starts here")
        ->capture_default_str();
    app->add_option("--seed", cfg.seed, "Seed for all generated data")->capture_default_str();
    app->add_option("--pass-fraction", cfg.pass_fraction,
                    "Fitted slope must reach this fraction of the predicted one")
        ->capture_default_str();
    app->add_option("--workers", cfg.workers, "Concurrent eps runs, 0 = available parallelism")
        ->capture_default_str();
  }

  SweepConfig resolve() const {
    SweepConfig out = cfg;
    const auto r = parse_regime(regime);
    if (!r) {
      throw Error(Errc::ConfigError,
                  "invalid 'regime': expected well-prepared-ideal, well-prepared-viscous, "
                  "ill-prepared or partial-viscous, got '" + regime + "'");
    }
    out.regime = *r;
    out.eps_list = eps;
    out.validate();
    return out;
  }
};

void bind_filter(CLI::App* app, FilterCheckParams& p) {
  app->add_option("--dim", p.dim, "Space dimension, 2 or 3")->capture_default_str();
  app->add_option("--n", p.n, "Grid points per direction")->capture_default_str();
  app->add_option("--gamma", p.gamma, "Adiabatic exponent (> 1)")->capture_default_str();
  app->add_option("--theta", p.theta, "Diffusion of the averaged Laplacian")->capture_default_str();
  app->add_option("--seed", p.seed, "Seed for the random pairs")->capture_default_str();
  app->add_option("--tolerance", p.tolerance, "Pass threshold for every residual")->capture_default_str();
}

// Writes files into one run directory and remembers them for the manifest.
class RunDir {
 public:
  // The directory belongs to one configuration; a rerun replaces it so that
  // no file from an earlier run survives unlisted.
  explicit RunDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::remove_all(dir_, ec);
    if (ec) throw Error(Errc::Io, "cannot clear " + dir_.string() + ": " + ec.message());
    fs::create_directories(dir_, ec);
    if (ec) throw Error(Errc::Io, "cannot create " + dir_.string() + ": " + ec.message());
  }

  const fs::path& path() const { return dir_; }

  std::ofstream open(const std::string& name) {
    std::ofstream os(dir_ / name, std::ios::trunc);
    if (!os) throw Error(Errc::Io, "cannot write " + (dir_ / name).string());
    files_.push_back(name);
    return os;
  }

  void adopt(const fs::path& file) { files_.push_back(file.filename().string()); }

  void snapshot(const std::string& name, const Snapshot& s) {
    write_snapshot(dir_ / name, s);
    files_.push_back(name);
  }

  // The manifest lists every file written so far, including itself.
  fs::path manifest(json doc) {
    files_.push_back("manifest.json");
    doc["files"] = files_;
    write_json(doc, dir_ / "manifest.json");
    return dir_ / "manifest.json";
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

void write_series(std::ostream& os, const EpsilonResult& r) {
  os << "t w2 z2 pi2 total energy dissipated w2_uncorrected p_defect2 q_momentum2 rho_dev_l2 "
        "psi2_signed density_small density_large\n";
  for (const auto& m : r.series) {
    os << num(m.t) << ' ' << num(m.w2) << ' ' << num(m.z2) << ' ' << num(m.pi2) << ' '
       << num(m.total()) << ' ' << num(m.energy) << ' ' << num(m.dissipated) << ' '
       << num(m.w2_uncorrected) << ' ' << num(m.p_defect2) << ' ' << num(m.q_momentum2) << ' '
       << num(m.rho_dev_l2) << ' ' << num(m.psi2_signed) << ' ' << num(m.density_small) << ' '
       << num(m.density_large) << '\n';
  }
}

std::string hex_hash(const std::string& text) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(text);
  return os.str();
}

// ------------------------------------------------------------------- simulate

int run_simulate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const SweepConfig& cfg = rc.params;
  const double eps = cfg.eps_list.front();
  RunDir dir(rc.output / ("simulate-" + config_hash(cfg)));
  const int every = rc.field_every > 0 ? rc.field_every : cfg.snapshots;

  int index = 0;
  std::string write_error;
  const EpsilonResult r = run_single(cfg, eps, [&](const CompressibleState& cs, const IncompressibleState& is,
                                                    const ModulatedReport&) {
    const int j = index++;
    if (j % every != 0 && j != cfg.snapshots) return;
    Snapshot snap;
    snap.grid = cs.grid();
    snap.time = cs.t;
    snap.add("rho", cs.rho);
    snap.add("u", cs.u);
    snap.add("H", cs.H);
    snap.add("u_limit", is.u);
    snap.add("H_limit", is.H);
    char name[32];
    std::snprintf(name, sizeof name, "fields-%04d.lms", j);
    try {
      dir.snapshot(name, snap);
    } catch (const std::exception& e) {
      if (write_error.empty()) write_error = e.what();
    }
  });

  {
    std::ofstream table = dir.open("diagnostics.dat");
    write_series(table, r);
  }
  const std::size_t violations = r.hypothesis_violations();
  json doc = {{"command", "simulate"},
              {"config", to_json(cfg)},
              {"config_hash", config_hash(cfg)},
              {"result", to_json(r)}};
  const std::string error = !r.error.empty() ? r.error : write_error;
  doc["status"] = !error.empty() ? "error" : violations > 0 ? "fail" : "pass";
  doc["error"] = error;
  const fs::path manifest = dir.manifest(doc);

  out << "simulate " << to_string(cfg.regime) << " eps=" << short_num(eps) << " n=" << cfg.n
      << " d=" << cfg.dim << " T=" << short_num(cfg.T) << '\n';
  if (!r.series.empty()) {
    const auto& last = r.series.back();
    out << "  final t=" << short_num(last.t) << " w2=" << short_num(last.w2)
        << " z2=" << short_num(last.z2) << " pi2=" << short_num(last.pi2) << '\n';
  }
  out << "  peak functional " << short_num(r.peak_total) << ", energy defect "
      << short_num(r.energy_defect) << ", hypothesis violations " << violations << '\n';
  out << "  manifest " << manifest.string() << '\n';
  if (!error.empty()) {
    err << "error: " << error << '\n';
    return kExitError;
  }
  if (violations > 0) {
    for (const auto& h : r.hypotheses) {
      if (!h.satisfied()) err << "hypothesis violated: " << h.name << '\n';
    }
    return kExitFail;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------- sweep

int run_sweep_command(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const SweepConfig& cfg = rc.params;
  // mock runs never share a directory with solver runs of the same configuration
  RunDir dir(rc.output / ((rc.mock_exponent ? "sweep-mock-" : "sweep-") + config_hash(cfg)));
  const RateReport rep = rc.mock_exponent ? run_sweep(cfg, mock_runner(*rc.mock_exponent)) : run_sweep(cfg);
  const ReportPaths paths = write_rate_report(rep, dir.path());
  dir.adopt(paths.json);
  dir.adopt(paths.table);
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    std::ofstream table = dir.open("eps-" + std::to_string(i) + ".dat");
    write_series(table, rep.runs[i]);
  }
  json doc = {{"command", "sweep"},
              {"config", to_json(cfg)},
              {"config_hash", config_hash(cfg)},
              {"mock_exponent", rc.mock_exponent ? json(*rc.mock_exponent) : json(nullptr)},
              {"report", paths.json.filename().string()},
              {"status", !rep.error.empty() ? "error" : rep.pass ? "pass" : "fail"}};
  const fs::path manifest = dir.manifest(doc);

  out << "sweep " << to_string(cfg.regime) << " predicted exponent " << short_num(rep.predicted) << '\n';
  out << "  eps peak_total peak_w2 peak_rho_dev filter_violations hypothesis_violations\n";
  for (const auto& e : rep.runs) {
    out << "  " << short_num(e.eps) << ' ' << short_num(e.peak_total) << ' ' << short_num(e.peak_w2)
        << ' ' << short_num(e.peak_rho_dev) << ' ' << e.filter_violations << ' '
        << e.hypothesis_violations() << (e.error.empty() ? "" : " error: " + e.error) << '\n';
  }
  if (rep.fit) out << "  slope " << short_num(rep.fit->slope) << '\n';
  if (rep.rho_fit) out << "  density slope " << short_num(rep.rho_fit->slope) << '\n';
  out << "  " << (rep.pass ? "PASS" : "FAIL") << ", manifest " << manifest.string() << '\n';
  if (rc.verbosity > 0 || !rep.pass) {
    for (const auto& f : rep.failures) err << "failure: " << f << '\n';
  }
  if (!rep.error.empty()) {
    err << "error: " << rep.error << '\n';
    return kExitError;
  }
  return rep.pass ? kExitPass : kExitFail;
}

// --------------------------------------------------------------- filter-check

struct Residual {
  std::string name;
  double value;
};

double osc_rel(const OscVector& a, const OscVector& b) {
  OscVector d = a;
  axpy(d, -1.0, b);
  const double den = std::max(osc_norm_sq(a), osc_norm_sq(b));
  return den > 0.0 ? std::sqrt(osc_norm_sq(d) / den) : 0.0;
}

// L(-s) applied to (0, Q F), kept on the 2/3 mask. The solenoidal part of F
// does not oscillate and lies outside the acoustic space.
OscVector pull_back(const VectorField& F, double s) {
  OscVector out = wave_group_apply(OscVector(ScalarField(F.grid()), leray_q(F)), -s);
  dealias_in_place(out.phi);
  dealias_in_place(out.m);
  return out;
}

OscVector q1_integrand(const VectorField& v, const OscVector& V, double s) {
  const OscVector w = wave_group_apply(V, s);
  const int d = v.size();
  VectorField F(v.grid());
  for (int a = 0; a < d; ++a) {
    VectorField row(v.grid());
    for (int b = 0; b < d; ++b) {
      row[b] = multiply_dealiased(v[a], w.m[b]);
      axpy(row[b], 1.0, multiply_dealiased(w.m[a], v[b]));
    }
    F[a] = divergence(row);
  }
  return pull_back(F, s);
}

OscVector q2_integrand(const OscVector& V1, const OscVector& V2, double gamma, double s) {
  const OscVector w1 = wave_group_apply(V1, s);
  const OscVector w2 = wave_group_apply(V2, s);
  const int d = w1.m.size();
  VectorField F = gradient(multiply_dealiased(w1.phi, w2.phi));
  F *= 0.5 * (gamma - 1.0);
  for (int a = 0; a < d; ++a) {
    VectorField row(w1.m.grid());
    for (int b = 0; b < d; ++b) {
      row[b] = multiply_dealiased(w1.m[a], w2.m[b]);
      axpy(row[b], 1.0, multiply_dealiased(w2.m[a], w1.m[b]));
      row[b] *= 0.5;
    }
    axpy(F[a], 1.0, divergence(row));
  }
  return pull_back(F, s);
}

// Gauss-Legendre time averages of `integrand` over [0, tau] for increasing taus.
std::vector<OscVector> time_average(const TorusGrid& g, const std::function<OscVector(double)>& integrand,
                                    const std::vector<double>& taus) {
  static constexpr std::array<double, 4> kNodes{-0.8611363115940526, -0.3399810435848563,
                                                0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> kWeights{0.3478548451374538, 0.6521451548625461,
                                                  0.6521451548625461, 0.3478548451374538};
  constexpr double panel = 0.25;
  std::vector<OscVector> out;
  OscVector acc(g);
  double t = 0.0;
  for (double tau : taus) {
    const int panels = static_cast<int>(std::lround((tau - t) / panel));
    for (int p = 0; p < panels; ++p) {
      const double a = t + p * panel;
      for (std::size_t q = 0; q < kNodes.size(); ++q) {
        axpy(acc, 0.5 * panel * kWeights[q], integrand(a + 0.5 * panel * (kNodes[q] + 1.0)));
      }
    }
    t += panels * panel;
    OscVector avg = acc;
    avg.phi *= 1.0 / t;
    avg.m *= 1.0 / t;
    out.push_back(std::move(avg));
  }
  return out;
}

template <class F>
F keep_shell(F f, std::int64_t shell) {
  if constexpr (std::is_same_v<F, ScalarField>) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.grid().k2(i) != shell) f[i] = 0.0;
    }
  } else {
    for (int a = 0; a < f.size(); ++a) f[a] = keep_shell(f[a], shell);
  }
  return f;
}

struct QuadratureRow {
  std::string form;
  double tau;
  double gap;  // relative distance between the time average and the resonant form
};

// Inputs on single lattice shells keep the non-resonant frequencies away from
// zero, so tau * gap stays bounded. It oscillates in tau, so fitting a rate
// through a few points is unreliable. The shells fit on a coarse grid, which
// keeps the quadrature cheap.
std::vector<QuadratureRow> quadrature_rows(const FilterCheckParams& fb) {
  const TorusGrid g(fb.dim, std::min(fb.n, fb.dim == 2 ? 16 : 8));
  Rng rng(fb.seed + 1);
  const std::vector<double> taus{25.0, 50.0, 100.0};
  std::vector<QuadratureRow> out;
  auto record = [&](const std::string& form, const std::vector<OscVector>& avg, const OscVector& ref) {
    const double den = std::sqrt(osc_norm_sq(ref));
    for (std::size_t i = 0; i < taus.size(); ++i) {
      OscVector d = avg[i];
      axpy(d, -1.0, ref);
      out.push_back({form, taus[i], den > 0.0 ? std::sqrt(osc_norm_sq(d)) / den : 0.0});
    }
  };
  {
    const VectorField v = leray_p(keep_shell(random_vector(g, 2, rng), 2));
    const OscVector V(keep_shell(random_scalar(g, 5, rng), 5), keep_shell(random_gradient(g, 5, rng), 5));
    record("Q1", time_average(g, [&](double s) { return q1_integrand(v, V, s); }, taus), q1_form(v, V));
  }
  {
    const OscVector V1(keep_shell(random_scalar(g, 1, rng), 1), keep_shell(random_gradient(g, 1, rng), 1));
    const OscVector V2(keep_shell(random_scalar(g, 1, rng), 1), keep_shell(random_gradient(g, 1, rng), 1));
    record("Q2", time_average(g, [&](double s) { return q2_integrand(V1, V2, fb.gamma, s); }, taus),
           q2_form(V1, V2, fb.gamma));
  }
  return out;
}

std::vector<Residual> filter_residuals(const FilterCheckParams& fb) {
  const TorusGrid g(fb.dim, fb.n);
  Rng rng(fb.seed);
  auto random_osc = [&] {
    ScalarField phi = random_scalar(g, 12, rng);
    VectorField m = random_gradient(g, 12, rng);
    return OscVector(std::move(phi), std::move(m));
  };
  const OscVector V = random_osc();
  const OscVector V2 = random_osc();
  const VectorField v = random_solenoidal(g, 12, rng);
  std::vector<Residual> out;

  for (double r : {0.0, 1.0, 2.0}) {
    double worst = 0.0;
    for (double tau : {0.1, 1.0, 10.0}) {
      const OscVector w = wave_group_apply(V, tau);
      worst = std::max(worst, std::abs(osc_sobolev_norm_sq(w, r) / osc_sobolev_norm_sq(V, r) - 1.0));
    }
    out.push_back({"isometry_H" + std::to_string(static_cast<int>(r)), worst});
  }
  out.push_back({"group_law", osc_rel(wave_group_apply(wave_group_apply(V, 0.7), 2.9),
                                      wave_group_apply(V, 3.6))});
  out.push_back({"inverse", osc_rel(wave_group_apply(wave_group_apply(V, 5.0), -5.0), V)});
  out.push_back({"characteristics_round_trip", osc_rel(from_characteristics(g, to_characteristics(V)), V)});

  // phi = cos x1 evolves to cos(tau) cos x1
  const OscVector mode(ScalarField::from_function(g, [](const std::array<double, 3>& x) { return std::cos(x[0]); }),
                       VectorField(g));
  const auto k = *g.index_of({1, 0, 0});
  double closed = 0.0;
  for (double tau : {0.5, 3.0, 10.0}) {
    const OscVector w = wave_group_apply(mode, tau);
    closed = std::max(closed, std::abs(w.phi[k] - Complex(0.5 * std::cos(tau), 0.0)) / 0.5);
  }
  out.push_back({"single_mode_closed_form", closed});

  const OscVector q1 = q1_form(v, V);
  const double nV = std::sqrt(osc_norm_sq(V)), nV2 = std::sqrt(osc_norm_sq(V2));
  const double nq1 = std::sqrt(osc_norm_sq(q1));
  out.push_back({"q1_orthogonality", nq1 > 0.0 ? std::abs(osc_inner(q1, V)) / (nq1 * nV) : 0.0});
  const OscVector q11 = q2_form(V, V, fb.gamma);
  const OscVector q12 = q2_form(V, V2, fb.gamma);
  const double n11 = std::sqrt(osc_norm_sq(q11)), n12 = std::sqrt(osc_norm_sq(q12));
  out.push_back({"q2_orthogonality", n11 > 0.0 ? std::abs(osc_inner(q11, V)) / (n11 * nV) : 0.0});
  const double pol_scale = n11 * nV2 + 2.0 * n12 * nV;
  out.push_back({"q2_polarization",
                 pol_scale > 0.0 ? std::abs(osc_inner(q11, V2) + 2.0 * osc_inner(q12, V)) / pol_scale : 0.0});
  out.push_back({"q2_symmetry", osc_rel(q2_form(V, V2, fb.gamma), q2_form(V2, V, fb.gamma))});
  out.push_back({"averaged_laplacian", averaged_laplacian_check(V, fb.theta)});
  return out;
}

int run_filter_check(const FilterCheckParams& fb, const std::filesystem::path& output, std::ostream& out) {
  if (fb.dim != 2 && fb.dim != 3) throw Error(Errc::ConfigError, "invalid 'dim': expected 2 or 3");
  if (fb.n < 6 || fb.n % 2 != 0) throw Error(Errc::ConfigError, "invalid 'n': expected an even value >= 6");
  if (!(fb.tolerance > 0.0)) throw Error(Errc::ConfigError, "invalid 'tolerance': expected a positive value");
  if (!(fb.gamma > 1.0)) throw Error(Errc::ConfigError, "invalid 'gamma': expected a value > 1");
  if (!(fb.theta > 0.0)) throw Error(Errc::ConfigError, "invalid 'theta': expected a positive value");
  const json params = {{"dim", fb.dim}, {"n", fb.n}, {"gamma", fb.gamma}, {"theta", fb.theta},
                       {"seed", fb.seed}, {"tolerance", fb.tolerance}};
  const std::vector<Residual> res = filter_residuals(fb);
  RunDir dir(output / ("filter-check-" + hex_hash(params.dump())));
  bool pass = true;
  {
    std::ofstream table = dir.open("residuals.dat");
    table << "check residual\n";
    for (const auto& r : res) table << r.name << ' ' << num(r.value) << '\n';
  }
  const std::vector<QuadratureRow> quad = quadrature_rows(fb);
  {
    std::ofstream table = dir.open("quadrature.dat");
    table << "form tau relative_gap tau_times_gap\n";
    for (const auto& q : quad) {
      table << q.form << ' ' << num(q.tau) << ' ' << num(q.gap) << ' ' << num(q.tau * q.gap) << '\n';
    }
  }
  out << "filter-check d=" << fb.dim << " n=" << fb.n << " tolerance " << short_num(fb.tolerance) << '\n';
  for (const auto& r : res) {
    const bool ok = r.value < fb.tolerance;
    pass = pass && ok;
    out << "  " << std::left << std::setw(28) << r.name << ' ' << short_num(r.value) << (ok ? "" : "  FAIL")
        << '\n';
  }
  out << "  time average vs resonant form: form tau relative_gap tau_times_gap\n";
  for (const auto& q : quad) {
    out << "  " << q.form << ' ' << short_num(q.tau) << ' ' << short_num(q.gap) << ' '
        << short_num(q.tau * q.gap) << '\n';
  }
  json doc = {{"command", "filter-check"}, {"params", params}, {"status", pass ? "pass" : "fail"}};
  const fs::path manifest = dir.manifest(doc);
  out << "  " << (pass ? "PASS" : "FAIL") << ", manifest " << manifest.string() << '\n';
  return pass ? kExitPass : kExitFail;
}

// --------------------------------------------------------------------- report

int run_report(const RunConfig& rc, std::ostream& out) {
  const json doc = read_json(rc.input);
  try {
    const json& cfg = doc.at("config");
    out << "report " << rc.input.string() << '\n';
    out << "  regime " << cfg.at("regime").get<std::string>() << ", config hash "
        << doc.at("config_hash").get<std::string>() << '\n';
    out << "  predicted exponent " << short_num(doc.at("predicted").get<double>()) << '\n';
    out << "  eps peak_total peak_w2 peak_w2_uncorrected peak_z peak_p_defect peak_rho_dev\n";
    for (const auto& r : doc.at("runs")) {
      out << "  " << short_num(r.at("eps").get<double>()) << ' ' << short_num(r.at("peak_total").get<double>())
          << ' ' << short_num(r.at("peak_w2").get<double>()) << ' '
          << short_num(r.at("peak_w2_uncorrected").get<double>()) << ' '
          << short_num(r.at("peak_z").get<double>()) << ' ' << short_num(r.at("peak_p_defect").get<double>())
          << ' ' << short_num(r.at("peak_rho_dev").get<double>()) << '\n';
    }
    if (!doc.at("fit").is_null()) out << "  slope " << short_num(doc.at("fit").at("slope").get<double>()) << '\n';
    if (!doc.at("rho_fit").is_null()) {
      out << "  density slope " << short_num(doc.at("rho_fit").at("slope").get<double>()) << '\n';
    }
    for (const char* flag : {"slope_pass", "rho_slope_pass", "monotone_pass", "filtering_pass", "hypotheses_pass"}) {
      out << "  " << flag << ' ' << (doc.at(flag).get<bool>() ? "yes" : "no") << '\n';
    }
    for (const auto& f : doc.at("failures")) out << "  failure: " << f.get<std::string>() << '\n';
    const bool pass = doc.at("pass").get<bool>();
    out << "  " << (pass ? "PASS" : "FAIL") << '\n';
    if (!doc.at("error").get<std::string>().empty()) return kExitError;
    return pass ? kExitPass : kExitFail;
  } catch (const json::exception& e) {
    throw Error(Errc::Io, rc.input.string() + " is not a sweep report: " + e.what());
  }
}

}  // namespace

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Low Mach number MHD convergence experiments", "lowmach"};
  app.set_config("--config", "", "Config file with [simulate], [sweep] and [filter-check] sections");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  std::string output;
  int verbosity = 0;
  app.add_option("-o,--output", output, "Output root directory")
      ->envname("LOWMACH_OUTPUT_ROOT")
      ->default_str(kDefaultOutput);
  app.add_flag("-v,--verbose", verbosity, "More detail on standard error");

  ParamBinding sim_params, sweep_params;
  FilterCheckParams filter;
  double mock = 0.0;
  int field_every = 0;
  std::string input;

  CLI::App* sim = app.add_subcommand("simulate", "Run one eps and write fields and diagnostics");
  sim_params.bind(sim, false);
  sim->add_option("--field-every", field_every, "Write fields every k snapshots, 0 = first and last")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Run an eps sweep and fit the convergence rate");
  sweep_params.bind(sweep, true);
  CLI::Option* mock_opt = sweep->add_option("--mock-exponent", mock)->group("");

  CLI::App* fc = app.add_subcommand("filter-check", "Residuals of the acoustic filter identities");
  bind_filter(fc, filter);

  CLI::App* report = app.add_subcommand("report", "Summarize a sweep report");
  report->add_option("input", input, "sweep-<hash>.json written by sweep")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::ConfigError, e.what());
  }

  RunConfig rc;
  rc.output = output.empty() ? fs::path(kDefaultOutput) : fs::path(output);
  rc.verbosity = verbosity;
  if (sim->parsed()) {
    rc.command = Subcommand::Simulate;
    rc.params = sim_params.resolve();
    rc.field_every = field_every;
    if (field_every < 0) throw Error(Errc::ConfigError, "invalid 'field-every': expected k >= 0");
  } else if (sweep->parsed()) {
    rc.command = Subcommand::Sweep;
    rc.params = sweep_params.resolve();
    if (mock_opt->count() > 0) rc.mock_exponent = mock;
  } else if (fc->parsed()) {
    rc.command = Subcommand::FilterCheck;
    rc.filter = filter;
  } else {
    rc.command = Subcommand::Report;
    rc.input = input;
  }
  return rc;
}


int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Subcommand::Simulate: return run_simulate(cfg, out, err);
    case Subcommand::Sweep: return run_sweep_command(cfg, out, err);
    case Subcommand::FilterCheck: return run_filter_check(cfg.filter, cfg.output, out);
    case Subcommand::Report: return run_report(cfg, out);
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<RunConfig> cfg = parse_config(args, out);
    if (!cfg) return kExitPass;
    return dispatch(*cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace lowmach::cli
