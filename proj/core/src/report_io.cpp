#include "lowmach/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lowmach/error.hpp"

namespace lowmach {

using nlohmann::json;

namespace {

json checks_json(const std::vector<HypothesisCheck>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    a.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound},
                 {"satisfied", c.satisfied()}});
  }
  return a;
}

json fit_json(const std::optional<RateFit>& f) {
  if (!f) return nullptr;
  return {{"slope", f->slope}, {"intercept", f->intercept}, {"residual", f->residual}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const SweepConfig& c) {
  return {{"regime", to_string(c.regime)},
          {"eps", c.eps_list},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"mu", c.mu},
          {"nu", c.nu},
          {"lambda", c.lambda},
          {"theta", c.theta},
          {"gamma", c.gamma},
          {"dim", c.dim},
          {"n", c.n},
          {"T", c.T},
          {"snapshots", c.snapshots},
          {"dt_max", c.dt_max},
          {"dt_eps_factor", c.dt_eps_factor},
          {"cfl_max", c.cfl_max},
          {"c0", c.c0},
          {"flow_scale", c.base_flow_scale()},
          {"delta", c.delta},
          {"filter_t_min", c.filter_t_min},
          {"seed", c.seed},
          {"pass_fraction", c.pass_fraction}};
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig c;
  if (!j.is_object()) throw Error(Errc::ConfigError, "sweep config must be an object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "regime") {
        const auto r = parse_regime(val.get<std::string>());
        if (!r) throw Error(Errc::ConfigError, "unknown regime '" + val.get<std::string>() + "'");
        c.regime = *r;
      } else if (key == "eps") {
        c.eps_list = val.get<std::vector<double>>();
      } else if (key == "alpha") {
        c.alpha = val.get<double>();
      } else if (key == "beta") {
        c.beta = val.get<double>();
      } else if (key == "mu") {
        c.mu = val.get<double>();
      } else if (key == "nu") {
        c.nu = val.get<double>();
      } else if (key == "lambda") {
        c.lambda = val.get<double>();
      } else if (key == "theta") {
        c.theta = val.get<double>();
      } else if (key == "gamma") {
        c.gamma = val.get<double>();
      } else if (key == "dim") {
        c.dim = val.get<int>();
      } else if (key == "n") {
        c.n = val.get<int>();
      } else if (key == "T") {
        c.T = val.get<double>();
      } else if (key == "snapshots") {
        c.snapshots = val.get<int>();
      } else if (key == "dt_max") {
        c.dt_max = val.get<double>();
      } else if (key == "dt_eps_factor") {
        c.dt_eps_factor = val.get<double>();
      } else if (key == "cfl_max") {
        c.cfl_max = val.get<double>();
      } else if (key == "c0") {
        c.c0 = val.get<double>();
      } else if (key == "flow_scale") {
        c.flow_scale = val.get<double>();
      } else if (key == "delta") {
        c.delta = val.get<double>();
      } else if (key == "filter_t_min") {
        c.filter_t_min = val.get<double>();
      } else if (key == "seed") {
        c.seed = val.get<std::uint64_t>();
      } else if (key == "pass_fraction") {
        c.pass_fraction = val.get<double>();
      } else {
        throw Error(Errc::ConfigError, "unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ConfigError, std::string("malformed sweep config: ") + e.what());
  }
  return c;
}

json to_json(const ModulatedReport& r) {
  return {{"t", r.t},
          {"w2", r.w2},
          {"z2", r.z2},
          {"pi2", r.pi2},
          {"density_small", r.density_small},
          {"density_large", r.density_large},
          {"energy", r.energy},
          {"dissipated", r.dissipated},
          {"w2_uncorrected", r.w2_uncorrected},
          {"p_defect2", r.p_defect2},
          {"q_momentum2", r.q_momentum2},
          {"rho_dev_l2", r.rho_dev_l2},
          {"psi2_signed", r.psi2_signed}};
}

json to_json(const EpsilonResult& r) {
  json series = json::array();
  for (const auto& s : r.series) series.push_back(to_json(s));
  return {{"eps", r.eps},
          {"peak_total", r.peak_total},
          {"peak_w2", r.peak_w2},
          {"peak_w2_uncorrected", r.peak_w2_uncorrected},
          {"peak_z", r.peak_z},
          {"peak_p_defect", r.peak_p_defect},
          {"peak_rho_dev", r.peak_rho_dev},
          {"min_q_momentum", r.min_q_momentum},
          {"energy_defect", r.energy_defect},
          {"filter_violations", r.filter_violations},
          {"hypotheses", checks_json(r.hypotheses)},
          {"hypothesis_violations", r.hypothesis_violations()},
          {"series", series},
          {"error", r.error}};
}

json to_json(const RateReport& r) {
  json runs = json::array();
  for (const auto& e : r.runs) runs.push_back(to_json(e));
  return {{"config", to_json(r.config)},
          {"config_hash", config_hash(r.config)},
          {"predicted", r.predicted},
          {"fit", fit_json(r.fit)},
          {"rho_fit", fit_json(r.rho_fit)},
          {"slope_pass", r.slope_pass},
          {"rho_slope_pass", r.rho_slope_pass},
          {"monotone_pass", r.monotone_pass},
          {"filtering_pass", r.filtering_pass},
          {"hypotheses_pass", r.hypotheses_pass},
          {"pass", r.pass},
          {"failures", r.failures},
          {"error", r.error},
          {"runs", runs}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const SweepConfig& cfg) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(to_json(cfg).dump());
  return os.str();
}

ReportPaths write_rate_report(const RateReport& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());
  const std::string stem = "sweep-" + config_hash(r.config);
  ReportPaths paths{dir / (stem + ".json"), dir / (stem + ".dat")};

  json doc = to_json(r);
  doc["table"] = paths.table.filename().string();
  write_json(doc, paths.json);

  std::ofstream out(paths.table);
  if (!out) throw Error(Errc::Io, "cannot write " + paths.table.string());
  out << "eps peak_total peak_w2 peak_w2_uncorrected peak_z peak_p_defect peak_rho_dev "
         "min_q_momentum energy_defect\n";
  for (const auto& e : r.runs) {
    if (!e.error.empty()) continue;
    out << fmt(e.eps) << ' ' << fmt(e.peak_total) << ' ' << fmt(e.peak_w2) << ' '
        << fmt(e.peak_w2_uncorrected) << ' ' << fmt(e.peak_z) << ' ' << fmt(e.peak_p_defect)
        << ' ' << fmt(e.peak_rho_dev) << ' ' << fmt(e.min_q_momentum) << ' '
        << fmt(e.energy_defect) << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing " + paths.table.string());
  return paths;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::Io, "cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

}  // namespace lowmach
