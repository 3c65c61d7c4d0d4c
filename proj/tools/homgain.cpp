// homgain: command-line front end for the gain-estimation pipelines.
//
// Scalar results go to stdout as JSON, tables to CSV files (or stdout when no
// --out directory is given). Failures print {"status":"error","reason":...}
// and exit with 2 (arguments, io), 3 (assumption violated) or 4 (numeric).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "homgain/config.hpp"
#include "homgain/errors.hpp"
#include "homgain/gain.hpp"
#include "homgain/lyapunov.hpp"
#include "homgain/report.hpp"
#include "homgain/sim.hpp"
#include "homgain/storage.hpp"
#include "homgain/tuner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace homgain;

namespace {

constexpr int kOk = 0;
constexpr int kArgument = 2;
constexpr int kAssumption = 3;
constexpr int kNumeric = 4;

struct RunManifest {
  std::string config_path;
  std::string subcommand;
  std::string out_dir;
  RunConfig cfg;
  int threads = 0;
};

// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<double> margin, a_tilde, gain_tol, L_tol;
  std::optional<std::size_t> circle_grid, sphere_polar, sphere_azimuth, refine_starts, L_coarse;
  std::optional<std::uint64_t> seed;

  void apply(RunConfig& c) const {
    if (margin) c.margin = *margin;
    if (a_tilde) c.a_tilde = *a_tilde;
    if (gain_tol) c.gain_tol = *gain_tol;
    if (L_tol) c.L_tol = *L_tol;
    if (circle_grid) c.circle_grid = *circle_grid;
    if (sphere_polar) c.sphere_polar = *sphere_polar;
    if (sphere_azimuth) c.sphere_azimuth = *sphere_azimuth;
    if (refine_starts) c.refine_starts = *refine_starts;
    if (L_coarse) c.L_coarse = *L_coarse;
    if (seed) c.seed = *seed;
  }
};

int fail(const std::string& reason, const std::string& message, int code) {
  json j{{"status", "error"}, {"reason", reason}, {"message", message}};
  std::cerr << "homgain: " << message << "\n";
  std::cout << j.dump() << "\n";
  return code;
}

int exit_code_for(const Error& e) {
  const std::string& r = e.reason();
  if (r == "assumption1" || r == "storage") return kAssumption;
  if (r == "numeric") return kNumeric;
  return kArgument;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// Opens <out_dir>/<name> or falls back to stdout.
class Sink {
 public:
  Sink(const std::string& dir, const std::string& name) {
    if (dir.empty()) return;
    path_ = (fs::path(dir) / name).string();
    file_.open(path_, std::ios::binary);
    if (!file_) throw IoError("cannot write '" + path_ + "'");
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
};

void prepare_out_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    char* end = nullptr;
    const double x = std::strtod(item.c_str() + b, &end);
    if (end == item.c_str() + b) throw ConfigError("cannot parse list entry '" + item + "'");
    out.push_back(x);
  }
  return out;
}

TunerOptions tuner_options(const RunManifest& m) {
  TunerOptions t;
  t.coarse_points = m.cfg.L_coarse;
  t.tol = m.cfg.L_tol;
  t.gain = m.cfg.gain_options(m.threads);
  return t;
}

int cmd_check(const RunManifest& m, const std::string& emit_path) {
  const RunConfig& c = m.cfg;
  if (!emit_path.empty()) {
    std::ofstream f(emit_path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + emit_path + "'");
    f << emit_config(c);
  }
  const LyapunovParams p{c.d, c.beta};
  p.validate();
  const auto a1 = check_assumption1(c.alpha1, c.alpha2, p, c.circle(m.threads));
  json j{{"assumption1", to_json(a1)}};
  if (!a1.satisfied) {
    j["status"] = "error";
    j["reason"] = "assumption1";
    print(j);
    return kAssumption;
  }
  const auto s = compute_storage_scale(c.alpha1, c.alpha2, p, c.margin, c.circle(m.threads));
  j["storage"] = to_json(s);
  double a_tilde = s.a_tilde;
  if (c.a_tilde) {
    a_tilde = *c.a_tilde;
    j["storage"]["a_tilde"] = a_tilde;
    if (!(a_tilde > s.M)) {
      j["status"] = "error";
      j["reason"] = "storage";
      print(j);
      return kAssumption;
    }
  }
  j["g_max"] = a1.g_max;
  j["bound"] = a1.bound;
  j["M"] = s.M;
  j["a_tilde"] = a_tilde;
  j["status"] = "ok";
  print(j);
  return kOk;
}

int cmd_gain(const RunManifest& m, double L) {
  if (!(L > 0.0)) throw DomainError("--L must be positive");
  RunConfig c = m.cfg;
  c.L = L;
  const auto cfg = make_differentiator(c, m.threads);
  const auto g = estimate_gamma(cfg, c.gain_options(m.threads));
  json j = to_json(g);
  j["L"] = L;
  j["status"] = "ok";
  print(j);
  return kOk;
}

int cmd_optimize(const RunManifest& m, double L_min, double L_max) {
  if (!(L_min > 0.0) || !(L_max >= L_min)) throw DomainError("need 0 < --L-min <= --L-max");
  const auto cfg = make_differentiator(m.cfg, m.threads);
  const auto o = optimize_L(cfg, L_min, L_max, tuner_options(m));
  json j = to_json(o);
  j["status"] = "ok";
  print(j);
  return kOk;
}

int cmd_sweep(const RunManifest& m, const std::string& d_list, const std::string& L_list,
              bool baseline) {
  const auto ds = parse_list(d_list);
  const auto Ls = parse_list(L_list);
  SweepOptions so;
  so.gain = m.cfg.gain_options(m.threads);
  so.circle = m.cfg.circle(m.threads);
  const auto table = sweep(m.cfg.alpha1, m.cfg.alpha2, m.cfg.beta, m.cfg.margin, ds, Ls, baseline, so);
  prepare_out_dir(m.out_dir);
  Sink sink(m.out_dir, "sweep.csv");
  write_sweep_csv(sink.stream(), table);
  if (!sink.path().empty()) {
    print({{"status", "ok"}, {"rows", table.rows.size()}, {"csv", sink.path()}});
  }
  return kOk;
}

struct SimFlags {
  double a0 = 0.5, omega0 = 0.5, a_nu = 0.002, omega_nu = 1000.0;
  double z01 = 0.0, z02 = 0.02, periods = 10.0, sample_time = 1e-4;
  std::optional<double> L;
  bool optimal = false;
  bool no_noise = false, no_disturbance = false;
  std::string multipliers = "1";
  double kappa = 2.0;
  std::size_t stride = 1;
};

int cmd_simulate(const RunManifest& m, const SimFlags& f) {
  const auto base = make_differentiator(m.cfg, m.threads);
  double L = f.L.value_or(m.cfg.L);
  json j{{"status", "ok"}};
  if (f.optimal) {
    const auto o = optimize_L(base, 0.3, 2.0, tuner_options(m));
    L = o.L_star;
    j["optimal"] = to_json(o);
  }
  if (!(L > 0.0)) throw DomainError("L must be positive");
  if (!(f.kappa > 0.0)) throw DomainError("--kappa must be positive");
  const auto mults = parse_list(f.multipliers);
  if (mults.empty()) throw DomainError("--L-multiplier needs at least one value");
  prepare_out_dir(m.out_dir);

  json runs = json::array();
  for (double mult : mults) {
    if (!(mult > 0.0)) throw DomainError("--L-multiplier entries must be positive");
    SimScenario s(base.with_scaling(mult * L));
    s.a0 = f.a0;
    s.omega0 = f.omega0;
    s.a_nu = f.a_nu;
    s.omega_nu = f.omega_nu;
    s.z0 = {f.z01, f.z02};
    s.periods = f.periods;
    s.sample_time = f.sample_time;
    s.noise = !f.no_noise;
    s.disturbance = !f.no_disturbance;
    s.validate();
    json run{{"L_multiplier", mult}, {"L", mult * L}};
    if (!m.out_dir.empty()) {
      const auto tr = integrate_error_dynamics(s);
      Sink sink(m.out_dir, "trajectory_L" + format_number(mult) + ".csv");
      write_trajectory_csv(sink.stream(), tr, f.stride);
      run["csv"] = sink.path();
    }
    run["quotients"] = to_json(quotient_experiment(s, f.kappa));
    runs.push_back(run);
  }
  j["runs"] = runs;
  print(j);
  return kOk;
}

int cmd_ratios(const RunManifest& m, double d, double kappa_max, std::size_t points) {
  if (!(d > -1.0 && d < 1.0)) throw DomainError("--d must lie in (-1, 1)");
  if (!(kappa_max >= 1.0)) throw DomainError("--kappa-max must be >= 1");
  if (points < 1) throw DomainError("--points must be >= 1");
  std::vector<double> kappas;
  if (points == 1 || kappa_max == 1.0) {
    kappas.push_back(1.0);
  } else {
    kappas = log_spaced(1.0 / kappa_max, kappa_max, points);
  }
  const auto rows = analytic_ratio_curves(d, kappas);
  prepare_out_dir(m.out_dir);
  Sink sink(m.out_dir, "ratios.csv");
  write_ratios_csv(sink.stream(), rows);
  if (!sink.path().empty()) print({{"status", "ok"}, {"rows", rows.size()}, {"csv", sink.path()}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous L2-gain estimation for differentiators"};
  app.require_subcommand(1);

  RunManifest man;
  Overrides ov;
  auto global = [&](CLI::App* sub) {
    sub->add_option("-c,--config", man.config_path, "key = value parameter file");
    sub->add_option("-o,--out", man.out_dir, "output directory for CSV files");
    sub->add_option("--threads", man.threads, "worker threads (0: HOMGAIN_THREADS or hardware)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", ov.seed, "grid offset seed");
    sub->add_option("--margin", ov.margin, "storage margin");
    sub->add_option("--a-tilde", ov.a_tilde, "explicit storage scale");
    sub->add_option("--gain-tol", ov.gain_tol, "relative bisection tolerance on gamma");
    sub->add_option("--L-tol", ov.L_tol, "relative tolerance on L");
    sub->add_option("--L-coarse", ov.L_coarse, "coarse L grid points");
    sub->add_option("--circle-grid", ov.circle_grid, "angles on the half circle");
    sub->add_option("--sphere-polar", ov.sphere_polar, "polar grid points");
    sub->add_option("--sphere-azimuth", ov.sphere_azimuth, "azimuth grid points");
    sub->add_option("--refine-starts", ov.refine_starts, "local refinements from the grid");
  };

  auto* check = app.add_subcommand("check", "validate the assumptions and compute the storage scale");
  global(check);
  std::string emit_path;
  check->add_option("--emit-config", emit_path, "write the effective configuration");

  auto* gain = app.add_subcommand("gain", "estimate the gain for one scaling");
  global(gain);
  double gain_L = 0.0;
  gain->add_option("--L", gain_L, "gain scaling")->required();

  auto* opt = app.add_subcommand("optimize", "minimize the gain estimate over L");
  global(opt);
  double L_min = 0.3, L_max = 2.0;
  opt->add_option("--L-min", L_min, "lower end of the L range");
  opt->add_option("--L-max", L_max, "upper end of the L range");

  auto* sw = app.add_subcommand("sweep", "tabulate gain estimates over (d, L)");
  global(sw);
  std::string d_list = "0,-0.25,-0.5,-0.75";
  std::string L_list;
  bool have_L_list = false;
  bool baseline = true;
  sw->add_option("--d-list", d_list, "comma-separated degrees");
  auto* L_list_opt = sw->add_option("--L-list", L_list, "comma-separated scalings (default: 17 log-spaced in [0.3, 2])");
  sw->add_flag("!--no-baseline", baseline, "skip the H-infinity column");

  auto* sim = app.add_subcommand("simulate", "simulate the error dynamics and report norm quotients");
  global(sim);
  SimFlags sf;
  sim->add_option("--L", sf.L, "base gain scaling (default: config L)");
  sim->add_flag("--optimal", sf.optimal, "use the optimal scaling on [0.3, 2] as base");
  sim->add_option("--L-multiplier", sf.multipliers, "comma-separated multiples of the base L");
  sim->add_option("--kappa", sf.kappa, "dilation for the quotient experiment");
  sim->add_option("--a0", sf.a0);
  sim->add_option("--omega0", sf.omega0);
  sim->add_option("--a-nu", sf.a_nu);
  sim->add_option("--omega-nu", sf.omega_nu);
  sim->add_option("--z1", sf.z01, "initial z1");
  sim->add_option("--z2", sf.z02, "initial z2");
  sim->add_option("--periods", sf.periods);
  sim->add_option("--sample-time", sf.sample_time);
  sim->add_flag("--no-noise", sf.no_noise);
  sim->add_flag("--no-disturbance", sf.no_disturbance);
  sim->add_option("--stride", sf.stride, "write every n-th sample")->check(CLI::PositiveNumber);

  auto* rat = app.add_subcommand("ratios", "analytic gain ratio curves under dilation");
  global(rat);
  double rd = -0.5, kappa_max = 4.0;
  std::size_t points = 41;
  rat->add_option("--d", rd, "homogeneity degree");
  rat->add_option("--kappa-max", kappa_max, "kappa range [1/kappa_max, kappa_max]");
  rat->add_option("--points", points, "number of kappa values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("argument", e.what(), kArgument);
  }
  have_L_list = L_list_opt->count() > 0;

  try {
    if (!man.config_path.empty()) man.cfg = load_config(man.config_path);
    ov.apply(man.cfg);
    man.threads = resolve_threads(man.threads);

    if (check->parsed()) {
      man.subcommand = "check";
      return cmd_check(man, emit_path);
    }
    if (gain->parsed()) {
      man.subcommand = "gain";
      return cmd_gain(man, gain_L);
    }
    if (opt->parsed()) {
      man.subcommand = "optimize";
      return cmd_optimize(man, L_min, L_max);
    }
    if (sw->parsed()) {
      man.subcommand = "sweep";
      if (!have_L_list) {
        std::string def;
        for (double L : log_spaced(0.3, 2.0, 17)) def += format_number(L) + ",";
        L_list = def;
      }
      return cmd_sweep(man, d_list, L_list, baseline);
    }
    if (sim->parsed()) {
      man.subcommand = "simulate";
      return cmd_simulate(man, sf);
    }
    if (rat->parsed()) {
      man.subcommand = "ratios";
      return cmd_ratios(man, rd, kappa_max, points);
    }
  } catch (const Error& e) {
    return fail(e.reason(), e.what(), exit_code_for(e));
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kNumeric);
  }
  return kArgument;
}
