// qecmag command line front end: parses a config file, dispatches one of the
// experiment commands, and writes CSV/JSON-lines outputs plus a manifest
// sibling per output file.
//
// Exit codes: 0 success (warnings allowed), 2 config error, 3 numerical
// failure.

#include "CLI11.hpp"
#include "json.hpp"

#include <qecmag/config.hpp>
#include <qecmag/experiments.hpp>
#include <qecmag/sensing.hpp>
#include <qecmag/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace qecmag;
namespace fs = std::filesystem;

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<int> runs;
};

// Full precision so reruns are byte-comparable.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void apply_overrides(ExperimentConfig& cfg, const CommonFlags& flags) {
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.runs) cfg.n_runs = *flags.runs;
  if (flags.mode) {
    if (*flags.mode == "deterministic") {
      cfg.mode = RunMode::deterministic;
    } else if (*flags.mode == "trajectory") {
      cfg.mode = RunMode::trajectory;
    } else {
      throw ConfigError("--mode must be deterministic or trajectory, got '" + *flags.mode + "'",
                        0);
    }
  }
}

nlohmann::json resolved_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["gamma"] = cfg.gamma;
  j["tau_ec"] = cfg.tau_ec;
  j["p_gate"] = cfg.p_gate;
  j["g_s"] = std::isnan(cfg.g_s) ? nlohmann::json() : nlohmann::json(cfg.g_s);
  j["n_runs"] = cfg.n_runs;
  j["total_time"] = cfg.total_time;
  j["seed"] = cfg.seed;
  j["mode"] = cfg.mode == RunMode::deterministic ? "deterministic" : "trajectory";
  j["abort_policy"] =
      cfg.abort_policy == AbortPolicy::continue_uncorrected ? "continue" : "discard";
  j["workers"] = cfg.workers;
  j["substeps"] = cfg.substeps;
  j["fine_sampling"] = cfg.fine_sampling;
  if (cfg.coupler) {
    nlohmann::json c;
    c["g_prime"] = cfg.coupler->g_prime;
    c["delta"] = cfg.coupler->delta;
    c["alpha"] = cfg.coupler->alpha;
    c["g_s"] = cfg.coupler->g_s;
    c["dgs_dphi"] = cfg.coupler->dgs_dphi;
    c["area_um2"] = cfg.coupler->area_um2;
    j["coupler"] = c;
  }
  return j;
}

void write_manifest(const fs::path& output_file, const std::string& command, const Config& config,
                    const nlohmann::json& resolved, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double wall_clock_s,
                    const std::vector<std::string>& warnings,
                    const nlohmann::json& extra = nlohmann::json::object()) {
  nlohmann::json m;
  m["command"] = command;
  m["version"] = version_string;
  m["config_file"] = config.source_name();
  m["config_text"] = config.raw_text();
  m["resolved"] = resolved;
  m["seed"] = seed;
  m["outputs"] = outputs;
  m["wall_clock_s"] = wall_clock_s;
  m["warnings"] = warnings;
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();

  fs::path path = output_file;
  path += ".manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << m.dump(2) << "\n";
}

void write_series_csv(const fs::path& path, const char* value_column, const TimeSeries& series,
                      const std::string& mode) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "time," << value_column << ",stderr,mode\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double se = i < series.stderrs.size() ? series.stderrs[i] : 0.0;
    out << fmt(series.times[i]) << ',' << fmt(series.values[i]) << ',' << fmt(se) << ',' << mode
        << "\n";
  }
}

std::pair<Complex, Complex> initial_amplitudes(const Config& config, const std::string& curve) {
  const std::string name = [&] {
    // same override chain as the numeric keys: curve, then [run]
    if (!curve.empty() && config.has("curve " + curve, "initial"))
      return config.text("curve " + curve, "initial");
    return config.text_or("run", "initial", "plus");
  }();
  if (name == "plus") return {Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0)};
  if (name == "minus") return {Complex(M_SQRT1_2, 0.0), Complex(-M_SQRT1_2, 0.0)};
  if (name == "zero") return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  if (name == "one") return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  throw ConfigError("initial must be one of plus, minus, zero, one; got '" + name + "'", 0);
}

std::string mode_name(const ExperimentConfig& cfg) {
  return cfg.mode == RunMode::deterministic ? "deterministic" : "trajectory";
}

int cmd_series(const CommonFlags& flags, bool ramsey_mode) {
  const auto t0 = std::chrono::steady_clock::now();
  const Config config = Config::from_file(flags.config_path);
  const char* command = ramsey_mode ? "ramsey" : "fidelity";

  std::vector<std::string> curves = config.curve_names();
  if (curves.empty()) curves.push_back("");

  fs::create_directories(flags.out_dir);
  for (const std::string& curve : curves) {
    ExperimentConfig cfg = config.experiment(curve);
    apply_overrides(cfg, flags);

    TimeSeries series;
    if (ramsey_mode) {
      series = ramsey(cfg);
    } else {
      auto [alpha, beta] = initial_amplitudes(config, curve);
      series = run_cycles(cfg, alpha, beta, false);
    }

    const std::string stem =
        curve.empty() ? std::string(command) : std::string(command) + "_" + curve;
    fs::path csv = fs::path(flags.out_dir) / (stem + ".csv");
    write_series_csv(csv, ramsey_mode ? "population" : "fidelity", series, mode_name(cfg));

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(csv, command, config, resolved_json(cfg), cfg.seed, {csv.string()}, wall, {});
    std::cout << csv.string() << "\n";
  }
  return 0;
}

int cmd_gamma_eff(const CommonFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  const Config config = Config::from_file(flags.config_path);

  // Default sweep: the documented reference grid, 15 correction rounds per
  // cell (the horizon the calibration numbers in docs were frozen on).
  std::vector<double> taus = {0.01, 0.05, 0.075};
  std::vector<double> pgs = {0.0, 1e-4, 3e-4, 1e-3};
  if (config.has("sweep", "tau_ec")) taus = config.number_list("sweep", "tau_ec", Quantity::time_us);
  if (config.has("sweep", "p_gate"))
    pgs = config.number_list("sweep", "p_gate", Quantity::probability);
  const int rounds =
      static_cast<int>(config.number_or("sweep", "rounds", Quantity::pure, 15.0));
  if (rounds < 12) throw ConfigError("sweep rounds must be >= 12 for a usable fit window", 0);

  ExperimentConfig base = config.experiment();
  apply_overrides(base, flags);

  std::vector<std::string> warnings;
  std::vector<XiSweepPoint> sweep;

  fs::create_directories(flags.out_dir);
  fs::path csv = fs::path(flags.out_dir) / "gamma_eff.csv";
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out << "tau_ec,p_gate,gamma_eff,ci_lo,ci_hi\n";

  for (double tau : taus) {
    for (double pg : pgs) {
      ExperimentConfig cfg = base;
      cfg.tau_ec = tau;
      cfg.p_gate = pg;
      cfg.total_time = rounds * tau;
      try {
        CycleOutput run =
            run_cycles_full(cfg, Complex(M_SQRT1_2, 0.0), Complex(M_SQRT1_2, 0.0), false);
        const RateFit fit = fit_gamma_eff(run.x_envelope, CoherenceTransform::direct);
        out << fmt(tau) << ',' << fmt(pg) << ',' << fmt(fit.gamma_eff) << ',' << fmt(fit.ci[0])
            << ',' << fmt(fit.ci[1]) << "\n";
        sweep.push_back({tau, pg, fit.gamma_eff});
      } catch (const fit_error& e) {
        out << fmt(tau) << ',' << fmt(pg) << ",nan,nan,nan\n";
        warnings.push_back("fit failed at tau_ec=" + fmt(tau) + " p_gate=" + fmt(pg) + ": " +
                           e.what());
      }
    }
  }
  out.close();

  nlohmann::json extra = nlohmann::json::object();
  try {
    const XiFit xi = fit_xi(sweep, base.gamma);
    std::cout << "xi = " << fmt(xi.xi) << "  ci [" << fmt(xi.ci[0]) << ", " << fmt(xi.ci[1])
              << "]  intercept " << fmt(xi.intercept) << "\n";
    if (!xi.warning.empty()) warnings.push_back(xi.warning);
    extra["xi"] = xi.xi;
    extra["xi_ci"] = {xi.ci[0], xi.ci[1]};
  } catch (const fit_error& e) {
    warnings.push_back(std::string("xi fit failed: ") + e.what());
    std::cout << "warning: xi fit failed: " << e.what() << "\n";
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(csv, "gamma_eff", config, resolved_json(base), base.seed, {csv.string()}, wall,
                 warnings, extra);
  std::cout << csv.string() << "\n";
  return 0;
}

int cmd_sensitivity(const CommonFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  const Config config = Config::from_file(flags.config_path);

  // Gamma_eff for the formula, in 1/s. Accepts a rate directly (internal
  // units 1/us) or either coherence-time convention.
  double gamma_eff_per_s = 0.0;
  if (config.has("sensitivity", "gamma_eff")) {
    gamma_eff_per_s = config.number("sensitivity", "gamma_eff", Quantity::rate) * 1e6;
  } else if (config.has("sensitivity", "t2_us")) {
    gamma_eff_per_s = 1e6 / config.number("sensitivity", "t2_us", Quantity::time_us);
  } else if (config.has("sensitivity", "t1_us")) {
    gamma_eff_per_s = 1e6 / (2.0 * config.number("sensitivity", "t1_us", Quantity::time_us));
  } else {
    throw ConfigError("[sensitivity] needs gamma_eff, t2_us, or t1_us", 0);
  }

  std::optional<double> responsivity;
  if (config.has("sensitivity", "responsivity_mhz_per_t"))
    responsivity = config.number("sensitivity", "responsivity_mhz_per_t", Quantity::pure);
  if (!responsivity) {
    if (auto params = config.coupler_params()) {
      if (params->dgs_dphi > 0.0 && params->area_um2 > 0.0)
        responsivity = flux_responsivity(*params);
    }
  }
  if (!responsivity)
    throw ConfigError(
        "responsivity missing: set [sensitivity] responsivity_mhz_per_t or coupler dgs_dphi + "
        "area_um2",
        0);

  const double total_time_s =
      config.number_or("sensitivity", "total_time_s", Quantity::pure, 1.0);

  SensitivityInputs inputs;
  inputs.gamma_eff = gamma_eff_per_s;
  inputs.responsivity = *responsivity;
  inputs.total_time = total_time_s;

  nlohmann::json rec;
  rec["gamma_eff_per_s"] = gamma_eff_per_s;
  rec["responsivity_mhz_per_t"] = *responsivity;
  rec["total_time_s"] = total_time_s;

  if (*responsivity == 0.0) {
    rec["delta_b"] = nullptr;
    rec["flag"] = "zero responsivity: sensitivity diverges";
  } else {
    const SensitivityResult res = sensitivity(inputs);
    const OptimalTime tstar = optimal_time(gamma_eff_per_s);
    rec["delta_b"] = res.delta_b;
    rec["delta_b_h_normalized"] = res.delta_b_h_normalized;
    rec["t_star_s"] = tstar.t_star;
    rec["t_star_numeric_s"] = tstar.t_star_numeric;
  }

  fs::create_directories(flags.out_dir);
  fs::path path = fs::path(flags.out_dir) / "sensitivity.jsonl";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << rec.dump() << "\n";
  out.close();

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::json resolved;
  resolved["gamma_eff_per_s"] = gamma_eff_per_s;
  resolved["responsivity_mhz_per_t"] = *responsivity;
  resolved["total_time_s"] = total_time_s;
  write_manifest(path, "sensitivity", config, resolved, 0, {path.string()}, wall, {});
  std::cout << rec.dump() << "\n";
  std::cout << path.string() << "\n";
  return 0;
}

int cmd_threshold(const CommonFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  const Config config = Config::from_file(flags.config_path);

  const std::vector<double> taus = config.number_list("sweep", "tau_ec", Quantity::time_us);
  const std::vector<double> pgs = config.number_list("sweep", "p_gate", Quantity::probability);

  ExperimentConfig base = config.experiment();
  apply_overrides(base, flags);

  const ThresholdMap map = threshold_map(base, taus, pgs);

  fs::create_directories(flags.out_dir);
  fs::path csv = fs::path(flags.out_dir) / "threshold.csv";
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out << "tau_ec,p_gate,verdict,gamma_eff,boundary\n";

  const std::size_t np = pgs.size();
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      const ThresholdCell& cell = map.cells[ti * np + pi];
      // flag the two cells bracketing the better->worse crossing
      bool boundary = false;
      if (pi + 1 < np) {
        const ThresholdCell& next = map.cells[ti * np + pi + 1];
        boundary = boundary || (cell.better && !next.better && !next.fit_failed);
      }
      if (pi > 0) {
        const ThresholdCell& prev = map.cells[ti * np + pi - 1];
        boundary = boundary || (prev.better && !cell.better && !prev.fit_failed);
      }
      const char* verdict =
          cell.fit_failed ? "fit_failed" : (cell.better ? "better" : "worse");
      out << fmt(cell.tau_ec) << ',' << fmt(cell.p_gate) << ',' << verdict << ','
          << fmt(cell.gamma_eff) << ',' << (boundary ? 1 : 0) << "\n";
    }
  }
  out.close();

  nlohmann::json extra;
  extra["boundary_p_gate"] = map.boundary;
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(csv, "threshold", config, resolved_json(base), base.seed, {csv.string()}, wall,
                 {}, extra);
  std::cout << csv.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-qubit amplitude-damping code magnetometry toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto add_common = [&](CLI::App* sub, bool wants_seed = true) {
    sub->add_option("--config", flags.config_path, "config file path")->required();
    sub->add_option("--out", flags.out_dir, "output directory (default .)");
    if (wants_seed) {
      sub->add_option("--seed", flags.seed, "override the config seed");
      sub->add_option("--mode", flags.mode, "deterministic|trajectory");
      sub->add_option("--runs", flags.runs, "trajectory shot count");
    }
  };

  CLI::App* fid = app.add_subcommand("fidelity", "encoded fidelity curves");
  CLI::App* ram = app.add_subcommand("ramsey", "signal-on population curves");
  CLI::App* gam = app.add_subcommand("gamma_eff", "effective-rate sweep and xi fit");
  CLI::App* sen = app.add_subcommand("sensitivity", "sensitivity arithmetic record");
  CLI::App* thr = app.add_subcommand("threshold", "better/worse map over (tau_ec, p_gate)");
  add_common(fid);
  add_common(ram);
  add_common(gam);
  add_common(sen, false);
  add_common(thr);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fid->parsed()) return cmd_series(flags, false);
    if (ram->parsed()) return cmd_series(flags, true);
    if (gam->parsed()) return cmd_gamma_eff(flags);
    if (sen->parsed()) return cmd_sensitivity(flags);
    if (thr->parsed()) return cmd_threshold(flags);
  } catch (const qecmag::ConfigError& e) {
    std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qecmag::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const qecmag::fit_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
