// rydsim: command-line front end for the cooling, ramp and verification runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/gauge.hpp"
#include "rydsim/output.hpp"
#include "rydsim/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "Run configuration file (key = value with [section] headers)");
  sub->add_option("--seed", f.seed, "Master seed");
  sub->add_option("--workers", f.workers, "Trajectory worker threads (0: RYDSIM_WORKERS or all cores)");
  sub->add_option("--out", f.out, "Output directory");
  sub->add_option("--set", f.sets, "Override one config key, section.key=value (repeatable)");
}

// Per-experiment overrides are stored as "section.key=value" and applied after
// --set so the named flags win.
void add_override(CLI::App* sub, std::vector<std::string>& sink, const std::string& flag, const std::string& key,
                  const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&sink, key](const std::string& v) { sink.push_back(key + "=" + v); }, help);
}

rydsim::RunConfig build_config(const CommonFlags& f, const std::vector<std::string>& overrides,
                               const std::string& experiment) {
  rydsim::RunConfig c = f.config_path.empty() ? rydsim::RunConfig{} : rydsim::RunConfig::load(f.config_path);
  c.experiment = experiment;
  for (const auto& s : f.sets) c.set(s);
  for (const auto& s : overrides) c.set(s);
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  if (f.out) c.out = *f.out;
  c.validate();
  return c;
}

void write_run_info(const rydsim::RunConfig& c, double seconds) {
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["workers"] = c.workers > 0 ? c.workers : rydsim::default_workers();
  j["wall_time_s"] = seconds;
  rydsim::write_text_file((std::filesystem::path(c.out) / "run_info.json").string(), j.dump(2) + "\n");
  rydsim::write_text_file((std::filesystem::path(c.out) / "config.ini").string(), c.serialize());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stroboscopic Rydberg-atom quantum simulator: cooling, ramp and verification runs"};
  app.require_subcommand(1);

  CommonFlags common;
  std::vector<std::string> overrides;

  auto* toric = app.add_subcommand("toric-cool", "Dissipative toric-code cooling (dense or walker engine)");
  add_common(toric, common);
  add_override(toric, overrides, "--L", "toric.L", "Linear lattice size");
  add_override(toric, overrides, "--sweeps", "toric.sweeps", "Number of sweeps");
  add_override(toric, overrides, "--trajectories", "toric.trajectories", "Number of trajectories");
  add_override(toric, overrides, "--engine", "toric.engine", "dense or walker");
  add_override(toric, overrides, "--phi", "toric.phi", "Coherent phase per step");
  add_override(toric, overrides, "--theta", "toric.theta", "Dissipative angle per step");
  add_override(toric, overrides, "--errors", "toric.errors", "Enable the imperfect-gate error (true/false)");
  add_override(toric, overrides, "--q", "toric.q", "Error operator magnitude |Q|");
  add_override(toric, overrides, "--q-letter", "toric.q_letter", "Error operator letter X, Y or Z");
  add_override(toric, overrides, "--q-spec", "toric.q_spec", "Custom Q on region-local sites, coeff*string;...");
  add_override(toric, overrides, "--p-heat", "toric.p_heat", "Walker heating probability (negative: calibrated)");
  add_override(toric, overrides, "--schedule", "toric.schedule", "random or round_robin");

  auto* gcool = app.add_subcommand("gauge-cool", "Constraint and Rokhsar-Kivelson cooling of the U(1) gauge model");
  add_common(gcool, common);
  add_override(gcool, overrides, "--sweeps", "gauge.sweeps", "Number of sweeps");
  add_override(gcool, overrides, "--constraint-sweeps", "gauge.constraint_sweeps", "Sweeps with constraint jumps only");
  add_override(gcool, overrides, "--trajectories", "gauge.trajectories", "Number of trajectories");
  add_override(gcool, overrides, "--initial", "gauge.initial", "all_down or covering");

  auto* ramp = app.add_subcommand("gauge-ramp", "Trotterized ramp away from the Rokhsar-Kivelson point");
  add_common(ramp, common);
  add_override(ramp, overrides, "--phi-scales", "ramp.phi_scales", "Comma-separated Trotter steps in hbar/J");
  add_override(ramp, overrides, "--total-time", "ramp.total_time", "Ramp duration in hbar/J");

  auto* verify = app.add_subcommand("verify", "Run the oracle-backed verification checks");
  add_common(verify, common);
  bool no_engine = false;
  bool mutate_bp = false;
  verify->add_flag("--no-engine", no_engine, "Skip the Monte Carlo engine-equivalence check");
  verify->add_flag("--mutate-bp", mutate_bp, "Flip the sign of one ring-exchange string (mutation test)");

  auto* ryd = app.add_subcommand("ryd-params", "Gate time, blockade radius and energy scales as JSON");
  add_common(ryd, common);
  add_override(ryd, overrides, "--omega-p", "ryd.omega_p", "Probe Rabi frequency (rad/s)");
  add_override(ryd, overrides, "--omega-c", "ryd.omega_c", "Coupling Rabi frequency (rad/s)");
  add_override(ryd, overrides, "--delta", "ryd.delta", "Detuning (rad/s)");
  add_override(ryd, overrides, "--c6", "ryd.c6", "Van der Waals coefficient (rad/s m^6); 0 omits the radius");
  add_override(ryd, overrides, "--z", "ryd.z", "Number of sublattices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  rydsim::RunConfig config;
  try {
    config = build_config(common, overrides, chosen->get_name());
  } catch (const std::exception& e) {
    std::cerr << "rydsim: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (chosen == verify) {
      rydsim::VerifyOptions vo;
      vo.include_engine = !no_engine;
      vo.seed = config.seed;
      vo.workers = config.workers > 0 ? config.workers : rydsim::default_workers();
      if (mutate_bp) {
        vo.ring_exchange = [](std::span<const int> p) {
          rydsim::OperatorSum s = rydsim::ring_exchange_terms(p);
          s.terms.front().coeff = -s.terms.front().coeff;
          return s;
        };
      }
      const auto checks = rydsim::run_verification(vo);
      const std::string report = rydsim::verification_report(checks);
      std::cout << report;
      if (common.out) rydsim::write_text_file((std::filesystem::path(config.out) / "verify.txt").string(), report);
      return rydsim::all_passed(checks) ? 0 : kExitVerifyFailed;
    }

    rydsim::ExperimentResult result;
    if (chosen == toric) result = rydsim::cmd_toric_cool(config);
    if (chosen == gcool) result = rydsim::cmd_gauge_cool(config);
    if (chosen == ramp) result = rydsim::cmd_gauge_ramp(config);
    if (chosen == ryd) result = rydsim::cmd_ryd_params(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rydsim::write_result(result, config.out);
    write_run_info(config, seconds);
    if (chosen == ryd) {
      std::cout << result.find("ryd_params.json")->content;
    } else {
      std::cout << "wrote " << config.out << " (" << result.files.size() + 1 << " files, " << seconds << " s)\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "rydsim: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
