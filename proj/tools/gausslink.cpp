// gausslink: microwave-microwave entanglement thresholds and device runs.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration or I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gausslink/error.hpp"
#include "gausslink/experiments.hpp"

namespace {

constexpr const char* kFooter = R"(
Conventions:
  squeezing dB = 10·log₁₀(e^{2r})   (r = 0.58 is about 5 dB)
  loss dB = −10·log₁₀(τ)            (τ = 0.5 is about 3 dB)

Commands:
  threshold-vs-da    CSV: n_th thresholds against D_a for each D_b
  threshold-vs-loss  CSV: n_th thresholds against optical loss, with log-log slopes
  device-run         CSV: optimized log-negativity against external optical loss
  ebit-rate          JSON: e-bit rate of IM down-conversion over fiber
  validate           JSON: randomized property and oracle checks

The config file is a flat JSON object; see README.md for the keys.)";

int fail(int code, const std::string& what) {
  std::cerr << "gausslink: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gausslink;

  CLI::App app{"Gaussian microwave-microwave entanglement distribution", "gausslink"};
  app.footer(kFooter);
  app.set_version_flag("--version", std::string("gausslink ") + GAUSSLINK_VERSION);

  std::string command, config_path, preset, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  app.add_option("command", command, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"threshold-vs-da", "threshold-vs-loss", "device-run", "ebit-rate",
                             "validate"}));
  app.add_option("--config", config_path, "Flat JSON configuration file");
  app.add_option("--preset", preset, "Bundled device parameters")
      ->check(CLI::IsMember({"brubaker2022"}));
  app.add_option("--out", out, "Output file (default: stdout)");
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--jobs", jobs, "Worker threads (0: all cores)")->check(CLI::Range(0, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Command cmd = *parse_command(command);
  CommandOutput result;
  ExperimentConfig cfg = default_config(cmd);
  try {
    if (!preset.empty()) apply_preset(cfg, preset);
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (!out.empty()) cfg.out = out;
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    validate(cfg, cmd);
    result = run_command(cmd, cfg);
  } catch (const Error& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(2, e.what());
  }

  if (cfg.out.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f || !(f << result.text) || !f.flush()) {
      return fail(2, "cannot write '" + cfg.out + "'");
    }
  }
  if (!result.summary.empty()) std::cerr << result.summary;
  return result.exit_code;
}
