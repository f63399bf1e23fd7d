#pragma once

// Experiment drivers behind the command-line tool: configuration, sweeps and
// their CSV/JSON rendering.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gausslink/sweep.hpp"

namespace gausslink {

enum class Command { ThresholdVsDa, ThresholdVsLoss, DeviceRun, EbitRate, Validate };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name);

/// Flat configuration shared by all commands. Each command reads the fields
/// it needs; JSON keys carry the field names.
struct ExperimentConfig {
  /// Command name the file was written for; empty accepts any command.
  std::string experiment;
  /// d_a is ignored by threshold-vs-da, tau_a by threshold-vs-loss.
  DeviceCaps caps;
  std::vector<double> squeezing_db{5.0};
  /// Squeezing parameter; overrides squeezing_db when set.
  std::optional<double> r;

  std::vector<double> d_b_values{1e-2, 1e2};
  double d_a_min = 1e-2;
  double d_a_max = 1e4;
  std::size_t d_a_points = 201;

  double loss_db_min = 0.0;
  double loss_db_max = 20.0;
  std::size_t loss_db_points = 201;
  /// Loss window (dB) used for the log-log slope fits.
  double fit_loss_db_min = 10.0;
  double fit_loss_db_max = 20.0;

  double fiber_km = 2.0;
  double fiber_db_per_km = 0.18;
  double bandwidth_hz = 2000.0;

  std::uint64_t seed = 20220;
  int jobs = 0;
  double validation_scale = 1.0;
  std::string out;
};

/// Defaults of each command: grids, device parameters and squeezing.
ExperimentConfig default_config(Command c);

/// Electro-opto-mechanical device: D_a = 26000, D_b = 124, n_th = 1000 and
/// port efficiencies folded into tau_a = 0.791 * 0.88, tau_b = 0.866 * 0.34.
DeviceCaps brubaker2022_caps();

/// Known presets: "brubaker2022". Throws Error(Config) otherwise.
void apply_preset(ExperimentConfig& cfg, std::string_view name);

/// Overrides fields from a flat JSON object. Unknown keys and wrong types
/// throw Error(Config).
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Throws Error(Config) on non-finite values, empty sweeps or invalid caps.
void validate(const ExperimentConfig& cfg, Command c);

/// Squeezing values a command runs at: r if set, else squeezing_db.
std::vector<Squeezing> squeezing_list(const ExperimentConfig& cfg);

/// Rows of numbers with named columns, plus named scalars derived from them.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;

  std::size_t column(std::string_view name) const;
};

/// Least-squares slope of log y against log x over points with x, y > 0.
/// NaN with fewer than two such points.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// n_th_max of the 8 symmetric topologies against D_a for every D_b, plus
/// the EM rows with only C_b optimized. Columns per topology: threshold,
/// can_entangle flag and the four argmax cooperativities.
Table threshold_vs_da(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

/// n_th_max of the 8 symmetric topologies against optical loss, with
/// slope.<topology> summaries: d log n_th_max / d log tau_a over the fit window.
Table threshold_vs_loss(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

/// Optimized E of all 14 topologies against external optical loss, for each
/// squeezing value, with the best loss split per topology.
Table device_run(const ExperimentConfig& cfg, Exec exec = Exec::Parallel);

struct EbitReport {
  double loss_db = 0.0;
  double tau_e = 1.0;
  double e = 0.0;
  double rate = 0.0;
  std::array<double, 4> coops{};
};

/// E-bit rate of IM down-conversion across the configured fiber.
EbitReport ebit_rate(const ExperimentConfig& cfg);

/// "# key=value" lines: command, tool version, every DeviceCaps field,
/// squeezing, seed and the grid settings.
std::string provenance_header(Command c, const ExperimentConfig& cfg);

std::string to_csv(Command c, const ExperimentConfig& cfg, const Table& t);

struct CommandOutput {
  std::string text;
  /// 0 success, 1 validation failure.
  int exit_code = 0;
  /// Human-readable summary for the terminal (validate only).
  std::string summary;
};

CommandOutput run_command(Command c, const ExperimentConfig& cfg);

}  // namespace gausslink
