#include "gausslink/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gausslink/error.hpp"
#include "gausslink/properties.hpp"

namespace gausslink {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommandNames{{
    {Command::ThresholdVsDa, "threshold-vs-da"},
    {Command::ThresholdVsLoss, "threshold-vs-loss"},
    {Command::DeviceRun, "device-run"},
    {Command::EbitRate, "ebit-rate"},
    {Command::Validate, "validate"},
}};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt(v[i]);
  }
  return s;
}

const char* const kCoopNames[4] = {"C_a1", "C_b1", "C_a2", "C_b2"};

void add_coop_columns(std::vector<std::string>& cols, const std::string& name) {
  for (const char* c : kCoopNames) cols.push_back(name + "." + c);
}

// Typed setters for the flat JSON keys.
using Setter = std::function<void(ExperimentConfig&, const nlohmann::json&, const std::string&)>;

double as_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) config_error("key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t as_unsigned(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    config_error("key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> as_list(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) config_error("key '" + key + "' must be a number or an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, key));
  return out;
}

template <class T>
Setter number(T ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
    c.*field = as_number(v, k);
  };
}

Setter cap(double DeviceCaps::*field) {
  return [field](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
    c.caps.*field = as_number(v, k);
  };
}

Setter rate(double PhysicalRates::*field) {
  return [field](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
    c.caps.rates.*field = as_number(v, k);
  };
}

Setter count(std::size_t ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
    c.*field = static_cast<std::size_t>(as_unsigned(v, k));
  };
}

Setter list(std::vector<double> ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
    c.*field = as_list(v, k);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"d_a", cap(&DeviceCaps::d_a)},
      {"d_b", cap(&DeviceCaps::d_b)},
      {"tau_a", cap(&DeviceCaps::tau_a)},
      {"tau_b", cap(&DeviceCaps::tau_b)},
      {"n_th", cap(&DeviceCaps::n_th)},
      {"kappa_a", rate(&PhysicalRates::kappa_a)},
      {"kappa_b", rate(&PhysicalRates::kappa_b)},
      {"gamma_m", rate(&PhysicalRates::gamma_m)},
      {"squeezing_db", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         c.squeezing_db = as_list(v, k);
         c.r.reset();
       }},
      {"r", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         c.r = as_number(v, k);
       }},
      {"d_b_values", list(&ExperimentConfig::d_b_values)},
      {"d_a_min", number(&ExperimentConfig::d_a_min)},
      {"d_a_max", number(&ExperimentConfig::d_a_max)},
      {"d_a_points", count(&ExperimentConfig::d_a_points)},
      {"loss_db_min", number(&ExperimentConfig::loss_db_min)},
      {"loss_db_max", number(&ExperimentConfig::loss_db_max)},
      {"loss_db_points", count(&ExperimentConfig::loss_db_points)},
      {"fit_loss_db_min", number(&ExperimentConfig::fit_loss_db_min)},
      {"fit_loss_db_max", number(&ExperimentConfig::fit_loss_db_max)},
      {"fiber_km", number(&ExperimentConfig::fiber_km)},
      {"fiber_db_per_km", number(&ExperimentConfig::fiber_db_per_km)},
      {"bandwidth_hz", number(&ExperimentConfig::bandwidth_hz)},
      {"validation_scale", number(&ExperimentConfig::validation_scale)},
      {"seed", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         c.seed = as_unsigned(v, k);
       }},
      {"jobs", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         const auto n = as_unsigned(v, k);
         if (n > 4096) config_error("key 'jobs' is too large");
         c.jobs = static_cast<int>(n);
       }},
      {"out", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         if (!v.is_string()) config_error("key '" + k + "' must be a string");
         c.out = v.get<std::string>();
       }},
      {"experiment", [](ExperimentConfig& c, const nlohmann::json& v, const std::string& k) {
         if (!v.is_string()) config_error("key '" + k + "' must be a string");
         c.experiment = v.get<std::string>();
       }},
  };
  return m;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) config_error(std::string(name) + " must be finite");
}

std::vector<double> loss_grid(const ExperimentConfig& cfg) {
  return linear_grid(cfg.loss_db_min, cfg.loss_db_max, cfg.loss_db_points);
}

// One threshold per topology plus flag and argmax columns.
void append_threshold(std::vector<double>& row, const ThresholdResult& t) {
  row.push_back(t.n_th_max);
  row.push_back(t.cannot_entangle ? 0.0 : 1.0);
  row.insert(row.end(), t.argmax.begin(), t.argmax.end());
}

void add_threshold_columns(std::vector<std::string>& cols, const std::string& name) {
  cols.push_back(name);
  cols.push_back(name + ".can_entangle");
  add_coop_columns(cols, name);
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommandNames) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

DeviceCaps brubaker2022_caps() {
  DeviceCaps caps;
  caps.d_a = 26000.0;
  caps.d_b = 124.0;
  caps.n_th = 1000.0;
  caps.tau_a = 0.791 * 0.88;
  caps.tau_b = 0.866 * 0.34;
  return caps;
}

ExperimentConfig default_config(Command c) {
  ExperimentConfig cfg;
  switch (c) {
    case Command::ThresholdVsDa:
      cfg.caps.tau_a = 1.0;
      cfg.caps.tau_b = 0.75;
      cfg.r = 0.58;
      break;
    case Command::ThresholdVsLoss:
      cfg.caps.d_a = 1e4;
      cfg.caps.d_b = 1e3;
      cfg.caps.tau_b = 1.0;
      cfg.r = 0.92;
      break;
    case Command::DeviceRun:
      cfg.caps = brubaker2022_caps();
      cfg.squeezing_db = {3.0, 10.0};
      cfg.loss_db_max = 10.0;
      break;
    case Command::EbitRate:
      cfg.caps = brubaker2022_caps();
      // IM down-conversion uses no external squeezing.
      cfg.r = 0.0;
      break;
    case Command::Validate:
      break;
  }
  return cfg;
}

void apply_preset(ExperimentConfig& cfg, std::string_view name) {
  if (name != "brubaker2022") config_error("unknown preset '" + std::string(name) + "'");
  cfg.caps = brubaker2022_caps();
  cfg.d_b_values = {cfg.caps.d_b};
}

void apply_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) config_error("configuration must be a JSON object");
  if (auto it = j.find("preset"); it != j.end()) {
    if (!it->is_string()) config_error("key 'preset' must be a string");
    apply_preset(cfg, it->get<std::string>());
  }
  const auto& table = setters();
  for (const auto& [key, value] : j.items()) {
    if (key == "preset") continue;
    const auto s = table.find(key);
    if (s == table.end()) config_error("unknown configuration key '" + key + "'");
    s->second(cfg, value, key);
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open configuration file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    config_error("cannot parse '" + path + "': " + e.what());
  }
  apply_json(cfg, j);
}

void validate(const ExperimentConfig& cfg, Command c) {
  if (!cfg.experiment.empty() && cfg.experiment != to_string(c)) {
    config_error("configuration is for '" + cfg.experiment + "', not '" +
                 std::string(to_string(c)) + "'");
  }
  DeviceCaps caps = cfg.caps;
  // Swept fields get a placeholder so the remaining caps can be checked.
  if (c == Command::ThresholdVsDa) caps.d_a = 1.0;
  if (c == Command::ThresholdVsLoss) caps.tau_a = 1.0;
  try {
    caps.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (cfg.r) {
    if (!std::isfinite(*cfg.r) || *cfg.r < 0.0) config_error("r must be finite and >= 0");
  } else {
    if (cfg.squeezing_db.empty()) config_error("squeezing_db must not be empty");
    for (double db : cfg.squeezing_db) {
      if (!std::isfinite(db) || db < 0.0) config_error("squeezing_db values must be finite and >= 0");
    }
  }
  require_finite(cfg.d_a_min, "d_a_min");
  require_finite(cfg.d_a_max, "d_a_max");
  require_finite(cfg.loss_db_min, "loss_db_min");
  require_finite(cfg.loss_db_max, "loss_db_max");
  require_finite(cfg.fit_loss_db_min, "fit_loss_db_min");
  require_finite(cfg.fit_loss_db_max, "fit_loss_db_max");
  require_finite(cfg.fiber_km, "fiber_km");
  require_finite(cfg.fiber_db_per_km, "fiber_db_per_km");
  require_finite(cfg.bandwidth_hz, "bandwidth_hz");
  require_finite(cfg.validation_scale, "validation_scale");
  switch (c) {
    case Command::ThresholdVsDa:
      if (cfg.d_b_values.empty()) config_error("d_b_values must not be empty");
      for (double d : cfg.d_b_values) {
        if (!std::isfinite(d) || d < 0.0) config_error("d_b_values must be finite and >= 0");
      }
      if (!(cfg.d_a_min > 0.0 && cfg.d_a_max >= cfg.d_a_min)) {
        config_error("D_a range needs 0 < d_a_min <= d_a_max");
      }
      if (cfg.d_a_points == 0) config_error("d_a_points must be positive");
      break;
    case Command::ThresholdVsLoss:
    case Command::DeviceRun:
      if (!(cfg.loss_db_min >= 0.0 && cfg.loss_db_max >= cfg.loss_db_min)) {
        config_error("loss range needs 0 <= loss_db_min <= loss_db_max");
      }
      if (cfg.loss_db_points == 0) config_error("loss_db_points must be positive");
      if (!(cfg.fit_loss_db_max >= cfg.fit_loss_db_min)) {
        config_error("fit window needs fit_loss_db_min <= fit_loss_db_max");
      }
      break;
    case Command::EbitRate:
      if (cfg.fiber_km < 0.0 || cfg.fiber_db_per_km < 0.0 || cfg.bandwidth_hz < 0.0) {
        config_error("fiber length, loss per km and bandwidth must be >= 0");
      }
      break;
    case Command::Validate:
      if (!(cfg.validation_scale > 0.0)) config_error("validation_scale must be positive");
      break;
  }
}

std::vector<Squeezing> squeezing_list(const ExperimentConfig& cfg) {
  if (cfg.r) return {Squeezing(*cfg.r)};
  std::vector<Squeezing> out;
  for (double db : cfg.squeezing_db) out.push_back(Squeezing::from_db(db));
  return out;
}

namespace {

// Configured squeezing values with the dB figure they were given in.
std::vector<std::pair<double, Squeezing>> squeezing_points(const ExperimentConfig& cfg) {
  std::vector<std::pair<double, Squeezing>> out;
  if (cfg.r) {
    const Squeezing r(*cfg.r);
    out.emplace_back(r.db(), r);
  } else {
    for (double db : cfg.squeezing_db) out.emplace_back(db, Squeezing::from_db(db));
  }
  return out;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "no column '" + std::string(name) + "'");
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return std::nan("");
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

Table threshold_vs_da(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg, Command::ThresholdVsDa);
  const Squeezing r = squeezing_list(cfg).front();
  const auto topologies = Topology::symmetric_all();
  const auto grid = log_grid(cfg.d_a_min, cfg.d_a_max, cfg.d_a_points);

  Table t;
  t.columns = {"D_b", "D_a"};
  for (const auto& top : topologies) add_threshold_columns(t.columns, top.name());
  add_threshold_columns(t.columns, "EM-down.cb_only");
  add_threshold_columns(t.columns, "EM-swap.cb_only");

  const std::size_t na = grid.size();
  t.rows = run_map(exec, cfg.d_b_values.size() * na, [&](std::size_t i) {
    DeviceCaps caps = cfg.caps;
    caps.d_b = cfg.d_b_values[i / na];
    caps.d_a = grid[i % na];
    std::vector<double> row{caps.d_b, caps.d_a};
    for (const auto& top : topologies) append_threshold(row, numeric_threshold(top, caps, r));
    append_threshold(row, em_threshold_cb_only(Topology::down(MoKind::EM), caps, r));
    append_threshold(row, em_threshold_cb_only(Topology::swap_sym(MoKind::EM), caps, r));
    return row;
  }, cfg.jobs);
  return t;
}

Table threshold_vs_loss(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg, Command::ThresholdVsLoss);
  const Squeezing r = squeezing_list(cfg).front();
  const auto topologies = Topology::symmetric_all();
  const auto losses = loss_grid(cfg);

  Table t;
  t.columns = {"loss_db", "tau_a"};
  for (const auto& top : topologies) add_threshold_columns(t.columns, top.name());

  t.rows = run_map(exec, losses.size(), [&](std::size_t i) {
    DeviceCaps caps = cfg.caps;
    caps.tau_a = tau_from_db(losses[i]);
    std::vector<double> row{losses[i], caps.tau_a};
    for (const auto& top : topologies) append_threshold(row, numeric_threshold(top, caps, r));
    return row;
  }, cfg.jobs);

  for (const auto& top : topologies) {
    const std::size_t col = t.column(top.name());
    std::vector<double> x, y;
    for (const auto& row : t.rows) {
      if (row[0] >= cfg.fit_loss_db_min - 1e-9 && row[0] <= cfg.fit_loss_db_max + 1e-9) {
        x.push_back(row[1]);
        y.push_back(row[col]);
      }
    }
    t.summary.emplace_back("slope." + top.name(), fit_loglog_slope(x, y));
  }
  return t;
}

Table device_run(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg, Command::DeviceRun);
  const auto topologies = Topology::all();
  const auto losses = loss_grid(cfg);
  std::vector<double> tau_e;
  for (double l : losses) tau_e.push_back(tau_from_db(l));

  Table t;
  t.columns = {"squeezing_db", "r", "loss_db", "tau_e"};
  for (const auto& top : topologies) {
    const std::string name = top.name();
    t.columns.push_back(name);
    t.columns.push_back(name + ".entangled");
    add_coop_columns(t.columns, name);
    for (std::size_t k = 0; k < loss_sites(top).size(); ++k) {
      t.columns.push_back(name + ".split" + std::to_string(k));
    }
  }

  for (const auto& [db, r] : squeezing_points(cfg)) {
    const auto grid = negativity_grid(topologies, cfg.caps, tau_e, r, exec, cfg.jobs);
    for (std::size_t i = 0; i < losses.size(); ++i) {
      std::vector<double> row{db, r.r(), losses[i], tau_e[i]};
      for (const SplitOptimum& o : grid[i]) {
        row.push_back(o.e);
        row.push_back(o.e > 0.0 ? 1.0 : 0.0);
        row.insert(row.end(), o.coops.begin(), o.coops.end());
        row.insert(row.end(), o.split.begin(), o.split.end());
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

EbitReport ebit_rate(const ExperimentConfig& cfg) {
  validate(cfg, Command::EbitRate);
  EbitReport rep;
  rep.loss_db = cfg.fiber_km * cfg.fiber_db_per_km;
  rep.tau_e = tau_from_db(rep.loss_db);
  const SplitOptimum o = optimize_loss_split(Topology::down(MoKind::IM), cfg.caps, cfg.caps.n_th,
                                             squeezing_list(cfg).front(), rep.tau_e);
  rep.e = o.e;
  rep.coops = o.coops;
  rep.rate = o.e * cfg.bandwidth_hz;
  return rep;
}

std::string provenance_header(Command c, const ExperimentConfig& cfg) {
  std::ostringstream h;
  auto line = [&h](const std::string& k, const std::string& v) { h << "# " << k << '=' << v << '\n'; };
  line("tool", std::string("gausslink ") + GAUSSLINK_VERSION);
  line("command", std::string(to_string(c)));
  line("d_a", c == Command::ThresholdVsDa ? "swept" : fmt(cfg.caps.d_a));
  line("d_b", c == Command::ThresholdVsDa ? "swept" : fmt(cfg.caps.d_b));
  line("tau_a", c == Command::ThresholdVsLoss ? "swept" : fmt(cfg.caps.tau_a));
  line("tau_b", fmt(cfg.caps.tau_b));
  line("n_th", fmt(cfg.caps.n_th));
  line("kappa_a", fmt(cfg.caps.rates.kappa_a));
  line("kappa_b", fmt(cfg.caps.rates.kappa_b));
  line("gamma_m", fmt(cfg.caps.rates.gamma_m));
  std::vector<double> rs, dbs;
  for (const auto& [db, r] : squeezing_points(cfg)) {
    rs.push_back(r.r());
    dbs.push_back(db);
  }
  line("r", join(rs));
  line("squeezing_db", join(dbs));
  line("seed", std::to_string(cfg.seed));
  switch (c) {
    case Command::ThresholdVsDa:
      line("d_b_values", join(cfg.d_b_values));
      line("d_a_grid", "log:" + fmt(cfg.d_a_min) + ':' + fmt(cfg.d_a_max) + ':' +
                           std::to_string(cfg.d_a_points));
      break;
    case Command::ThresholdVsLoss:
    case Command::DeviceRun:
      line("loss_db_grid", "linear:" + fmt(cfg.loss_db_min) + ':' + fmt(cfg.loss_db_max) + ':' +
                               std::to_string(cfg.loss_db_points));
      if (c == Command::ThresholdVsLoss) {
        line("fit_loss_db", fmt(cfg.fit_loss_db_min) + ':' + fmt(cfg.fit_loss_db_max));
      }
      break;
    default:
      break;
  }
  return h.str();
}

std::string to_csv(Command c, const ExperimentConfig& cfg, const Table& t) {
  std::ostringstream out;
  out << provenance_header(c, cfg);
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
    out << '\n';
  }
  for (const auto& [k, v] : t.summary) out << "# " << k << '=' << fmt(v) << '\n';
  return out.str();
}

namespace {

nlohmann::json caps_json(const DeviceCaps& caps) {
  return {{"d_a", caps.d_a},
          {"d_b", caps.d_b},
          {"tau_a", caps.tau_a},
          {"tau_b", caps.tau_b},
          {"n_th", caps.n_th},
          {"kappa_a", caps.rates.kappa_a},
          {"kappa_b", caps.rates.kappa_b},
          {"gamma_m", caps.rates.gamma_m}};
}

CommandOutput run_validate(const ExperimentConfig& cfg) {
  ValidationOptions o;
  o.seed = cfg.seed;
  o.jobs = cfg.jobs;
  o.scale = cfg.validation_scale;
  const auto reports = run_validation(o);

  CommandOutput out;
  nlohmann::json checks = nlohmann::json::array();
  std::ostringstream table;
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"draws", r.draws},
                      {"worst", r.worst},
                      {"detail", r.detail}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-36s %s  draws=%-7ld worst=%.3g\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.draws, r.worst);
    table << buf;
    if (!r.passed) table << "    " << r.detail << " (seed " << cfg.seed << ")\n";
  }
  const nlohmann::json j = {{"tool", std::string("gausslink ") + GAUSSLINK_VERSION},
                            {"command", "validate"},
                            {"seed", cfg.seed},
                            {"scale", cfg.validation_scale},
                            {"passed", all},
                            {"checks", checks}};
  out.text = j.dump(2) + "\n";
  out.summary = table.str();
  out.exit_code = all ? 0 : 1;
  return out;
}

}  // namespace

CommandOutput run_command(Command c, const ExperimentConfig& cfg) {
  validate(cfg, c);
  CommandOutput out;
  switch (c) {
    case Command::ThresholdVsDa:
      out.text = to_csv(c, cfg, threshold_vs_da(cfg));
      break;
    case Command::ThresholdVsLoss:
      out.text = to_csv(c, cfg, threshold_vs_loss(cfg));
      break;
    case Command::DeviceRun:
      out.text = to_csv(c, cfg, device_run(cfg));
      break;
    case Command::EbitRate: {
      const EbitReport rep = ebit_rate(cfg);
      const nlohmann::json j = {{"tool", std::string("gausslink ") + GAUSSLINK_VERSION},
                                {"command", "ebit-rate"},
                                {"topology", "IM-down"},
                                {"caps", caps_json(cfg.caps)},
                                {"r", squeezing_list(cfg).front().r()},
                                {"seed", cfg.seed},
                                {"fiber_km", cfg.fiber_km},
                                {"fiber_db_per_km", cfg.fiber_db_per_km},
                                {"loss_db", rep.loss_db},
                                {"tau_e", rep.tau_e},
                                {"e", rep.e},
                                {"bandwidth_hz", cfg.bandwidth_hz},
                                {"rate_ebits_per_s", rep.rate},
                                {"coops", rep.coops}};
      out.text = j.dump(2) + "\n";
      break;
    }
    case Command::Validate:
      return run_validate(cfg);
  }
  return out;
}

}  // namespace gausslink
