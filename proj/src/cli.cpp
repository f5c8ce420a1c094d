#include "ionbounds/cli.hpp"

#include "ionbounds/errors.hpp"
#include "ionbounds/khnorm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace ionbounds::cli {

namespace fs = std::filesystem;
using scenarios::ScenarioConfig;

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

double parse_number(const std::string &text, int line) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(value))
    throw ConfigError("expected a number, got '" + t + "'", line);
  return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// "a, b, c" or "linspace(first, last, count)".
std::vector<double> parse_list(const std::string &text, int line) {
  const std::string t = trim(text);
  if (t.rfind("linspace(", 0) == 0) {
    if (t.back() != ')') throw ConfigError("unterminated linspace(...)", line);
    const auto args = split(t.substr(9, t.size() - 10), ',');
    if (args.size() != 3) throw ConfigError("linspace takes (first, last, count)", line);
    const double count = parse_number(args[2], line);
    if (count < 2 || count != std::floor(count) || count > 1e7)
      throw ConfigError("linspace count must be an integer >= 2", line);
    return scenarios::linspace(parse_number(args[0], line), parse_number(args[1], line),
                               static_cast<int>(count));
  }
  std::vector<double> values;
  for (const auto &item : split(t, ',')) values.push_back(parse_number(item, line));
  if (values.empty()) throw ConfigError("empty list", line);
  return values;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>> allowed_keys{
    {"", {"tau", "tol", "output"}},
    {"state", {"n"}},
    {"pulse",
     {"shape", "E0", "omega", "Omega", "ramp", "duration", "ramp_cycles", "plateau_cycles"}},
    {"sweep", {"parameter", "values"}},
};

class PulseKeys {
public:
  explicit PulseKeys(const Section &section) : section_(section) {}

  double require(const std::string &key) {
    const auto it = section_.find(key);
    if (it == section_.end()) throw ConfigError("[pulse] missing key '" + key + "'", 0);
    used_.push_back(key);
    return parse_number(it->second.value, it->second.line);
  }

  std::optional<double> optional(const std::string &key) {
    if (!section_.contains(key)) return std::nullopt;
    return require(key);
  }

  // Ramp and duration either in atomic units or, via ramp_cycles and
  // plateau_cycles, in field cycles 2 pi / omega.
  std::pair<double, double> ramp_and_duration(double omega) {
    const auto ramp = optional("ramp");
    const auto duration = optional("duration");
    const auto ramp_cycles = optional("ramp_cycles");
    const auto plateau_cycles = optional("plateau_cycles");
    if (ramp && duration && !ramp_cycles && !plateau_cycles) return {*ramp, *duration};
    if (ramp_cycles && plateau_cycles && !ramp && !duration) {
      const double cycle = 2.0 * std::numbers::pi / omega;
      return {*ramp_cycles * cycle, (2.0 * *ramp_cycles + *plateau_cycles) * cycle};
    }
    throw ConfigError("[pulse] give either ramp and duration or ramp_cycles and plateau_cycles",
                      0);
  }

  void reject_unused() const {
    for (const auto &[key, entry] : section_) {
      if (key == "shape") continue;
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw ConfigError("[pulse] key '" + key + "' does not apply to this shape", entry.line);
    }
  }

private:
  const Section &section_;
  std::vector<std::string> used_;
};

pulses::Pulse build_pulse(const Section &section) {
  const auto shape_it = section.find("shape");
  if (shape_it == section.end()) throw ConfigError("[pulse] missing key 'shape'", 0);
  const std::string shape = trim(shape_it->second.value);
  PulseKeys keys(section);
  pulses::Pulse pulse;
  if (shape == "static") {
    pulse = pulses::StaticField{keys.require("E0")};
  } else if (shape == "monochromatic") {
    pulse = pulses::Monochromatic{keys.require("E0"), keys.require("omega")};
  } else if (shape == "sine_squared") {
    pulse = pulses::SineSquaredEnvelope{keys.require("E0"), keys.require("omega"),
                                        keys.require("Omega")};
  } else if (shape == "trapezoid" || shape == "sine_squared_ramps") {
    const double e0 = keys.require("E0");
    const double omega = keys.require("omega");
    if (!(omega > 0.0)) throw ConfigError("[pulse] omega must be > 0", 0);
    const auto [ramp, duration] = keys.ramp_and_duration(omega);
    if (shape == "trapezoid")
      pulse = pulses::TrapezoidEnvelope{e0, omega, ramp, duration};
    else
      pulse = pulses::SineSquaredRamps{e0, omega, ramp, duration};
  } else {
    throw ConfigError("[pulse] unknown shape '" + shape +
                          "' (static, monochromatic, trapezoid, sine_squared, sine_squared_ramps)",
                      shape_it->second.line);
  }
  keys.reject_unused();
  return pulse;
}

// Pulse fields in config order, for echoing a config.
std::vector<std::pair<std::string, double>> pulse_fields(const pulses::Pulse &pulse) {
  return std::visit(
      [](const auto &p) -> std::vector<std::pair<std::string, double>> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, pulses::StaticField>)
          return {{"E0", p.field_strength}};
        else if constexpr (std::is_same_v<P, pulses::Monochromatic>)
          return {{"E0", p.field_strength}, {"omega", p.frequency}};
        else if constexpr (std::is_same_v<P, pulses::SineSquaredEnvelope>)
          return {{"E0", p.field_strength}, {"omega", p.frequency}, {"Omega", p.envelope_frequency}};
        else
          return {{"E0", p.field_strength},
                  {"omega", p.frequency},
                  {"ramp", p.ramp},
                  {"duration", p.duration}};
      },
      pulse);
}

std::string join_numbers(const std::vector<double> &values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(values[i]);
  }
  return out;
}

std::string optional_cell(const std::optional<double> &value) {
  return value ? format_number(*value) : std::string();
}

std::string csv_escape(const std::string &text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join_errors(const std::vector<std::string> &errors) {
  std::string out;
  for (const auto &e : errors) out += (out.empty() ? "" : "; ") + e;
  return out;
}

void add_config_metadata(OutputTable &table, const ScenarioConfig &config,
                         const std::string &prefix = "config") {
  std::istringstream text(format_config(config));
  std::string line;
  while (std::getline(text, line))
    if (!line.empty()) table.metadata.emplace_back(prefix, line);
}

void write_text_atomic(const std::string &content, const fs::path &path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + temp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError("write failed for " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw IoError("cannot rename " + temp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void check_row_errors(const std::vector<scenarios::Row> &rows) {
  for (const auto &row : rows) {
    if (!row.report.errors.empty()) {
      std::ostringstream msg;
      msg << "numeric failure at tau = " << row.report.tau;
      if (row.sweep_value) msg << ", sweep value = " << *row.sweep_value;
      msg << ": " << join_errors(row.report.errors);
      throw NumericError(msg.str());
    }
  }
}

std::string show(const std::optional<double> &value) {
  if (!value) return "-";
  std::ostringstream out;
  out << std::setprecision(6) << *value;
  return out.str();
}

void print_report_table(std::ostream &out, const ScenarioConfig &config,
                        const std::vector<scenarios::Row> &rows) {
  const int w = 13;
  out << std::left << std::setw(w) << "tau";
  if (config.sweep) out << std::setw(w) << config.sweep->parameter;
  for (const char *name : {"P_l", "P_u", "P_lw", "P_uw", "b(tau)", "c(tau)"})
    out << std::setw(w) << name;
  out << "note\n";
  for (const auto &row : rows) {
    const auto &r = row.report;
    out << std::setw(w) << show(r.tau);
    if (config.sweep) out << std::setw(w) << show(row.sweep_value);
    for (const auto &value : {r.strong_lower, r.strong_upper, r.weak_lower, r.weak_upper,
                              std::optional<double>(r.b_tau), std::optional<double>(r.c_tau)})
      out << std::setw(w) << show(value);
    out << r.lower_invalid_reason.value_or("") << join_errors(r.errors) << '\n';
  }
}

ScenarioConfig resolve_config(const std::string &path, double tol_override) {
  ScenarioConfig config = load_config(path);
  if (tol_override > 0.0) config.tol = tol_override;
  return config;
}

void emit(const OutputTable &table, const fs::path &csv_path, const std::string &plot_path) {
  write_csv(table, csv_path);
  if (!plot_path.empty()) write_text_atomic(plot_script(table, csv_path), plot_path);
}

int cmd_figure(int id, const std::string &out_dir, double tol, const std::string &plot_path,
               std::ostream &out) {
  const auto figure = scenarios::builtin_figure(id);
  const OutputTable table = figure_table(figure, tol > 0.0 ? tol : 1e-10);
  const fs::path path = fs::path(out_dir) / ("fig" + std::to_string(id) + ".csv");
  emit(table, path, plot_path);
  out << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
  return exit_ok;
}

int cmd_bounds(const std::string &config_path, std::string out_path, double tol,
               const std::string &plot_path, std::ostream &out, bool require_sweep) {
  const ScenarioConfig config = resolve_config(config_path, tol);
  if (require_sweep && !config.sweep) throw ConfigError("scan needs a [sweep] section", 0);
  if (out_path.empty()) out_path = config.output;
  if (require_sweep && out_path.empty())
    throw ConfigError("scan needs an output path (--out or output = ...)", 0);
  const auto rows = scenarios::run(config);
  print_report_table(out, config, rows);
  check_row_errors(rows);
  if (!out_path.empty()) emit(bounds_table(config, rows), out_path, plot_path);
  return exit_ok;
}

int cmd_adjudicate(const std::string &out_path, double tol, std::ostream &out) {
  const std::vector<double> grid{0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0};
  const auto rows = khnorm::adjudicate_closed_form(grid, tol > 0.0 ? tol : 1e-12);
  OutputTable table;
  table.header = {"c", "oracle", "rescaled", "unscaled", "rescaled_rel_error",
                  "unscaled_rel_error"};
  table.x_column = "c";
  table.metadata = {{"tool", tool_version},
                    {"command", "adjudicate"},
                    {"oracle", "log-kernel quadrature of the squared shifted element"},
                    {"rescaled", "closed form evaluated at x = 2c"},
                    {"unscaled", "closed form evaluated at x = c"}};
  double worst_rescaled = 0.0;
  double best_unscaled = 1.0;
  for (const auto &row : rows) {
    table.rows.push_back({format_number(row.c), format_number(row.oracle),
                          format_number(row.rescaled), format_number(row.unscaled),
                          format_number(row.rescaled_rel_error),
                          format_number(row.unscaled_rel_error)});
    worst_rescaled = std::max(worst_rescaled, row.rescaled_rel_error);
    best_unscaled = std::min(best_unscaled, row.unscaled_rel_error);
  }
  const std::string verdict = worst_rescaled < best_unscaled ? "rescaled" : "unscaled";
  table.metadata.emplace_back("verdict", verdict);
  out << std::left << std::setw(8) << "c" << std::setw(24) << "oracle" << std::setw(14)
      << "rescaled_err" << "unscaled_err\n";
  for (const auto &row : rows)
    out << std::setw(8) << row.c << std::setw(24) << std::setprecision(17) << row.oracle
        << std::setprecision(3) << std::setw(14) << row.rescaled_rel_error
        << row.unscaled_rel_error << '\n';
  out << "verdict: " << verdict << " (max rescaled error " << worst_rescaled
      << ", min unscaled error " << best_unscaled << ")\n";
  if (!out_path.empty()) write_csv(table, out_path);
  return exit_ok;
}

} // namespace

ScenarioConfig parse_config(std::istream &in) {
  std::map<std::string, Section> sections;
  std::string current;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      current = trim(line.substr(1, line.size() - 2));
      if (!allowed_keys.contains(current) || current.empty())
        throw ConfigError("unknown section [" + current + "]", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto &allowed = allowed_keys.at(current);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      const std::string where = current.empty() ? "top level" : "[" + current + "]";
      throw ConfigError("unknown key '" + key + "' at " + where, line_no);
    }
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line_no);
    if (!sections[current].emplace(key, Entry{value, line_no}).second)
      throw ConfigError("duplicate key '" + key + "'", line_no);
  }

  ScenarioConfig config;
  const Section &top = sections[""];
  if (sections["pulse"].empty()) throw ConfigError("missing [pulse] section", 0);
  config.pulse = build_pulse(sections["pulse"]);

  if (const auto it = sections["state"].find("n"); it != sections["state"].end()) {
    const double n = parse_number(it->second.value, it->second.line);
    if (n < 1 || n != std::floor(n) || n > 1e6)
      throw ConfigError("n must be a positive integer", it->second.line);
    config.state = hydrogen::BoundState(static_cast<int>(n));
  }

  const auto tau = top.find("tau");
  if (tau == top.end()) throw ConfigError("missing key 'tau'", 0);
  if (trim(tau->second.value) == "end") {
    const auto end = pulses::duration(config.pulse);
    if (!end) throw ConfigError("tau = end needs a pulse with a finite duration", tau->second.line);
    config.tau_grid = {*end};
  } else {
    config.tau_grid = parse_list(tau->second.value, tau->second.line);
    for (std::size_t i = 0; i < config.tau_grid.size(); ++i) {
      if (!(config.tau_grid[i] > 0.0) || (i > 0 && !(config.tau_grid[i] > config.tau_grid[i - 1])))
        throw ConfigError("tau values must be positive and strictly increasing", tau->second.line);
    }
  }
  if (const auto it = top.find("tol"); it != top.end())
    config.tol = parse_number(it->second.value, it->second.line);
  if (const auto it = top.find("output"); it != top.end()) config.output = it->second.value;

  const Section &sweep = sections["sweep"];
  if (!sweep.empty()) {
    const auto parameter = sweep.find("parameter");
    const auto values = sweep.find("values");
    if (parameter == sweep.end() || values == sweep.end())
      throw ConfigError("[sweep] needs both 'parameter' and 'values'", 0);
    config.sweep = scenarios::Sweep{parameter->second.value,
                                    parse_list(values->second.value, values->second.line)};
  }

  try {
    scenarios::validate(config);
  } catch (const DomainError &e) {
    throw ConfigError(e.what(), 0);
  }
  return config;
}

ScenarioConfig load_config(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  return parse_config(in);
}

std::string format_config(const ScenarioConfig &config) {
  std::ostringstream out;
  out << "tau = " << join_numbers(config.tau_grid) << '\n';
  out << "tol = " << format_number(config.tol) << '\n';
  if (!config.output.empty()) out << "output = " << config.output << '\n';
  out << "[state]\nn = " << config.state.n() << '\n';
  out << "[pulse]\nshape = " << pulses::shape_name(config.pulse) << '\n';
  for (const auto &[key, value] : pulse_fields(config.pulse))
    out << key << " = " << format_number(value) << '\n';
  if (config.sweep) {
    out << "[sweep]\nparameter = " << config.sweep->parameter << '\n';
    out << "values = " << join_numbers(config.sweep->values) << '\n';
  }
  return out.str();
}

std::string format_number(double value) {
  if (!std::isfinite(value)) throw NumericError("non-finite value in output");
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

OutputTable figure_table(const scenarios::Figure &figure, double tol) {
  OutputTable table;
  table.metadata = {{"tool", tool_version},
                    {"figure", std::to_string(figure.id)},
                    {"title", figure.title},
                    {"tol", format_number(tol)}};
  if (figure.kind == scenarios::FigureKind::norm_curve) {
    table.header = {"c", "N"};
    table.x_column = "c";
    table.metadata.emplace_back("c_grid", "linspace(" + format_number(figure.c_grid.front()) +
                                              ", " + format_number(figure.c_grid.back()) + ", " +
                                              std::to_string(figure.c_grid.size()) + ")");
    for (const auto &value : scenarios::run_norm_curve(figure.c_grid))
      table.rows.push_back({format_number(value.c), format_number(value.value)});
    return table;
  }

  const bool many_series = figure.series.size() > 1;
  const auto &first = figure.series.front().config;
  const std::string sweep_name = first.sweep ? first.sweep->parameter : "";
  if (many_series) table.header.push_back("series");
  table.header.push_back("tau");
  if (!sweep_name.empty()) table.header.push_back(sweep_name);
  for (const auto column : figure.columns) table.header.push_back(scenarios::column_name(column));
  table.header.push_back("valid");
  table.x_column = first.tau_grid.size() > 1 || sweep_name.empty() ? "tau" : sweep_name;
  if (many_series) table.group_columns.push_back("series");
  if (!sweep_name.empty() && table.x_column != sweep_name) table.group_columns.push_back(sweep_name);

  for (const auto &series : figure.series) {
    ScenarioConfig config = series.config;
    config.tol = tol;
    add_config_metadata(table, config, many_series ? "config " + series.label : "config");
    const auto rows = scenarios::run(config);
    check_row_errors(rows);
    for (const auto &row : rows) {
      const auto &r = row.report;
      std::vector<std::string> cells;
      if (many_series) cells.push_back(series.label);
      cells.push_back(format_number(r.tau));
      if (!sweep_name.empty()) cells.push_back(optional_cell(row.sweep_value));
      for (const auto column : figure.columns) {
        switch (column) {
        case scenarios::BoundColumn::strong_lower:
          cells.push_back(optional_cell(r.strong_lower));
          break;
        case scenarios::BoundColumn::strong_upper:
          cells.push_back(optional_cell(r.strong_upper));
          break;
        case scenarios::BoundColumn::weak_lower:
          cells.push_back(optional_cell(r.weak_lower));
          break;
        case scenarios::BoundColumn::weak_upper:
          cells.push_back(optional_cell(r.weak_upper));
          break;
        }
      }
      cells.push_back(r.lower_valid ? "1" : "0");
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

OutputTable bounds_table(const ScenarioConfig &config, const std::vector<scenarios::Row> &rows) {
  OutputTable table;
  table.metadata = {{"tool", tool_version}};
  add_config_metadata(table, config);
  table.header = {"tau"};
  if (config.sweep) table.header.push_back(config.sweep->parameter);
  for (const char *name :
       {"P_l", "P_u", "P_lw", "P_uw", "b_tau", "c_tau", "norm_time_integral", "lower_valid",
        "upper_informative", "lower_informative", "lower_invalid_reason", "errors"})
    table.header.emplace_back(name);
  table.x_column = config.tau_grid.size() > 1 || !config.sweep ? "tau" : config.sweep->parameter;
  if (config.sweep && table.x_column == "tau") table.group_columns.push_back(config.sweep->parameter);

  for (const auto &row : rows) {
    const auto &r = row.report;
    std::vector<std::string> cells{format_number(r.tau)};
    if (config.sweep) cells.push_back(optional_cell(row.sweep_value));
    cells.push_back(optional_cell(r.strong_lower));
    cells.push_back(optional_cell(r.strong_upper));
    cells.push_back(optional_cell(r.weak_lower));
    cells.push_back(optional_cell(r.weak_upper));
    cells.push_back(format_number(r.b_tau));
    cells.push_back(format_number(r.c_tau));
    cells.push_back(optional_cell(r.norm_time_integral));
    cells.push_back(r.lower_valid ? "1" : "0");
    cells.push_back(r.upper_informative ? "1" : "0");
    cells.push_back(r.lower_informative ? "1" : "0");
    cells.push_back(csv_escape(r.lower_invalid_reason.value_or("")));
    cells.push_back(csv_escape(join_errors(r.errors)));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_csv(const OutputTable &table, const fs::path &path) {
  std::ostringstream out;
  for (const auto &[key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  auto write_row = [&out, &table](const std::vector<std::string> &cells) {
    if (cells.size() != table.header.size())
      throw std::logic_error("CSV row length does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  write_row(table.header);
  for (const auto &row : table.rows) write_row(row);
  write_text_atomic(out.str(), path);
}

std::string plot_script(const OutputTable &table, const fs::path &csv_path) {
  auto index_of = [&table](const std::string &name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw std::logic_error("no column " + name);
    return static_cast<std::size_t>(it - table.header.begin()) + 1;
  };
  const std::size_t x = index_of(table.x_column);
  std::vector<std::size_t> values;
  for (const auto &name : table.header) {
    if (name == "N" || name.rfind("P_", 0) == 0) values.push_back(index_of(name));
  }
  // Distinct group keys in row order.
  std::vector<std::vector<std::string>> groups;
  std::vector<std::size_t> group_index;
  for (const auto &name : table.group_columns) group_index.push_back(index_of(name));
  for (const auto &row : table.rows) {
    std::vector<std::string> key;
    for (const auto i : group_index) key.push_back(row[i - 1]);
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  if (groups.empty()) groups.emplace_back();

  std::ostringstream out;
  out << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle "
         "columnhead\nset xlabel '"
      << table.x_column << "'\nset ylabel 'value'\nplot \\\n";
  bool first = true;
  for (const auto column : values) {
    for (const auto &key : groups) {
      std::string filter;
      std::string title = table.header[column - 1];
      for (std::size_t g = 0; g < key.size(); ++g) {
        const bool numeric = table.group_columns[g] != "series";
        const std::string cond = numeric ? "$" + std::to_string(group_index[g]) + "==" + key[g]
                                         : "strcol(" + std::to_string(group_index[g]) + ") eq '" +
                                               key[g] + "'";
        filter += (filter.empty() ? "" : " && ") + cond;
        title += " " + table.group_columns[g] + "=" + key[g];
      }
      const std::string y = filter.empty() ? "$" + std::to_string(column)
                                           : "(" + filter + " ? $" + std::to_string(column) +
                                                 " : 1/0)";
      out << (first ? "  " : ", \\\n  ") << "'" << csv_path.string() << "' using " << x << ":"
          << y << " with lines title '" << title << "'";
      first = false;
    }
  }
  out << '\n';
  return out.str();
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Bounds on the ionization probability of hydrogen s-states in laser pulses",
               "ionbounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);
  double tol = 0.0;
  std::string plot_path;
  app.add_option("--tol", tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--plot-script", plot_path, "Also write a gnuplot script for the CSV");

  int figure_id = 0;
  std::string out_dir = ".";
  auto *figure = app.add_subcommand("figure", "Reproduce one figure as fig<id>.csv");
  figure->add_option("id", figure_id, "Figure number")->required()->check(CLI::Range(1, 10));
  figure->add_option("--out", out_dir, "Output directory");

  std::string config_path;
  std::string out_path;
  auto *bounds = app.add_subcommand("bounds", "Evaluate the bounds for one config");
  bounds->add_option("--config", config_path, "Config file")->required();
  bounds->add_option("--out", out_path, "CSV output file");

  auto *scan = app.add_subcommand("scan", "Evaluate a config with a [sweep] section");
  scan->add_option("--config", config_path, "Config file")->required();
  scan->add_option("--out", out_path, "CSV output file");

  auto *adjudicate =
      app.add_subcommand("adjudicate", "Compare both closed-form readings with the oracle");
  adjudicate->add_option("--out", out_path, "CSV output file");

  for (auto *sub : {figure, bounds, scan, adjudicate}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (figure->parsed()) return cmd_figure(figure_id, out_dir, tol, plot_path, out);
    if (bounds->parsed()) return cmd_bounds(config_path, out_path, tol, plot_path, out, false);
    if (scan->parsed()) return cmd_bounds(config_path, out_path, tol, plot_path, out, true);
    if (adjudicate->parsed()) return cmd_adjudicate(out_path, tol, out);
  } catch (const ConfigError &e) {
    err << "config error";
    if (e.line() > 0) err << " (" << config_path << ":" << e.line() << ")";
    err << ": " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError &e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_usage;
  } catch (const IoError &e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const NumericError &e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::overflow_error &e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  }
  return exit_usage;
}

} // namespace ionbounds::cli
