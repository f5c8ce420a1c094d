#pragma once

#include "ionbounds/scenarios.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ionbounds::cli {

inline constexpr const char *tool_version = "ionbounds 0.1.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_io = 2, exit_numeric = 3 };

/// Malformed config text; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &what, int line) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses the key = value config format described in the README.
scenarios::ScenarioConfig parse_config(std::istream &in);
scenarios::ScenarioConfig load_config(const std::filesystem::path &path);

/// Config text that parse_config reads back to the same config.
std::string format_config(const scenarios::ScenarioConfig &config);

struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
  // Plot hints: abscissa column and the columns that separate curves.
  std::string x_column;
  std::vector<std::string> group_columns;
};

/// 17 significant digits, enough to read back the same double.
/// Throws NumericError for NaN or infinity.
std::string format_number(double value);

OutputTable figure_table(const scenarios::Figure &figure, double tol);
OutputTable bounds_table(const scenarios::ScenarioConfig &config,
                         const std::vector<scenarios::Row> &rows);

/// CSV with '#' metadata lines, written to a temporary file and renamed.
void write_csv(const OutputTable &table, const std::filesystem::path &path);

/// Gnuplot script plotting each bound column against x_column, one curve per group.
std::string plot_script(const OutputTable &table, const std::filesystem::path &csv_path);

/// Entry point: args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ionbounds::cli
