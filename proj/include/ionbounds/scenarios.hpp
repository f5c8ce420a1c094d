#pragma once

#include "ionbounds/bounds.hpp"
#include "ionbounds/khnorm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ionbounds::scenarios {

using bounds::BoundsReport;
using hydrogen::BoundState;
using pulses::Pulse;

/// A pulse or state field varied over a list of values.
/// Parameter names: E0, omega, Omega, ramp, duration, n.
struct Sweep {
  std::string parameter;
  std::vector<double> values;
};

struct ScenarioConfig {
  BoundState state{1};
  Pulse pulse{pulses::StaticField{1.0}};
  std::vector<double> tau_grid;
  std::optional<Sweep> sweep;
  double tol = 1e-10;
  std::string output;
};

/// Throws DomainError for an empty or non-increasing tau grid, a
/// non-positive tau, an empty sweep, an unknown sweep parameter or a sweep
/// value that produces an invalid pulse or state.
void validate(const ScenarioConfig &config);

/// Replaces one named parameter of (state, pulse) in place.
void apply_parameter(BoundState &state, Pulse &pulse, const std::string &parameter, double value);

/// Value of `parameter` currently held by the pulse or state.
double parameter_value(const BoundState &state, const Pulse &pulse, const std::string &parameter);

/// Bound columns a figure plots.
enum class BoundColumn { strong_lower, strong_upper, weak_lower, weak_upper };
std::string column_name(BoundColumn column); // "P_l", "P_u", "P_lw", "P_uw"

struct Series {
  std::string label;
  ScenarioConfig config;
};

enum class FigureKind { norm_curve, bounds };

struct Figure {
  int id;
  FigureKind kind;
  std::string title;
  std::vector<double> c_grid;        // norm_curve only
  std::vector<Series> series;        // bounds only
  std::vector<BoundColumn> columns;  // bounds only
};

/// Parameter sets of figures 1 to 10. Throws DomainError for other ids.
Figure builtin_figure(int id);

struct Row {
  std::optional<double> sweep_value;
  BoundsReport report;
};

/// One row per (sweep value, tau), sweep values outermost, in config order.
/// Component failures stay in each row's report.errors.
std::vector<Row> run(const ScenarioConfig &config);

/// N(c, psi_100) from the closed form on the grid.
std::vector<khnorm::KHNormValue> run_norm_curve(const std::vector<double> &c_grid);

/// n evenly spaced points from first to last inclusive.
std::vector<double> linspace(double first, double last, int n);

} // namespace ionbounds::scenarios
