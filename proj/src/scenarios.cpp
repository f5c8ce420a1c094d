#include "ionbounds/scenarios.hpp"

#include "ionbounds/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ionbounds::scenarios {

namespace {

[[noreturn]] void unknown_parameter(const std::string &parameter, const Pulse &pulse) {
  throw DomainError("parameter '" + parameter + "' does not exist for pulse shape '" +
                    pulses::shape_name(pulse) + "'");
}

// Pointer to the pulse member named `parameter`, or null.
double *pulse_member(Pulse &pulse, const std::string &parameter) {
  return std::visit(
      [&](auto &p) -> double * {
        using P = std::decay_t<decltype(p)>;
        if (parameter == "E0") return &p.field_strength;
        if constexpr (!std::is_same_v<P, pulses::StaticField>) {
          if (parameter == "omega") return &p.frequency;
        }
        if constexpr (std::is_same_v<P, pulses::SineSquaredEnvelope>) {
          if (parameter == "Omega") return &p.envelope_frequency;
        }
        if constexpr (std::is_same_v<P, pulses::TrapezoidEnvelope> ||
                      std::is_same_v<P, pulses::SineSquaredRamps>) {
          if (parameter == "ramp") return &p.ramp;
          if (parameter == "duration") return &p.duration;
        }
        return nullptr;
      },
      pulse);
}

double cycles(double count, double omega) { return count * 2.0 * std::numbers::pi / omega; }

ScenarioConfig make(int n, Pulse pulse, std::vector<double> tau_grid,
                    std::optional<Sweep> sweep = std::nullopt) {
  ScenarioConfig config;
  config.state = BoundState(n);
  config.pulse = pulse;
  config.tau_grid = std::move(tau_grid);
  config.sweep = std::move(sweep);
  return config;
}

std::string fraction_label(double quarter_cycles) {
  // Ramp lengths in these figures are multiples of a quarter cycle.
  const int q = static_cast<int>(std::lround(quarter_cycles * 4.0));
  std::ostringstream out;
  if (q % 4 == 0)
    out << q / 4;
  else if (q % 2 == 0)
    out << q / 2 << "/2";
  else
    out << q << "/4";
  return out.str();
}

// Trapezoid and sine-squared-ramp pulses sharing (ramp, plateau) in cycles,
// evaluated at the end of the pulse.
void add_ramp_pair(Figure &figure, double ramp_cycles, double plateau_cycles, double omega,
                   const std::vector<double> &e0_values) {
  const double ramp = cycles(ramp_cycles, omega);
  const double duration = cycles(2.0 * ramp_cycles + plateau_cycles, omega);
  const std::string triple = fraction_label(ramp_cycles) + "-" + fraction_label(plateau_cycles) +
                             "-" + fraction_label(ramp_cycles);
  const Sweep sweep{"E0", e0_values};
  figure.series.push_back(
      {"trapezoid " + triple,
       make(34, pulses::TrapezoidEnvelope{1.0, omega, ramp, duration}, {duration}, sweep)});
  figure.series.push_back(
      {"sine_squared_ramps " + triple,
       make(34, pulses::SineSquaredRamps{1.0, omega, ramp, duration}, {duration}, sweep)});
}

} // namespace

void apply_parameter(BoundState &state, Pulse &pulse, const std::string &parameter, double value) {
  if (parameter == "n") {
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
      throw DomainError("parameter 'n' must be a positive integer");
    state = BoundState(static_cast<int>(value));
    return;
  }
  double *member = pulse_member(pulse, parameter);
  if (member == nullptr) unknown_parameter(parameter, pulse);
  *member = value;
}

double parameter_value(const BoundState &state, const Pulse &pulse, const std::string &parameter) {
  if (parameter == "n") return state.n();
  Pulse copy = pulse;
  const double *member = pulse_member(copy, parameter);
  if (member == nullptr) unknown_parameter(parameter, pulse);
  return *member;
}

void validate(const ScenarioConfig &config) {
  if (config.tau_grid.empty()) throw DomainError("tau grid is empty");
  for (std::size_t i = 0; i < config.tau_grid.size(); ++i) {
    const double tau = config.tau_grid[i];
    if (!std::isfinite(tau) || !(tau > 0.0)) throw DomainError("tau values must be finite and > 0");
    if (i > 0 && !(tau > config.tau_grid[i - 1]))
      throw DomainError("tau grid must be strictly increasing");
  }
  if (!(config.tol > 0.0)) throw DomainError("tol must be > 0");
  pulses::validate(config.pulse);
  if (!config.sweep) return;
  if (config.sweep->values.empty()) throw DomainError("sweep has no values");
  for (const double value : config.sweep->values) {
    BoundState state = config.state;
    Pulse pulse = config.pulse;
    apply_parameter(state, pulse, config.sweep->parameter, value);
    pulses::validate(pulse);
  }
}

std::string column_name(BoundColumn column) {
  switch (column) {
  case BoundColumn::strong_lower:
    return "P_l";
  case BoundColumn::strong_upper:
    return "P_u";
  case BoundColumn::weak_lower:
    return "P_lw";
  case BoundColumn::weak_upper:
    return "P_uw";
  }
  return "unknown";
}

std::vector<double> linspace(double first, double last, int n) {
  if (n < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = i == n - 1 ? last : first + (last - first) * i / (n - 1);
  return out;
}

Figure builtin_figure(int id) {
  const std::vector<double> intensities{5.0, 10.0, 20.0};
  Figure figure{id, FigureKind::bounds, "", {}, {}, {}};
  switch (id) {
  case 1:
    figure.kind = FigureKind::norm_curve;
    figure.title = "N(c, psi_100) versus displacement c";
    figure.c_grid = linspace(0.0, 50.0, 501);
    break;
  case 2:
    figure.title = "psi_100, static field";
    figure.series.push_back({"static", make(1, pulses::StaticField{5.0}, linspace(0.01, 1.0, 100),
                                            Sweep{"E0", intensities})});
    figure.columns = {BoundColumn::strong_lower, BoundColumn::strong_upper};
    break;
  case 3:
    figure.title = "psi_100, monochromatic omega = 1.5";
    figure.series.push_back({"monochromatic",
                             make(1, pulses::Monochromatic{5.0, 1.5}, linspace(0.01, 1.0, 100),
                                  Sweep{"E0", intensities})});
    figure.columns = {BoundColumn::strong_lower, BoundColumn::strong_upper};
    break;
  case 4:
    figure.title = "psi_10 00, monochromatic E0 = 2";
    figure.series.push_back({"monochromatic",
                             make(10, pulses::Monochromatic{2.0, 0.4}, linspace(0.05, 12.0, 240),
                                  Sweep{"omega", {0.4, 4.0}})});
    figure.columns = {BoundColumn::weak_lower};
    break;
  case 5:
    figure.title = "psi_20 00, monochromatic omega = 1.5, E0 = 20";
    figure.series.push_back({"monochromatic", make(20, pulses::Monochromatic{20.0, 1.5},
                                                   linspace(0.02, 2.0, 100))});
    figure.columns = {BoundColumn::weak_lower};
    break;
  case 6: {
    figure.title = "psi_34 00, trapezoid versus sine-squared ramps, quarter-cycle ramps";
    const auto e0 = linspace(1.0, 50.0, 50);
    add_ramp_pair(figure, 1.25, 12.0, 1.5, e0);
    add_ramp_pair(figure, 2.25, 10.0, 1.5, e0);
    add_ramp_pair(figure, 4.25, 6.0, 1.5, e0);
    figure.columns = {BoundColumn::weak_lower};
    break;
  }
  case 7: {
    figure.title = "psi_34 00, trapezoid versus sine-squared ramps, half-cycle ramps";
    const auto e0 = linspace(1.0, 50.0, 50);
    add_ramp_pair(figure, 0.5, 6.0, 1.5, e0);
    add_ramp_pair(figure, 1.5, 4.0, 1.5, e0);
    add_ramp_pair(figure, 2.5, 2.0, 1.5, e0);
    figure.columns = {BoundColumn::weak_upper};
    break;
  }
  case 8:
    figure.title = "psi_30 00, sine-squared envelope, E0 = 20";
    figure.series.push_back({"sine_squared", make(30, pulses::SineSquaredEnvelope{20.0, 0.2, 0.01},
                                                  linspace(2.0, 300.0, 150))});
    figure.columns = {BoundColumn::weak_lower};
    break;
  case 9:
    figure.title = "psi_30 00, sine-squared envelope";
    figure.series.push_back({"sine_squared",
                             make(30, pulses::SineSquaredEnvelope{5.0, 0.2, 0.01},
                                  linspace(2.0, 300.0, 150), Sweep{"E0", intensities})});
    figure.columns = {BoundColumn::weak_lower};
    break;
  case 10: {
    figure.title = "psi_n00, sine-squared envelope, half envelope cycle";
    const double omega = 0.8;
    const double envelope = omega / 13.5;
    const double tau = std::numbers::pi / envelope;
    for (const int n : {30, 35, 40}) {
      figure.series.push_back(
          {"n=" + std::to_string(n),
           make(n, pulses::SineSquaredEnvelope{1.0, omega, envelope}, {tau},
                Sweep{"E0", linspace(1.0, 40.0, 40)})});
    }
    figure.columns = {BoundColumn::weak_lower};
    break;
  }
  default:
    throw DomainError("unknown figure id " + std::to_string(id) + " (expected 1..10)");
  }
  return figure;
}

std::vector<Row> run(const ScenarioConfig &config) {
  validate(config);
  std::vector<Row> rows;
  auto run_curve = [&](const BoundState &state, const Pulse &pulse, std::optional<double> value) {
    for (const double tau : config.tau_grid)
      rows.push_back({value, bounds::evaluate_scenario(state, pulse, tau, config.tol)});
  };
  if (!config.sweep) {
    run_curve(config.state, config.pulse, std::nullopt);
    return rows;
  }
  for (const double value : config.sweep->values) {
    BoundState state = config.state;
    Pulse pulse = config.pulse;
    apply_parameter(state, pulse, config.sweep->parameter, value);
    run_curve(state, pulse, value);
  }
  return rows;
}

std::vector<khnorm::KHNormValue> run_norm_curve(const std::vector<double> &c_grid) {
  std::vector<khnorm::KHNormValue> out;
  out.reserve(c_grid.size());
  for (const double c : c_grid) out.push_back(khnorm::norm_closed_100(c));
  return out;
}

} // namespace ionbounds::scenarios
