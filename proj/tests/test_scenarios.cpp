#include "ionbounds/errors.hpp"
#include "ionbounds/scenarios.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>

using namespace ionbounds::scenarios;
using namespace ionbounds::pulses;

namespace {

constexpr double pi = std::numbers::pi;

// Strong lower bounds of a three-intensity figure at tau index i.
std::array<std::optional<double>, 3> lower_triplet(const std::vector<Row> &rows, std::size_t n,
                                                   std::size_t i) {
  return {rows[i].report.strong_lower, rows[n + i].report.strong_lower,
          rows[2 * n + i].report.strong_lower};
}

bool same_bits(const std::optional<double> &a, const std::optional<double> &b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::memcmp(&*a, &*b, sizeof(double)) == 0;
}

} // namespace

TEST_CASE("builtin figure parameters") {
  const auto fig1 = builtin_figure(1);
  CHECK(fig1.kind == FigureKind::norm_curve);
  CHECK(fig1.series.empty());
  CHECK(fig1.c_grid.front() == 0.0);
  CHECK(fig1.c_grid.back() == 50.0);

  const auto fig2 = builtin_figure(2);
  REQUIRE(fig2.series.size() == 1);
  CHECK(std::holds_alternative<StaticField>(fig2.series[0].config.pulse));
  CHECK(fig2.series[0].config.sweep->parameter == "E0");
  CHECK(fig2.series[0].config.sweep->values == std::vector<double>{5.0, 10.0, 20.0});
  CHECK(fig2.columns == std::vector<BoundColumn>{BoundColumn::strong_lower, BoundColumn::strong_upper});

  const auto fig3 = builtin_figure(3);
  CHECK(std::get<Monochromatic>(fig3.series[0].config.pulse).frequency == 1.5);

  const auto fig4 = builtin_figure(4);
  CHECK(fig4.series[0].config.state.n() == 10);
  CHECK(std::get<Monochromatic>(fig4.series[0].config.pulse).field_strength == 2.0);
  CHECK(fig4.series[0].config.sweep->values == std::vector<double>{0.4, 4.0});

  const auto fig5 = builtin_figure(5);
  CHECK(fig5.series[0].config.state.n() == 20);
  CHECK(fig5.series[0].config.tau_grid.back() == 2.0);

  const auto fig6 = builtin_figure(6);
  REQUIRE(fig6.series.size() == 6);
  const auto &trap = std::get<TrapezoidEnvelope>(fig6.series[0].config.pulse);
  const double cycle = 2.0 * pi / 1.5;
  CHECK(trap.ramp == doctest::Approx(1.25 * cycle));
  CHECK(trap.duration == doctest::Approx(14.5 * cycle));
  CHECK(fig6.series[0].config.state.n() == 34);
  CHECK(fig6.series[0].config.tau_grid == std::vector<double>{trap.duration});
  CHECK(std::holds_alternative<SineSquaredRamps>(fig6.series[1].config.pulse));
  CHECK(fig6.series[0].label == "trapezoid 5/4-12-5/4");
  CHECK(builtin_figure(7).series[2].label == "trapezoid 3/2-4-3/2");
  CHECK(builtin_figure(7).columns == std::vector<BoundColumn>{BoundColumn::weak_upper});

  const auto fig8 = builtin_figure(8);
  const auto &env = std::get<SineSquaredEnvelope>(fig8.series[0].config.pulse);
  CHECK(env.frequency == 0.2);
  CHECK(env.envelope_frequency == 0.01);
  CHECK(fig8.series[0].config.state.n() == 30);
  CHECK(builtin_figure(9).series[0].config.sweep->values.size() == 3);

  const auto fig10 = builtin_figure(10);
  REQUIRE(fig10.series.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto &config = fig10.series[i].config;
    const auto &pulse = std::get<SineSquaredEnvelope>(config.pulse);
    CHECK(config.state.n() == 30 + 5 * static_cast<int>(i));
    CHECK(pulse.envelope_frequency == doctest::Approx(0.8 / 13.5));
    CHECK(config.tau_grid == std::vector<double>{pi / pulse.envelope_frequency});
  }

  CHECK_THROWS_AS(builtin_figure(0), ionbounds::DomainError);
  CHECK_THROWS_AS(builtin_figure(11), ionbounds::DomainError);
}

TEST_CASE("every builtin figure runs cleanly") {
  for (int id = 2; id <= 10; ++id) {
    for (const auto &series : builtin_figure(id).series) {
      const auto rows = run(series.config);
      const std::size_t sweeps = series.config.sweep ? series.config.sweep->values.size() : 1;
      CHECK(rows.size() == sweeps * series.config.tau_grid.size());
      for (const auto &row : rows) {
        CHECK(row.report.errors.empty());
        if (!row.report.lower_valid) CHECK(row.report.lower_invalid_reason);
      }
    }
  }
  CHECK(run_norm_curve(builtin_figure(1).c_grid).size() == 501);
}

TEST_CASE("row order and determinism") {
  const auto config = builtin_figure(3).series[0].config;
  const auto first = run(config);
  const auto second = run(config);
  const std::size_t n = config.tau_grid.size();
  REQUIRE(first.size() == 3 * n);
  CHECK(*first[0].sweep_value == 5.0);
  CHECK(*first[n].sweep_value == 10.0);
  CHECK(first[n + 1].report.tau == config.tau_grid[1]);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(same_bits(first[i].report.strong_lower, second[i].report.strong_lower));
    CHECK(same_bits(first[i].report.strong_upper, second[i].report.strong_upper));
  }
}

TEST_CASE("intensity ordering of the ground-state lower bounds") {
  for (int id : {2, 3}) {
    const auto config = builtin_figure(id).series[0].config;
    const auto rows = run(config);
    const std::size_t n = config.tau_grid.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = config.tau_grid[i];
      const auto lower = lower_triplet(rows, n, i);
      if (!lower[0] || !lower[1] || !lower[2]) continue;
      INFO("figure " << id << " tau = " << tau);
      if (id == 3 || tau < 0.85) {
        CHECK(*lower[0] <= *lower[1]);
        CHECK(*lower[1] <= *lower[2]);
      }
    }
  }
  // The static-field curves for E0 = 10 and 20 do cross near tau = 0.86,
  // where both bounds are already close to zero.
  const auto config = builtin_figure(2).series[0].config;
  const auto rows = run(config);
  const std::size_t n = config.tau_grid.size();
  const auto late = lower_triplet(rows, n, n - 1);
  CHECK(*late[2] < *late[1]);
}

TEST_CASE("sine-squared ramps against linear ramps") {
  const auto fig6 = builtin_figure(6);
  for (std::size_t s = 0; s < fig6.series.size(); s += 2) {
    const auto linear = run(fig6.series[s].config);
    const auto smooth = run(fig6.series[s + 1].config);
    for (std::size_t i = 0; i < linear.size(); ++i) {
      if (!linear[i].report.weak_lower || !smooth[i].report.weak_lower) continue;
      CHECK(*smooth[i].report.weak_lower <= *linear[i].report.weak_lower);
      CHECK(*smooth[i].report.weak_upper <= *linear[i].report.weak_upper);
    }
  }
}

TEST_CASE("parameters") {
  BoundState state(1);
  Pulse pulse = SineSquaredEnvelope{1.0, 0.8, 0.05};
  apply_parameter(state, pulse, "E0", 3.0);
  apply_parameter(state, pulse, "omega", 0.9);
  apply_parameter(state, pulse, "Omega", 0.02);
  apply_parameter(state, pulse, "n", 7.0);
  CHECK(state.n() == 7);
  CHECK(parameter_value(state, pulse, "E0") == 3.0);
  CHECK(parameter_value(state, pulse, "omega") == 0.9);
  CHECK(parameter_value(state, pulse, "Omega") == 0.02);
  CHECK_THROWS_AS(apply_parameter(state, pulse, "ramp", 1.0), ionbounds::DomainError);
  CHECK_THROWS_AS(apply_parameter(state, pulse, "n", 2.5), ionbounds::DomainError);
  CHECK_THROWS_AS(apply_parameter(state, pulse, "frequency", 1.0), ionbounds::DomainError);

  Pulse ramps = TrapezoidEnvelope{1.0, 1.0, 1.0, 4.0};
  apply_parameter(state, ramps, "ramp", 1.5);
  apply_parameter(state, ramps, "duration", 6.0);
  CHECK(std::get<TrapezoidEnvelope>(ramps).ramp == 1.5);
  CHECK(std::get<TrapezoidEnvelope>(ramps).duration == 6.0);
  Pulse fixed = StaticField{1.0};
  CHECK_THROWS_AS(apply_parameter(state, fixed, "omega", 1.0), ionbounds::DomainError);
}

TEST_CASE("config validation") {
  ScenarioConfig config;
  config.pulse = StaticField{5.0};
  config.tau_grid = {0.1, 0.2};
  CHECK_NOTHROW(validate(config));
  CHECK(run(config).size() == 2);
  CHECK(!run(config)[0].sweep_value);

  auto bad = config;
  bad.tau_grid = {};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);
  bad.tau_grid = {0.2, 0.1};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);
  bad.tau_grid = {0.0, 0.1};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);

  bad = config;
  bad.sweep = Sweep{"E0", {}};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);
  bad.sweep = Sweep{"omega", {1.0}};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);
  bad.sweep = Sweep{"E0", {1.0, -1.0}};
  CHECK_THROWS_AS(validate(bad), ionbounds::DomainError);
  CHECK_THROWS_AS(run(bad), ionbounds::DomainError);
}

TEST_CASE("linspace") {
  const auto grid = linspace(0.0, 1.0, 11);
  CHECK(grid.size() == 11);
  CHECK(grid[5] == 0.5);
  CHECK(grid.back() == 1.0);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), ionbounds::DomainError);
  CHECK(column_name(BoundColumn::weak_upper) == "P_uw");
}
