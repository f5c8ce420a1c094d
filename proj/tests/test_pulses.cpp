#include "ionbounds/errors.hpp"
#include "ionbounds/pulse.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ionbounds::pulses;

namespace {

constexpr double pi = std::numbers::pi;

double cycle(double omega) { return 2.0 * pi / omega; }

std::vector<Pulse> sample_pulses() {
  const double w = 1.5;
  return {
      StaticField{5.0},
      Monochromatic{2.0, 1.5},
      TrapezoidEnvelope{1.0, w, 1.25 * cycle(w), 14.5 * cycle(w)},
      TrapezoidEnvelope{3.0, 0.7, 2.0, 5.0},
      SineSquaredEnvelope{20.0, 0.2, 0.01},
      SineSquaredEnvelope{1.0, 0.8, 0.8 / 13.5},
      SineSquaredRamps{1.0, w, 2.25 * cycle(w), 14.5 * cycle(w)},
      SineSquaredRamps{2.0, 1.1, 3.0, 7.5},
  };
}

double horizon(const Pulse &pulse) {
  if (const auto end = duration(pulse)) return 1.2 * *end;
  if (std::holds_alternative<SineSquaredEnvelope>(pulse))
    return pi / std::get<SineSquaredEnvelope>(pulse).envelope_frequency;
  return 20.0;
}

void check_against_quadrature(const Pulse &pulse, double t, double tol = 1e-8) {
  const auto ref = oracle::quadrature_kinematics(pulse, t);
  const auto kin = kinematics(pulse, t);
  INFO(describe(pulse) << " t = " << t);
  CHECK(std::abs(kin.momentum_transfer - ref.b) <= tol);
  CHECK(std::abs(kin.displacement - ref.c) <= tol);
}

} // namespace

TEST_CASE("field values") {
  CHECK(field(StaticField{5.0}, 0.3) == 5.0);
  CHECK(std::abs(field(Monochromatic{2.0, 4.0}, pi / 4.0)) < 1e-15);
  const TrapezoidEnvelope trap{2.0, 1.3, 1.7, 9.0};
  CHECK(field(trap, trap.ramp) == doctest::Approx(2.0 * std::sin(1.3 * 1.7)).epsilon(1e-14));
  for (const auto &pulse : sample_pulses()) {
    for (int i = 0; i <= 400; ++i) {
      const double t = horizon(pulse) * i / 400.0;
      CHECK(field(pulse, t) == doctest::Approx(oracle::field(pulse, t)).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(field(trap, 9.5) == 0.0);
  CHECK_THROWS_AS(field(trap, -1.0), ionbounds::DomainError);
}

TEST_CASE("closed-form kinematics of the simple fields") {
  CHECK(momentum_transfer(StaticField{5.0}, 1.0).value == 5.0);
  CHECK(displacement(StaticField{5.0}, 2.0).value == 10.0);
  CHECK(std::abs(momentum_transfer(Monochromatic{2.0, 1.0}, 2.0 * pi).value) < 1e-14);
  CHECK(displacement(Monochromatic{1.0, 1.0}, 2.0 * pi).value == doctest::Approx(2.0 * pi));
  const auto at_zero = kinematics(SineSquaredRamps{1.0, 1.0, 2.0, 6.0}, 0.0);
  CHECK(at_zero.momentum_transfer == 0.0);
  CHECK(at_zero.displacement == 0.0);
  CHECK(at_zero.provenance == Provenance::analytic);
}

TEST_CASE("analytic kinematics match quadrature of the field") {
  for (const auto &pulse : sample_pulses()) {
    for (int i = 1; i <= 40; ++i) check_against_quadrature(pulse, horizon(pulse) * i / 40.0);
  }
}

TEST_CASE("library quadrature route agrees with the analytic route") {
  const SineSquaredRamps pulse{1.0, 1.5, 3.0, 20.0};
  for (double t : {1.0, 3.0, 11.0, 20.0, 25.0}) {
    const auto quad = kinematics(pulse, t, 1e-11, KinematicsMethod::quadrature);
    const auto exact = kinematics(pulse, t);
    CHECK(quad.provenance == Provenance::quadrature);
    CHECK(quad.momentum_transfer == doctest::Approx(exact.momentum_transfer).epsilon(1e-9).scale(1.0));
    CHECK(quad.displacement == doctest::Approx(exact.displacement).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("endpoint closed forms") {
  for (const auto &[e0, w, T, tau0] :
       std::vector<std::array<double, 4>>{{1.0, 1.5, 1.25 * cycle(1.5), 8.0 * cycle(1.5)},
                                          {2.0, 0.9, 3.3, 11.0},
                                          {1.0, 1.5, 0.75 * cycle(1.5), 7.0 * cycle(1.5)}}) {
    const auto trap = oracle::trapezoid_end(e0, w, T, tau0);
    const auto kin_t = kinematics(TrapezoidEnvelope{e0, w, T, tau0}, tau0);
    CHECK(kin_t.momentum_transfer == doctest::Approx(trap.b).epsilon(1e-11).scale(1.0));
    CHECK(kin_t.displacement == doctest::Approx(trap.c).epsilon(1e-11).scale(1.0));

    const auto ramps = oracle::sine_squared_ramps_end(e0, w, T, tau0);
    const auto kin_s = kinematics(SineSquaredRamps{e0, w, T, tau0}, tau0);
    CHECK(kin_s.momentum_transfer == doctest::Approx(ramps.b).epsilon(1e-11).scale(1.0));
    CHECK(kin_s.displacement == doctest::Approx(ramps.c).epsilon(1e-11).scale(1.0));
  }
  const TrapezoidEnvelope trap{1.0, 1.5, 1.25 * cycle(1.5), 8.0 * cycle(1.5)};
  const auto ref = oracle::quadrature_kinematics(trap, trap.duration);
  CHECK(std::abs(oracle::trapezoid_end(1.0, 1.5, trap.ramp, trap.duration).c - ref.c) <= 1e-7);

  for (double t : {0.5, 7.0, 40.0, 150.0}) {
    const auto sq = oracle::sine_squared_at(20.0, 0.2, 0.01, t);
    const auto kin = kinematics(SineSquaredEnvelope{20.0, 0.2, 0.01}, t);
    CHECK(kin.momentum_transfer == doctest::Approx(sq.b).epsilon(1e-10).scale(1.0));
    CHECK(kin.displacement == doctest::Approx(sq.c).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("removable singularities") {
  CHECK(std::abs(momentum_transfer(SineSquaredEnvelope{1.0, 0.2, 0.100001}, 7.0).value -
                 oracle::quadrature_kinematics(SineSquaredEnvelope{1.0, 0.2, 0.100001}, 7.0).b) <=
        1e-8);
  for (int k = 2; k <= 8; ++k) {
    const double envelope = 0.1;
    const double omega = 2.0 * envelope * (1.0 + std::pow(10.0, -k));
    for (double t : {7.0, 25.0, 31.0}) check_against_quadrature(SineSquaredEnvelope{1.0, omega, envelope}, t);
  }
  check_against_quadrature(SineSquaredEnvelope{1.0, 0.2, 0.1}, 12.0);

  for (int k = 2; k <= 8; ++k) {
    const double omega = 1.5;
    const double ramp = pi / omega * (1.0 + std::pow(10.0, -k));
    const SineSquaredRamps pulse{1.0, omega, ramp, 4.0 * ramp};
    for (double t : {0.5 * ramp, ramp, 3.5 * ramp, 4.0 * ramp}) check_against_quadrature(pulse, t);
  }
  const double ramp = pi / 1.5;
  check_against_quadrature(SineSquaredRamps{1.0, 1.5, ramp, 3.0 * ramp}, 3.0 * ramp);
}

TEST_CASE("half-cycle linear ramps leave no momentum transfer") {
  const double w = 1.5;
  for (int m = 0; m <= 3; ++m) {
    const double ramp = (m + 0.5) * cycle(w);
    const TrapezoidEnvelope pulse{1.0, w, ramp, 2.0 * ramp + 4.0 * cycle(w)};
    CHECK(std::abs(momentum_transfer(pulse, pulse.duration).value) <= 1e-12);
  }
}

TEST_CASE("derivatives are consistent") {
  for (const auto &pulse : sample_pulses()) {
    const double h = 1e-4;
    for (int i = 1; i < 20; ++i) {
      const double t = horizon(pulse) * (i + 0.37) / 21.0;
      INFO(describe(pulse) << " t = " << t);
      const double db = (momentum_transfer(pulse, t + h).value - momentum_transfer(pulse, t - h).value) / (2 * h);
      const double dc = (displacement(pulse, t + h).value - displacement(pulse, t - h).value) / (2 * h);
      const double scale = 1.0 + std::abs(field(pulse, t)) + std::abs(momentum_transfer(pulse, t).value);
      CHECK(std::abs(db - field(pulse, t)) <= 1e-5 * scale);
      CHECK(std::abs(dc - momentum_transfer(pulse, t).value) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("Schwarz inequalities on random pulses") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double e0 = 0.5 + 30.0 * u(rng), w = 0.1 + 3.0 * u(rng);
    Pulse pulse;
    switch (trial % 5) {
    case 0: pulse = StaticField{e0}; break;
    case 1: pulse = Monochromatic{e0, w}; break;
    case 2: {
      const double T = 0.2 + 5.0 * u(rng);
      pulse = TrapezoidEnvelope{e0, w, T, 2.0 * T + 10.0 * u(rng)};
      break;
    }
    case 3: pulse = SineSquaredEnvelope{e0, w, w / (2.0 + 20.0 * u(rng))}; break;
    default: {
      const double T = 0.2 + 5.0 * u(rng);
      pulse = SineSquaredRamps{e0, w, T, 2.0 * T + 10.0 * u(rng)};
    }
    }
    const double end = duration(pulse).value_or(horizon(pulse));
    const double t = end * (0.02 + 0.98 * u(rng));
    const double norm = field_l2_norm(pulse, t);
    const auto kin = kinematics(pulse, t);
    const double slack = 1.0 + 1e-9;
    INFO(describe(pulse) << " t = " << t);
    CHECK(std::abs(kin.momentum_transfer) <= std::sqrt(t) * norm * slack);
    // The static field meets the displacement bound with equality.
    CHECK(std::abs(kin.displacement) <= 0.5 * std::pow(t, 1.5) * norm * slack);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(StaticField{0.0}), ionbounds::DomainError);
  CHECK_THROWS_AS(validate(Monochromatic{1.0, -1.0}), ionbounds::DomainError);
  CHECK_THROWS_AS(validate(TrapezoidEnvelope{1.0, 1.0, 3.0, 5.0}), ionbounds::DomainError);
  CHECK_THROWS_AS(validate(SineSquaredEnvelope{1.0, 1.0, 0.0}), ionbounds::DomainError);
  CHECK_NOTHROW(validate(SineSquaredRamps{1.0, 1.0, 2.5, 5.0}));
  CHECK(shape_name(SineSquaredRamps{1.0, 1.0, 2.5, 5.0}) == "sine_squared_ramps");
  CHECK(!duration(Monochromatic{1.0, 1.0}).has_value());
  CHECK(*duration(TrapezoidEnvelope{1.0, 1.0, 1.0, 5.0}) == 5.0);
  CHECK(!cycle_length(StaticField{1.0}).has_value());
  CHECK(*cycle_length(Monochromatic{1.0, 2.0}) == doctest::Approx(pi));
}
