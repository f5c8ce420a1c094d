#pragma once

#include <optional>
#include <string>
#include <variant>

namespace ionbounds::pulses {

// All quantities in atomic units.

/// E(t) = E0.
struct StaticField {
  double field_strength;
};

/// E(t) = E0 sin(omega t).
struct Monochromatic {
  double field_strength;
  double frequency;
};

/// E0 sin(omega t) with linear turn-on over [0, T], a plateau, and a linear
/// turn-off over [tau0 - T, tau0].
struct TrapezoidEnvelope {
  double field_strength;
  double frequency;
  double ramp;
  double duration;
};

/// E(t) = E0 sin^2(Omega t) sin(omega t), switched off abruptly at the
/// evaluation time.
struct SineSquaredEnvelope {
  double field_strength;
  double frequency;
  double envelope_frequency;
};

/// E0 sin(omega t) with sin^2(pi t / 2T) turn-on, a plateau, and the mirror
/// image turn-off ending at tau0.
struct SineSquaredRamps {
  double field_strength;
  double frequency;
  double ramp;
  double duration;
};

using Pulse = std::variant<StaticField, Monochromatic, TrapezoidEnvelope, SineSquaredEnvelope,
                           SineSquaredRamps>;

/// Throws DomainError when a parameter violates its constraint
/// (E0 > 0, frequencies > 0, durations > 0, 2 T <= tau0).
void validate(const Pulse &pulse);

/// End of the field for the ramped shapes; empty for shapes without one.
std::optional<double> duration(const Pulse &pulse);

/// Short identifier used in configs and CSV output ("static", "trapezoid", ...).
std::string shape_name(const Pulse &pulse);

/// Human-readable parameter summary.
std::string describe(const Pulse &pulse);

/// Length of one field cycle 2 pi / omega (the static field has none).
std::optional<double> cycle_length(const Pulse &pulse);

enum class Provenance { analytic, quadrature };

enum class KinematicsMethod {
  automatic, // closed forms
  quadrature // adaptive quadrature of the field, split at envelope breakpoints
};

struct KinematicsValue {
  double value;
  Provenance provenance;
};

struct FieldKinematics {
  double t;
  double field;
  double momentum_transfer; // b(t)
  double displacement;      // c(t)
  Provenance provenance;
};

/// E(t). Zero after the end of a ramped pulse; DomainError for t < 0.
double field(const Pulse &pulse, double t);

/// b(t) = int_0^t E(s) ds.
KinematicsValue momentum_transfer(const Pulse &pulse, double t, double tol = 1e-10,
                                  KinematicsMethod method = KinematicsMethod::automatic);

/// c(t) = int_0^t b(s) ds.
KinematicsValue displacement(const Pulse &pulse, double t, double tol = 1e-10,
                             KinematicsMethod method = KinematicsMethod::automatic);

FieldKinematics kinematics(const Pulse &pulse, double t, double tol = 1e-10,
                           KinematicsMethod method = KinematicsMethod::automatic);

/// ||E||_{L^2[0,t]} by adaptive quadrature.
double field_l2_norm(const Pulse &pulse, double t, double tol = 1e-12);

} // namespace ionbounds::pulses
