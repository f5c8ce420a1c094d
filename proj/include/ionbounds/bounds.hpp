#pragma once

#include "ionbounds/hydrogen.hpp"
#include "ionbounds/pulse.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ionbounds::bounds {

using hydrogen::BoundState;
using pulses::Pulse;

inline constexpr const char *below_threshold_reason =
    "momentum transfer below ionization threshold";

/// Relative guard on the lower-bound threshold: valid iff b^2 > (1 + guard) / n^2.
inline constexpr double threshold_guard = 1e-9;

/// One bound: a value, or the reason it is absent.
struct BoundValue {
  std::optional<double> value;
  std::optional<std::string> reason;
};

using NormFunction = std::function<double(double)>;

/// int_0^tau norm(c(t)) dt, split at the envelope breakpoints.
double norm_time_integral(const Pulse &pulse, double tau, const NormFunction &norm,
                          double tol = 1e-10);

/// b^2 > 1/n^2 with the guard above.
bool lower_valid(BoundState state, double b_tau);

BoundValue strong_lower_100(const Pulse &pulse, double tau, double tol = 1e-10);
BoundValue strong_upper_100(const Pulse &pulse, double tau, double tol = 1e-10);
BoundValue weak_lower_n00(BoundState state, const Pulse &pulse, double tau);
BoundValue weak_upper_n00(BoundState state, const Pulse &pulse, double tau);

struct BoundsReport {
  Pulse pulse;
  double tau;
  BoundState state;
  std::optional<double> strong_lower;
  std::optional<double> strong_upper;
  std::optional<double> weak_lower;
  std::optional<double> weak_upper;
  double b_tau;
  double c_tau;
  std::optional<double> norm_time_integral; // closed-form N; n = 1 only
  bool lower_valid;
  std::optional<std::string> lower_invalid_reason;
  bool upper_informative; // tightest upper bound <= 1
  bool lower_informative; // tightest lower bound >= 0
  std::vector<std::string> errors;
};

/// All bounds that apply to the state; strong bounds only for n = 1.
/// Component failures are collected in `errors` and leave that bound absent.
BoundsReport evaluate_scenario(BoundState state, const Pulse &pulse, double tau,
                               double tol = 1e-10);

} // namespace ionbounds::bounds
