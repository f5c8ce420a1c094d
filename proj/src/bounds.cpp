#include "ionbounds/bounds.hpp"

#include "ionbounds/errors.hpp"
#include "ionbounds/khnorm.hpp"
#include "ionbounds/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ionbounds::bounds {

namespace {

void require_tau(double tau, const char *what) {
  if (!std::isfinite(tau) || !(tau > 0.0)) {
    std::ostringstream msg;
    msg << what << ": tau must be finite and > 0, got " << tau;
    throw DomainError(msg.str());
  }
}

double b_at(const Pulse &pulse, double tau) { return pulses::momentum_transfer(pulse, tau).value; }
double c_at(const Pulse &pulse, double tau) { return pulses::displacement(pulse, tau).value; }

double closed_norm(double c) { return khnorm::norm_closed_100(c).value; }

std::vector<double> breakpoints(const Pulse &pulse, double tau) {
  std::vector<double> points{0.0};
  auto add = [&](double t) {
    if (t > 0.0 && t < tau) points.push_back(t);
  };
  if (const auto *p = std::get_if<pulses::TrapezoidEnvelope>(&pulse)) {
    add(p->ramp);
    add(p->duration - p->ramp);
    add(p->duration);
  } else if (const auto *p = std::get_if<pulses::SineSquaredRamps>(&pulse)) {
    add(p->ramp);
    add(p->duration - p->ramp);
    add(p->duration);
  }
  points.push_back(tau);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

BoundValue below_threshold() { return {std::nullopt, std::string(below_threshold_reason)}; }

// psi_100: 2E + b^2 = b^2 - 1, ||p_z psi|| = 1/sqrt(3), ||z psi|| = 1.
double strong_lower_from(double integral, double b, double c) {
  const double denom = b * b - 1.0;
  const double inner =
      integral + 2.0 * closed_norm(c) / denom + 2.0 / std::sqrt(3.0) * std::abs(b) / denom;
  return 1.0 - inner * inner;
}

double strong_upper_from(double integral, double b, double c) {
  const double inner = integral + std::abs(c) / std::sqrt(3.0) + std::abs(b);
  return inner * inner;
}

} // namespace

double norm_time_integral(const Pulse &pulse, double tau, const NormFunction &norm, double tol) {
  require_tau(tau, "norm_time_integral");
  auto integrand = [&](double t) { return norm(c_at(pulse, t)); };
  const auto points = breakpoints(pulse, tau);
  quad::QuadOptions opts;
  opts.abs_tol = tol / static_cast<double>(points.size() - 1);
  opts.rel_tol = 1e-14;
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    total += quad::integrate(integrand, points[i - 1], points[i], opts).value;
  return total;
}

bool lower_valid(BoundState state, double b_tau) {
  const double n = state.n();
  return b_tau * b_tau > (1.0 + threshold_guard) / (n * n);
}

BoundValue strong_lower_100(const Pulse &pulse, double tau, double tol) {
  require_tau(tau, "strong_lower_100");
  const double b = b_at(pulse, tau);
  if (!lower_valid(BoundState(1), b)) return below_threshold();
  return {strong_lower_from(norm_time_integral(pulse, tau, closed_norm, tol), b, c_at(pulse, tau)),
          std::nullopt};
}

BoundValue strong_upper_100(const Pulse &pulse, double tau, double tol) {
  require_tau(tau, "strong_upper_100");
  return {strong_upper_from(norm_time_integral(pulse, tau, closed_norm, tol), b_at(pulse, tau),
                           c_at(pulse, tau)),
          std::nullopt};
}

BoundValue weak_lower_n00(BoundState state, const Pulse &pulse, double tau) {
  require_tau(tau, "weak_lower_n00");
  const double b = b_at(pulse, tau);
  if (!lower_valid(state, b)) return below_threshold();
  const double n = state.n();
  const double weak = khnorm::norm_weak_bound(state);
  const double denom = b * b - 1.0 / (n * n);
  const double inner = weak * tau + 2.0 * weak / denom + 2.0 * std::abs(b) / (n * std::sqrt(3.0) * denom);
  return {1.0 - inner * inner, std::nullopt};
}

BoundValue weak_upper_n00(BoundState state, const Pulse &pulse, double tau) {
  require_tau(tau, "weak_upper_n00");
  const double b = b_at(pulse, tau);
  const double c = c_at(pulse, tau);
  const double n = state.n();
  const double inner = khnorm::norm_weak_bound(state) * tau + std::abs(c) / (n * std::sqrt(3.0)) +
                       n * std::sqrt((5.0 * n * n + 1.0) / 6.0) * std::abs(b);
  return {inner * inner, std::nullopt};
}

BoundsReport evaluate_scenario(BoundState state, const Pulse &pulse, double tau, double tol) {
  pulses::validate(pulse);
  require_tau(tau, "evaluate_scenario");
  BoundsReport report{pulse, tau, state, {}, {}, {}, {}, 0.0, 0.0, {}, false, {}, false, false, {}};

  const auto kin = pulses::kinematics(pulse, tau);
  report.b_tau = kin.momentum_transfer;
  report.c_tau = kin.displacement;
  report.lower_valid = lower_valid(state, report.b_tau);
  if (!report.lower_valid) report.lower_invalid_reason = below_threshold_reason;

  auto attempt = [&](const char *name, auto &&compute) {
    try {
      compute();
    } catch (const std::exception &e) {
      report.errors.push_back(std::string(name) + ": " + e.what());
    }
  };

  if (state.n() == 1) {
    attempt("norm_time_integral",
            [&] { report.norm_time_integral = norm_time_integral(pulse, tau, closed_norm, tol); });
    if (report.norm_time_integral) {
      const double integral = *report.norm_time_integral;
      report.strong_upper = strong_upper_from(integral, report.b_tau, report.c_tau);
      if (report.lower_valid)
        report.strong_lower = strong_lower_from(integral, report.b_tau, report.c_tau);
    }
  }
  attempt("weak_upper_n00", [&] { report.weak_upper = weak_upper_n00(state, pulse, tau).value; });
  if (report.lower_valid)
    attempt("weak_lower_n00", [&] { report.weak_lower = weak_lower_n00(state, pulse, tau).value; });

  const auto upper = report.strong_upper ? report.strong_upper : report.weak_upper;
  const auto lower = report.strong_lower ? report.strong_lower : report.weak_lower;
  report.upper_informative = upper && *upper <= 1.0;
  report.lower_informative = lower && *lower >= 0.0;
  return report;
}

} // namespace ionbounds::bounds
