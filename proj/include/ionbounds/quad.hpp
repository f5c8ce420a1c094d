#pragma once

#include "ionbounds/errors.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

namespace ionbounds::quad {

struct QuadResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
};

/// Thrown when the adaptive driver cannot meet its tolerance, or when the
/// integrand returns a non-finite value. Carries the best estimate so far.
class QuadratureError : public NumericError {
public:
  QuadratureError(const std::string &what, QuadResult best, std::optional<double> abscissa = {})
      : NumericError(what), best_(best), abscissa_(abscissa) {}

  const QuadResult &best_estimate() const noexcept { return best_; }
  /// Abscissa at which the integrand produced NaN/inf, if that was the cause.
  const std::optional<double> &abscissa() const noexcept { return abscissa_; }

private:
  QuadResult best_;
  std::optional<double> abscissa_;
};

using Integrand = std::function<double(double)>;

/// Number of abscissae of the underlying Gauss-Kronrod rule.
inline constexpr std::size_t rule_size = 15;

/// Global adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The rule never samples the endpoints, so integrable endpoint
/// singularities are allowed. Succeeds when the summed error estimate is
/// below max(abs_tol, rel_tol * |value|).
QuadResult integrate(const Integrand &f, double a, double b, const QuadOptions &options = {});

QuadResult integrate(const Integrand &f, double a, double b, double abs_tol, double rel_tol);

/// Integral of f over [a, inf) through x = a + scale * t / (1 - t).
/// `scale` should be of the order of the decay length of f.
QuadResult integrate_to_infinity(const Integrand &f, double a, double scale = 1.0,
                                 const QuadOptions &options = {});

} // namespace ionbounds::quad
