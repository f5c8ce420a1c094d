#include "ionbounds/specfun.hpp"

#include "ionbounds/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ionbounds::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double series_limit = 40.0;
constexpr int max_terms = 500;

void check_argument(double x, const char *name) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(name) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

struct Sum {
  double value;
  double magnitude; // sum of |parts|, drives the rounding estimate
  int terms;
};

// gamma + ln x + sum_{k>=1} x^k / (k k!)
Sum ei_series(double x) {
  double term = 1.0;
  double series = 0.0;
  int k = 1;
  for (; k < max_terms; ++k) {
    term *= x / k;
    const double contribution = term / k;
    series += contribution;
    if (contribution < eps * series) break;
  }
  const double log_part = std::numbers::egamma + std::log(x);
  return {log_part + series, std::abs(std::numbers::egamma) + std::abs(std::log(x)) + series, k};
}

// x e^{-x} Ei(x) = sum_k k!/x^k, truncated at the smallest term.
Sum ei_asymptotic_scaled(double x) {
  double term = 1.0;
  double sum = 1.0;
  int k = 1;
  for (; k < max_terms; ++k) {
    const double next = term * k / x;
    if (next > term || next < eps * sum) break;
    term = next;
    sum += term;
  }
  return {sum, sum, k};
}

// -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
Sum e1_series(double x) {
  double term = 1.0;
  double series = 0.0;
  double magnitude = 0.0;
  int k = 1;
  for (; k < max_terms; ++k) {
    term *= -x / k;
    const double contribution = term / k;
    series += contribution;
    magnitude += std::abs(contribution);
    if (std::abs(contribution) < eps * std::abs(series)) break;
  }
  const double log_part = std::numbers::egamma + std::log(x);
  return {-log_part - series, std::abs(std::numbers::egamma) + std::abs(std::log(x)) + magnitude, k};
}

// e^{x} E1(x) by the continued fraction 1/(x+1- 1/(x+3- 4/(x+5- ...))),
// evaluated with the modified Lentz algorithm.
Sum e1_continued_fraction_scaled(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  int i = 1;
  for (; i < max_terms; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return {h, h, i};
}

double rel_estimate(const Sum &s) {
  const double abs_err = 4.0 * eps * s.magnitude * std::sqrt(static_cast<double>(s.terms));
  const double scale = std::abs(s.value) < 1e-3 ? 1.0 : std::abs(s.value);
  return abs_err / scale;
}

} // namespace

EiResult exp_integral_ei(double x) {
  check_argument(x, "exp_integral_ei");
  if (x <= series_limit) {
    const Sum s = ei_series(x);
    return {s.value, rel_estimate(s)};
  }
  const Sum s = ei_asymptotic_scaled(x);
  const double half = std::exp(0.5 * x);
  const double value = half * (half / x * s.value);
  if (!std::isfinite(value)) {
    throw std::overflow_error("exp_integral_ei: result overflows for x = " + std::to_string(x));
  }
  return {value, rel_estimate(s) + 2.0 * eps};
}

EiResult exp_integral_e1(double x) {
  check_argument(x, "exp_integral_e1");
  if (x <= 1.0) {
    const Sum s = e1_series(x);
    return {s.value, rel_estimate(s)};
  }
  const Sum s = e1_continued_fraction_scaled(x);
  return {s.value * std::exp(-x), rel_estimate(s) + 2.0 * eps};
}

double exp_integral_ei_scaled(double x) {
  check_argument(x, "exp_integral_ei_scaled");
  if (x <= series_limit) return std::exp(-x) * ei_series(x).value;
  return ei_asymptotic_scaled(x).value / x;
}

double exp_integral_e1_scaled(double x) {
  check_argument(x, "exp_integral_e1_scaled");
  if (x <= 1.0) return std::exp(x) * e1_series(x).value;
  return e1_continued_fraction_scaled(x).value;
}

} // namespace ionbounds::specfun
