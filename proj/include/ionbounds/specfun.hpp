#pragma once

namespace ionbounds::specfun {

struct EiResult {
  double value = 0.0;
  // Relative error estimate. Where |value| < 1e-3 (only in the vicinity of
  // the real zero of Ei near 0.3725) this holds the absolute error instead.
  double est_rel_error = 0.0;
};

/// Exponential integral Ei(x) = -PV int_{-x}^inf e^{-t}/t dt for x > 0.
///
/// Power series up to x = 40, asymptotic expansion beyond. Throws
/// DomainError for x <= 0 or non-finite x, and std::overflow_error when
/// Ei(x) exceeds the double range (x > ~716); use exp_integral_ei_scaled
/// there.
EiResult exp_integral_ei(double x);

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0.
///
/// Power series for x <= 1, modified-Lentz continued fraction otherwise.
/// Negative-argument Ei is obtained by callers as Ei(-x) = -E1(x).
EiResult exp_integral_e1(double x);

/// e^{-x} Ei(x), finite for every x > 0.
double exp_integral_ei_scaled(double x);

/// e^{x} E1(x), finite for every x > 0.
double exp_integral_e1_scaled(double x);

} // namespace ionbounds::specfun
