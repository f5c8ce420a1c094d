#pragma once

#include "ionbounds/errors.hpp"
#include "ionbounds/hydrogen.hpp"

#include <span>
#include <string>
#include <vector>

namespace ionbounds::khnorm {

using hydrogen::BoundState;

/// How a value of N(c, psi) = ||(V(x - c e_z) - V(x)) psi|| was obtained.
enum class NormMethod { closed_form, weak_bound, partial_wave_oracle, log_kernel_oracle };

std::string method_name(NormMethod method);

struct KHNormValue {
  double c;
  double value;
  NormMethod method;
};

/// <psi100| |x-y|^{-1} |x|^{-1} |psi100> at y -> 0.
inline constexpr double mixed_element_100_at_origin = 2.0;

/// <psi100| |x-y|^{-1} |x|^{-1} |psi100> = (1 - e^{-2y}) / y for y > 0.
double mixed_element_100(double y);

/// <psi100| |x-y|^{-2} |psi100> by adaptive quadrature of the logarithmic
/// kernel (2/y) int_0^inf r e^{-2r} ln|(r+y)/(r-y)| dr, split at r = y.
double squared_element_100_oracle(double y, double tol = 1e-12);

/// Closed form of <psi100| |x-y|^{-2} |psi100>:
///   (1 + 1/(2y)) e^{-2y} Ei(2y) + (1 - 1/(2y)) e^{2y} Ei(-2y).
double squared_element_100(double y);

/// The competing candidate with argument y instead of 2y, i.e.
///   (1 + 1/y) e^{-y} Ei(y) + (1 - 1/y) e^{y} Ei(-y).
/// It equals squared_element_100(y / 2); kept for the adjudication table.
double squared_element_100_unscaled(double y);

/// N(c, psi100). Exact 0 at c = 0, symmetric in c.
KHNormValue norm_closed_100(double c);

/// N(c, psi100) assembled from the log-kernel oracle.
KHNormValue norm_log_kernel_100(double c, double tol = 1e-12);

/// c-independent bound N(c, psi_n00) <= sqrt(2 <V^2>) = 2 / n^{3/2}.
double norm_weak_bound(BoundState state);

/// Partial-wave sum did not converge within the allowed number of terms.
class PartialWaveError : public NumericError {
public:
  PartialWaveError(const std::string &what, double partial_sum, double last_term)
      : NumericError(what), partial_sum_(partial_sum), last_term_(last_term) {}
  double partial_sum() const noexcept { return partial_sum_; }
  double last_term() const noexcept { return last_term_; }

private:
  double partial_sum_;
  double last_term_;
};

/// Mixed element for psi_n00 from the radial integrals
///   int_0^y (r/y) R^2 dr + int_y^inf R^2 dr.
double mixed_element_partial_wave(BoundState state, double y, double tol = 1e-12);

struct PartialWaveSum {
  double value;          // extrapolated sum over l
  double est_abs_error;  // from the extrapolation table
  int terms;             // number of partial waves summed explicitly
  double last_term;      // magnitude of the last explicit term
  std::vector<double> partial_sums; // S_L at L = 16, 32, 64, ...
};

/// Squared element for psi_n00 from the partial-wave series
///   sum_l 1/(2l+1) [ int_0^y (r/y)^{2l+2} R^2 dr + int_y^inf (y/r)^{2l} R^2 dr ].
///
/// The terms decay like 1/l^2, so the sum is taken in blocks L = 16, 32,
/// 64, ... and Richardson-extrapolated in 1/L. Stops when successive
/// extrapolants agree to tol / 10; throws PartialWaveError once L would
/// exceed l_max.
PartialWaveSum squared_element_partial_wave(BoundState state, double y, int l_max = 4096,
                                            double tol = 1e-10);

/// N(y, psi_n00) from the partial-wave route.
KHNormValue norm_partial_wave_n00(BoundState state, double y, int l_max = 4096, double tol = 1e-10);

/// One row of the closed-form adjudication table.
struct AdjudicationRow {
  double c;
  double oracle;          // log-kernel quadrature
  double rescaled;        // squared_element_100
  double unscaled;        // squared_element_100_unscaled
  double rescaled_rel_error;
  double unscaled_rel_error;
};

std::vector<AdjudicationRow> adjudicate_closed_form(std::span<const double> grid, double tol = 1e-12);

} // namespace ionbounds::khnorm
