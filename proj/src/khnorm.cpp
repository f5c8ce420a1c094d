#include "ionbounds/khnorm.hpp"

#include "ionbounds/quad.hpp"
#include "ionbounds/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ionbounds::khnorm {

namespace {

void require_positive(double y, const char *what) {
  if (!std::isfinite(y) || !(y > 0.0)) {
    std::ostringstream msg;
    msg << what << ": displacement must be finite and > 0, got " << y;
    throw DomainError(msg.str());
  }
}

// Below this |c| the closed form loses about log10(1/c) digits to the
// cancellation 2 + S - 2M -> 0 and is replaced by its expansion.
constexpr double small_c = 1e-3;

// N^2 = A(x) + (gamma + ln x) B(x), x = 2c; exact rational coefficients of
// the expansion of the closed form, through x^7.
double norm_sq_small_c(double c) {
  const double x = 2.0 * c;
  const double log_part = std::numbers::egamma + std::log(x);
  const double b = x * x * (2.0 / 3.0 + x * x * (1.0 / 15.0 + x * x / 420.0));
  const double a =
      x * (2.0 +
           x * (-14.0 / 9.0 +
                x * (1.0 / 6.0 +
                     x * (-38.0 / 225.0 + x * (1.0 / 180.0 + x * (-1159.0 / 176400.0 + x / 10080.0))))));
  return a + log_part * b;
}

// (1 + 1/x) e^{-x} Ei(x) + (1 - 1/x) e^{x} Ei(-x), with Ei(-x) = -E1(x).
double shifted_square_kernel(double x) {
  const double ei = specfun::exp_integral_ei_scaled(x);
  const double e1 = specfun::exp_integral_e1_scaled(x);
  return (1.0 + 1.0 / x) * ei - (1.0 - 1.0 / x) * e1;
}

double assemble(double v_sq, double squared, double mixed) {
  return std::sqrt(std::max(v_sq + squared - 2.0 * mixed, 0.0));
}

double radial_density(int n, double r) {
  const double R = hydrogen::radial_wavefunction_n0(n, r);
  return R * R;
}

// int_a^inf f(r) dr for integrands carrying the hydrogen decay e^{-2r/n}.
double radial_tail(const quad::Integrand &f, double a, int n, const quad::QuadOptions &opts) {
  const double cut = a + 8.0 * n * n + 40.0;
  return quad::integrate(f, a, cut, opts).value +
         quad::integrate_to_infinity(f, cut, static_cast<double>(n), opts).value;
}

// int_a^b f for f peaked at `peak` (a or b) with width about `width`;
// breakpoints grow geometrically away from the peak so no panel straddles it.
double integrate_peaked(const quad::Integrand &f, double a, double b, double peak, double width,
                        const quad::QuadOptions &opts) {
  double total = 0.0;
  double near = peak;
  for (double step = width; std::abs(near - peak) < b - a; step *= 4.0) {
    const double far = peak == a ? std::min(a + step, b) : std::max(b - step, a);
    total += peak == a ? quad::integrate(f, near, far, opts).value
                       : quad::integrate(f, far, near, opts).value;
    near = far;
    if (near == a || near == b) break;
  }
  return total;
}

} // namespace

std::string method_name(NormMethod method) {
  switch (method) {
  case NormMethod::closed_form:
    return "closed_form";
  case NormMethod::weak_bound:
    return "weak_bound";
  case NormMethod::partial_wave_oracle:
    return "partial_wave_oracle";
  case NormMethod::log_kernel_oracle:
    return "log_kernel_oracle";
  }
  return "unknown";
}

double mixed_element_100(double y) {
  require_positive(y, "mixed_element_100");
  return -std::expm1(-2.0 * y) / y;
}

double squared_element_100(double y) {
  require_positive(y, "squared_element_100");
  return shifted_square_kernel(2.0 * y);
}

double squared_element_100_unscaled(double y) {
  require_positive(y, "squared_element_100_unscaled");
  return shifted_square_kernel(y);
}

double squared_element_100_oracle(double y, double tol) {
  require_positive(y, "squared_element_100_oracle");
  quad::QuadOptions opts;
  opts.abs_tol = tol * y / 6.0;
  opts.rel_tol = 1e-13;
  // ln((y+r)/(y-r)) and ln((r+y)/(r-y)) written as log1p to keep the
  // small-argument end accurate.
  auto inner = [y](double r) { return r * std::exp(-2.0 * r) * std::log1p(2.0 * r / (y - r)); };
  auto outer = [y](double r) { return r * std::exp(-2.0 * r) * std::log1p(2.0 * y / (r - y)); };
  const double below = quad::integrate(inner, 0.0, y, opts).value;
  const double near = quad::integrate(outer, y, 2.0 * y, opts).value;
  const double far = quad::integrate_to_infinity(outer, 2.0 * y, 0.5, opts).value;
  return 2.0 / y * (below + near + far);
}

KHNormValue norm_closed_100(double c) {
  const double y = std::abs(c);
  if (y == 0.0) return {c, 0.0, NormMethod::closed_form};
  if (y < small_c) return {c, std::sqrt(norm_sq_small_c(y)), NormMethod::closed_form};
  return {c, assemble(2.0, squared_element_100(y), mixed_element_100(y)), NormMethod::closed_form};
}

KHNormValue norm_log_kernel_100(double c, double tol) {
  const double y = std::abs(c);
  if (y == 0.0) return {c, 0.0, NormMethod::log_kernel_oracle};
  return {c, assemble(2.0, squared_element_100_oracle(y, tol), mixed_element_100(y)),
          NormMethod::log_kernel_oracle};
}

double norm_weak_bound(BoundState state) {
  const double n = state.n();
  return 2.0 / (n * std::sqrt(n));
}

double mixed_element_partial_wave(BoundState state, double y, double tol) {
  require_positive(y, "mixed_element_partial_wave");
  const int n = state.n();
  quad::QuadOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = 1e-13;
  const double inside =
      quad::integrate([&](double r) { return r / y * radial_density(n, r); }, 0.0, y, opts).value;
  const double outside = radial_tail([&](double r) { return radial_density(n, r); }, y, n, opts);
  return inside + outside;
}

PartialWaveSum squared_element_partial_wave(BoundState state, double y, int l_max, double tol) {
  require_positive(y, "squared_element_partial_wave");
  if (l_max < 8) throw DomainError("squared_element_partial_wave: l_max must be >= 8");
  const int n = state.n();
  quad::QuadOptions opts;
  opts.abs_tol = tol * 1e-3;
  opts.rel_tol = 1e-12;

  auto term = [&](int l) {
    const double p_in = 2.0 * l + 2.0;
    const double p_out = 2.0 * l;
    const double width = y / (p_in + 1.0);
    const double cut = y + 8.0 * n * n + 40.0;
    const double inside = integrate_peaked(
        [&](double r) { return std::pow(r / y, p_in) * radial_density(n, r); }, 0.0, y, y, width,
        opts);
    auto outer = [&](double r) { return std::pow(y / r, p_out) * radial_density(n, r); };
    const double outside = integrate_peaked(outer, y, cut, y, width, opts) +
                           quad::integrate_to_infinity(outer, cut, static_cast<double>(n), opts).value;
    return (inside + outside) / (2.0 * l + 1.0);
  };

  constexpr int first_block = 16;
  constexpr int max_order = 6;
  PartialWaveSum out{0.0, 0.0, 0, 0.0, {}};
  std::vector<std::vector<double>> table; // Richardson table, rows by L
  double sum = 0.0;
  int l = 0;
  for (int L = first_block;; L *= 2) {
    if (L > l_max) {
      std::ostringstream msg;
      msg << "squared_element_partial_wave: no convergence within l_max = " << l_max
          << " (n = " << n << ", y = " << y << ")";
      throw PartialWaveError(msg.str(), sum, out.last_term);
    }
    for (; l < L; ++l) {
      const double t = term(l);
      sum += t;
      out.last_term = std::abs(t);
    }
    out.terms = l;
    out.partial_sums.push_back(sum);

    std::vector<double> row{sum};
    const std::size_t j = table.size();
    for (std::size_t k = 1; k <= std::min<std::size_t>(j, max_order); ++k) {
      const double factor = std::ldexp(1.0, static_cast<int>(k));
      row.push_back((factor * row[k - 1] - table[j - 1][k - 1]) / (factor - 1.0));
    }
    table.push_back(row);
    if (j == 0) continue;

    const double current = row.back();
    const double previous = table[j - 1].back();
    const double change = std::abs(current - previous);
    if (change < tol / 10.0 || out.last_term == 0.0) {
      out.value = current;
      out.est_abs_error = change;
      return out;
    }
  }
}

KHNormValue norm_partial_wave_n00(BoundState state, double y, int l_max, double tol) {
  const double n = state.n();
  const double v_sq = 2.0 / (n * n * n);
  const double squared = squared_element_partial_wave(state, y, l_max, tol).value;
  const double mixed = mixed_element_partial_wave(state, y, tol * 1e-2);
  return {y, assemble(v_sq, squared, mixed), NormMethod::partial_wave_oracle};
}

std::vector<AdjudicationRow> adjudicate_closed_form(std::span<const double> grid, double tol) {
  std::vector<AdjudicationRow> rows;
  rows.reserve(grid.size());
  for (const double c : grid) {
    AdjudicationRow row{};
    row.c = c;
    row.oracle = squared_element_100_oracle(c, tol);
    row.rescaled = squared_element_100(c);
    row.unscaled = squared_element_100_unscaled(c);
    row.rescaled_rel_error = std::abs(row.rescaled - row.oracle) / std::abs(row.oracle);
    row.unscaled_rel_error = std::abs(row.unscaled - row.oracle) / std::abs(row.oracle);
    rows.push_back(row);
  }
  return rows;
}

} // namespace ionbounds::khnorm
