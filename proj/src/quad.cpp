#include "ionbounds/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace ionbounds::quad {

namespace {

// Kronrod 15-point abscissae; the odd-indexed ones are the 7-point Gauss
// nodes. Values as in QUADPACK qk15.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

struct ByError {
  bool operator()(const Segment &lhs, const Segment &rhs) const { return lhs.error < rhs.error; }
};

[[noreturn]] void non_finite(double x, double fx, const QuadResult &best) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "integrand returned " << fx << " at x = " << x;
  throw QuadratureError(msg.str(), best, x);
}

Segment gauss_kronrod(const Integrand &f, double a, double b, const QuadResult &so_far) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto eval = [&](double x) {
    const double fx = f(x);
    if (!std::isfinite(fx)) non_finite(x, fx, so_far);
    return fx;
  };

  const double fc = eval(center);
  double result_kronrod = fc * wgk[7];
  double result_gauss = fc * wg[3];
  double result_abs = std::abs(result_kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    f1[j] = eval(center - dx);
    f2[j] = eval(center + dx);
    const double sum = f1[j] + f2[j];
    result_kronrod += wgk[j] * sum;
    result_abs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) result_gauss += wg[j / 2] * sum;
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = wgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    result_asc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double width = std::abs(half);
  const double value = result_kronrod * half;
  result_abs *= width;
  result_asc *= width;
  double error = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > tiny / (50.0 * eps)) error = std::max(50.0 * eps * result_abs, error);

  const double mid = 0.5 * (a + b);
  const bool splittable = mid > a && mid < b &&
                          std::abs(b - a) > 1000.0 * eps * std::max(std::abs(a), std::abs(b));
  return {a, b, value, error, splittable};
}

} // namespace

QuadResult integrate(const Integrand &f, double a, double b, const QuadOptions &options) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw DomainError("integrate: require finite a <= b");
  }
  if (!(options.abs_tol > 0.0) || !(options.rel_tol > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }

  QuadResult total;
  const Segment first = gauss_kronrod(f, a, b, total);
  total = {first.value, first.error, rule_size};
  if (a == b) return {0.0, 0.0, rule_size};

  std::vector<Segment> active; // max-heap on error
  const ByError order;
  // Segments that can no longer be bisected; their error is final.
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  if (first.splittable) {
    active.push_back(first);
  } else {
    frozen_value = first.value;
    frozen_error = first.error;
  }

  double value_sum = first.value;
  double error_sum = first.error;
  std::size_t since_resum = 0;

  while (error_sum > std::max(options.abs_tol, options.rel_tol * std::abs(value_sum))) {
    if (active.empty() ||
        frozen_error > std::max(options.abs_tol, options.rel_tol * std::abs(value_sum))) {
      throw QuadratureError("integrate: roundoff limit reached before tolerance", total);
    }
    if (total.evaluations + 2 * rule_size > options.max_evaluations) {
      throw QuadratureError("integrate: evaluation budget exhausted", total);
    }
    std::pop_heap(active.begin(), active.end(), order);
    const Segment worst = active.back();
    active.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid, total);
    const Segment right = gauss_kronrod(f, mid, worst.b, total);
    total.evaluations += 2 * rule_size;

    value_sum += left.value + right.value - worst.value;
    error_sum += left.error + right.error - worst.error;
    for (const Segment &s : {left, right}) {
      if (s.splittable) {
        active.push_back(s);
        std::push_heap(active.begin(), active.end(), order);
      } else {
        frozen_value += s.value;
        frozen_error += s.error;
      }
    }

    // Re-sum periodically so the running totals do not drift.
    if (++since_resum == 64) {
      since_resum = 0;
      value_sum = frozen_value;
      error_sum = frozen_error;
      for (const Segment &s : active) {
        value_sum += s.value;
        error_sum += s.error;
      }
    }
    total.value = value_sum;
    total.est_abs_error = error_sum;
  }

  total.value = value_sum;
  total.est_abs_error = error_sum;
  return total;
}

QuadResult integrate(const Integrand &f, double a, double b, double abs_tol, double rel_tol) {
  QuadOptions options;
  options.abs_tol = abs_tol;
  options.rel_tol = rel_tol;
  return integrate(f, a, b, options);
}

QuadResult integrate_to_infinity(const Integrand &f, double a, double scale,
                                 const QuadOptions &options) {
  if (!std::isfinite(a) || !(scale > 0.0)) {
    throw DomainError("integrate_to_infinity: require finite a and scale > 0");
  }
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + scale * t / one_minus;
    if (!std::isfinite(x)) return 0.0;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx * scale / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, options);
}

} // namespace ionbounds::quad
