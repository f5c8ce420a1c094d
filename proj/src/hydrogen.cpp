#include "ionbounds/hydrogen.hpp"

#include "ionbounds/errors.hpp"

#include <cmath>
#include <string>

namespace ionbounds::hydrogen {

BoundState::BoundState(int n) : n_(n) {
  if (n < 1) throw DomainError("BoundState: principal quantum number must be >= 1, got " + std::to_string(n));
}

StateConstants state_constants(BoundState state) {
  const double n = state.n();
  const double n2 = n * n;
  return {
      .energy = -0.5 / n2,
      .p_z_norm_sq = 1.0 / (3.0 * n2),
      .z_norm_sq = n2 * (5.0 * n2 + 1.0) / 6.0,
      .v_sq_expectation = 2.0 / (n2 * n),
  };
}

namespace {

// Generalized Laguerre polynomial L^{(1)}_k(x).
double laguerre_alpha1(int k, double x) {
  double prev = 1.0;
  if (k == 0) return prev;
  double curr = 2.0 - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 2.0 - x) * curr - (j + 1.0) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

} // namespace

double radial_wavefunction_n0(int n, double r) {
  if (n < 1) throw DomainError("radial_wavefunction_n0: n must be >= 1");
  if (!(r >= 0.0)) throw DomainError("radial_wavefunction_n0: r must be >= 0");
  const double nn = n;
  const double exponent = r / nn;
  if (exponent > 740.0) return 0.0;
  const double rho = 2.0 * r / nn;
  // Split the exponential so that e^{-r/n} * L stays finite for large rho,
  // where L grows like rho^{n-1}/(n-1)!.
  const double lag = laguerre_alpha1(n - 1, rho);
  const double norm = 2.0 / (nn * nn * std::sqrt(nn));
  return norm * (std::exp(-0.5 * exponent) * lag) * std::exp(-0.5 * exponent);
}

} // namespace ionbounds::hydrogen
