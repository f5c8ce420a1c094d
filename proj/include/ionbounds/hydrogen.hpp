#pragma once

namespace ionbounds::hydrogen {

/// Hydrogen s-state psi_{n00}; l = m = 0 is implied.
class BoundState {
public:
  /// Throws DomainError unless n >= 1.
  explicit BoundState(int n);

  int n() const noexcept { return n_; }

  friend bool operator==(const BoundState &, const BoundState &) = default;

private:
  int n_;
};

/// Closed-form expectation values of psi_{n00} in atomic units.
struct StateConstants {
  double energy;           // E_n = -1/(2n^2)
  double p_z_norm_sq;      // ||p_z psi||^2 = 1/(3n^2)
  double z_norm_sq;        // ||z psi||^2 = n^2 (5n^2 + 1) / 6
  double v_sq_expectation; // <psi, V^2 psi> = <1/r^2> = 2/n^3
};

StateConstants state_constants(BoundState state);

/// Normalized radial function R_{n0}(r), with int_0^inf R^2 r^2 dr = 1.
///
/// Evaluated as (2/n^{5/2}) e^{-r/n} L^{(1)}_{n-1}(2r/n) with the Laguerre
/// polynomial from its three-term recurrence. Returns 0 once the
/// exponential factor underflows.
double radial_wavefunction_n0(int n, double r);

} // namespace ionbounds::hydrogen
