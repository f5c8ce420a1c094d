#include "ionbounds/pulse.hpp"

#include "ionbounds/errors.hpp"
#include "ionbounds/quad.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace ionbounds::pulses {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double infinity = std::numeric_limits<double>::infinity();

// amplitude * u^power * sin(frequency * u + phase), u = local time since
// the segment start. Frequencies may be zero or negative.
struct Term {
  double amplitude;
  int power; // 0 or 1
  double frequency;
  double phase;
};

struct Segment {
  double start;
  double end;
  std::vector<Term> terms;
};

// phi_k(z) = int_0^1 x^k e^{zx} dx and psi_k(z) = int_0^1 (1-x) x^k e^{zx} dx.
// Both are entire in z; the series branch covers the region where the
// closed forms lose digits to cancellation (frequency -> 0, including the
// removable poles of the envelope expressions).
struct PhiPsi {
  cplx phi;
  cplx psi;
};

PhiPsi phi_psi(int k, cplx z) {
  if (std::abs(z) < 1.0) {
    cplx phi = 0.0;
    cplx psi = 0.0;
    cplx zj = 1.0; // z^j / j!
    for (int j = 0; j < 40; ++j) {
      const double a = j + k + 1.0;
      const cplx p = zj / a;
      phi += p;
      psi += p / (a + 1.0);
      if (std::abs(zj) < 1e-18 * std::abs(phi)) break;
      zj *= z / (j + 1.0);
    }
    return {phi, psi};
  }
  const cplx ez = std::exp(z);
  cplx phi0 = (ez - 1.0) / z;
  cplx phi1 = (ez - phi0) / z;
  if (k == 0) return {phi0, phi0 - phi1};
  cplx phi2 = (ez - 2.0 * phi1) / z;
  return {phi1, phi1 - phi2};
}

// Contribution of one term over a local interval of length h to
// int_0^h E and int_0^h (h - u) E du.
struct Increment {
  double b;
  double c;
};

Increment integrate_term(const Term &term, double h) {
  if (h <= 0.0) return {0.0, 0.0};
  const PhiPsi pp = phi_psi(term.power, cplx(0.0, term.frequency * h));
  const cplx rot = std::polar(1.0, term.phase);
  const double hk1 = term.power == 0 ? h : h * h;
  const double b = term.amplitude * hk1 * std::imag(rot * pp.phi);
  const double c = term.amplitude * hk1 * h * std::imag(rot * pp.psi);
  return {b, c};
}

double evaluate_term(const Term &term, double u) {
  const double poly = term.power == 0 ? 1.0 : u;
  return term.amplitude * poly * std::sin(term.frequency * u + term.phase);
}

// sin^2-shaped ramp pieces: sin(w s) (1 -+ cos(kappa u)) / 2 expanded into
// sinusoids in the local time u with s = offset + u.
void add_sine_squared_pieces(std::vector<Term> &terms, double e0, double omega, double kappa,
                             double offset, double sign) {
  const double phase = omega * offset;
  terms.push_back({0.5 * e0, 0, omega, phase});
  terms.push_back({-0.25 * sign * e0, 0, omega + kappa, phase});
  terms.push_back({-0.25 * sign * e0, 0, omega - kappa, phase});
}

std::vector<Segment> segments(const Pulse &pulse) {
  return std::visit(
      overloaded{
          [](const StaticField &p) {
            return std::vector<Segment>{{0.0, infinity, {{p.field_strength, 0, 0.0, 0.5 * pi}}}};
          },
          [](const Monochromatic &p) {
            return std::vector<Segment>{{0.0, infinity, {{p.field_strength, 0, p.frequency, 0.0}}}};
          },
          [](const TrapezoidEnvelope &p) {
            const double e0 = p.field_strength;
            const double w = p.frequency;
            const double t1 = p.duration - p.ramp;
            return std::vector<Segment>{
                {0.0, p.ramp, {{e0 / p.ramp, 1, w, 0.0}}},
                {p.ramp, t1, {{e0, 0, w, w * p.ramp}}},
                {t1, p.duration, {{e0, 0, w, w * t1}, {-e0 / p.ramp, 1, w, w * t1}}},
                {p.duration, infinity, {}},
            };
          },
          [](const SineSquaredEnvelope &p) {
            std::vector<Term> terms;
            add_sine_squared_pieces(terms, p.field_strength, p.frequency, 2.0 * p.envelope_frequency,
                                    0.0, 1.0);
            return std::vector<Segment>{{0.0, infinity, std::move(terms)}};
          },
          [](const SineSquaredRamps &p) {
            const double e0 = p.field_strength;
            const double w = p.frequency;
            const double kappa = pi / p.ramp;
            const double t1 = p.duration - p.ramp;
            std::vector<Term> up;
            add_sine_squared_pieces(up, e0, w, kappa, 0.0, 1.0);
            // Turn-off: sin^2(pi (tau0 - s) / 2T) = (1 + cos(kappa u)) / 2.
            std::vector<Term> down;
            add_sine_squared_pieces(down, e0, w, kappa, t1, -1.0);
            return std::vector<Segment>{
                {0.0, p.ramp, std::move(up)},
                {p.ramp, t1, {{e0, 0, w, w * p.ramp}}},
                {t1, p.duration, std::move(down)},
                {p.duration, infinity, {}},
            };
          },
      },
      pulse);
}

void check_time(double t, const char *what) {
  if (!std::isfinite(t) || t < 0.0) {
    std::ostringstream msg;
    msg << what << ": time must be finite and >= 0, got " << t;
    throw DomainError(msg.str());
  }
}

struct BC {
  double b;
  double c;
};

BC analytic_kinematics(const Pulse &pulse, double t) {
  double b = 0.0;
  double c = 0.0;
  for (const Segment &seg : segments(pulse)) {
    if (t <= seg.start) break;
    const double h = std::min(t, seg.end) - seg.start;
    double db = 0.0;
    double dc = 0.0;
    for (const Term &term : seg.terms) {
      const Increment inc = integrate_term(term, h);
      db += inc.b;
      dc += inc.c;
    }
    c += b * h + dc;
    b += db;
  }
  return {b, c};
}

std::vector<double> breakpoints(const Pulse &pulse, double t) {
  std::vector<double> points{0.0};
  for (const Segment &seg : segments(pulse)) {
    if (seg.end < t) points.push_back(seg.end);
  }
  points.push_back(t);
  return points;
}

double piecewise_integral(const Pulse &pulse, double t, double tol, const quad::Integrand &f) {
  const std::vector<double> points = breakpoints(pulse, t);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    total += quad::integrate(f, points[i], points[i + 1], tol, tol).value;
  }
  return total;
}

} // namespace

void validate(const Pulse &pulse) {
  auto require = [](bool ok, const std::string &msg) {
    if (!ok) throw DomainError("pulse: " + msg);
  };
  auto positive = [&](double v, const char *name) {
    require(std::isfinite(v) && v > 0.0, std::string(name) + " must be finite and > 0");
  };
  std::visit(overloaded{
                 [&](const StaticField &p) { positive(p.field_strength, "E0"); },
                 [&](const Monochromatic &p) {
                   positive(p.field_strength, "E0");
                   positive(p.frequency, "omega");
                 },
                 [&](const TrapezoidEnvelope &p) {
                   positive(p.field_strength, "E0");
                   positive(p.frequency, "omega");
                   positive(p.ramp, "ramp");
                   positive(p.duration, "duration");
                   require(2.0 * p.ramp <= p.duration, "2 * ramp must not exceed duration");
                 },
                 [&](const SineSquaredEnvelope &p) {
                   positive(p.field_strength, "E0");
                   positive(p.frequency, "omega");
                   positive(p.envelope_frequency, "Omega");
                 },
                 [&](const SineSquaredRamps &p) {
                   positive(p.field_strength, "E0");
                   positive(p.frequency, "omega");
                   positive(p.ramp, "ramp");
                   positive(p.duration, "duration");
                   require(2.0 * p.ramp <= p.duration, "2 * ramp must not exceed duration");
                 },
             },
             pulse);
}

std::optional<double> duration(const Pulse &pulse) {
  return std::visit(overloaded{
                        [](const TrapezoidEnvelope &p) -> std::optional<double> { return p.duration; },
                        [](const SineSquaredRamps &p) -> std::optional<double> { return p.duration; },
                        [](const auto &) -> std::optional<double> { return std::nullopt; },
                    },
                    pulse);
}

std::string shape_name(const Pulse &pulse) {
  return std::visit(overloaded{
                        [](const StaticField &) { return std::string("static"); },
                        [](const Monochromatic &) { return std::string("monochromatic"); },
                        [](const TrapezoidEnvelope &) { return std::string("trapezoid"); },
                        [](const SineSquaredEnvelope &) { return std::string("sine_squared"); },
                        [](const SineSquaredRamps &) { return std::string("sine_squared_ramps"); },
                    },
                    pulse);
}

std::string describe(const Pulse &pulse) {
  std::ostringstream out;
  out.precision(17);
  out << shape_name(pulse) << "(";
  std::visit(overloaded{
                 [&](const StaticField &p) { out << "E0=" << p.field_strength; },
                 [&](const Monochromatic &p) {
                   out << "E0=" << p.field_strength << ", omega=" << p.frequency;
                 },
                 [&](const TrapezoidEnvelope &p) {
                   out << "E0=" << p.field_strength << ", omega=" << p.frequency
                       << ", ramp=" << p.ramp << ", duration=" << p.duration;
                 },
                 [&](const SineSquaredEnvelope &p) {
                   out << "E0=" << p.field_strength << ", omega=" << p.frequency
                       << ", Omega=" << p.envelope_frequency;
                 },
                 [&](const SineSquaredRamps &p) {
                   out << "E0=" << p.field_strength << ", omega=" << p.frequency
                       << ", ramp=" << p.ramp << ", duration=" << p.duration;
                 },
             },
             pulse);
  out << ")";
  return out.str();
}

std::optional<double> cycle_length(const Pulse &pulse) {
  return std::visit(overloaded{
                        [](const StaticField &) -> std::optional<double> { return std::nullopt; },
                        [](const auto &p) -> std::optional<double> { return 2.0 * pi / p.frequency; },
                    },
                    pulse);
}

double field(const Pulse &pulse, double t) {
  check_time(t, "field");
  for (const Segment &seg : segments(pulse)) {
    if (t < seg.end || seg.end == infinity) {
      double e = 0.0;
      for (const Term &term : seg.terms) e += evaluate_term(term, t - seg.start);
      return e;
    }
  }
  return 0.0;
}

KinematicsValue momentum_transfer(const Pulse &pulse, double t, double tol, KinematicsMethod method) {
  check_time(t, "momentum_transfer");
  if (method == KinematicsMethod::quadrature) {
    const double b = piecewise_integral(pulse, t, tol, [&](double s) { return field(pulse, s); });
    return {b, Provenance::quadrature};
  }
  return {analytic_kinematics(pulse, t).b, Provenance::analytic};
}

KinematicsValue displacement(const Pulse &pulse, double t, double tol, KinematicsMethod method) {
  check_time(t, "displacement");
  if (method == KinematicsMethod::quadrature) {
    // c(t) = int_0^t (t - s) E(s) ds
    const double c =
        piecewise_integral(pulse, t, tol, [&](double s) { return (t - s) * field(pulse, s); });
    return {c, Provenance::quadrature};
  }
  return {analytic_kinematics(pulse, t).c, Provenance::analytic};
}

FieldKinematics kinematics(const Pulse &pulse, double t, double tol, KinematicsMethod method) {
  check_time(t, "kinematics");
  if (method == KinematicsMethod::quadrature) {
    const KinematicsValue b = momentum_transfer(pulse, t, tol, method);
    const KinematicsValue c = displacement(pulse, t, tol, method);
    return {t, field(pulse, t), b.value, c.value, Provenance::quadrature};
  }
  const BC bc = analytic_kinematics(pulse, t);
  return {t, field(pulse, t), bc.b, bc.c, Provenance::analytic};
}

double field_l2_norm(const Pulse &pulse, double t, double tol) {
  check_time(t, "field_l2_norm");
  const double sq = piecewise_integral(pulse, t, tol, [&](double s) {
    const double e = field(pulse, s);
    return e * e;
  });
  return std::sqrt(std::max(sq, 0.0));
}

} // namespace ionbounds::pulses
