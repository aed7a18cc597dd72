#include "qdcav/cavity.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdcav {

namespace {

using C = std::complex<double>;

void require(bool ok, const char *what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

void require_finite(double v, const char *what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// r(w) and t(w) for a given coupling. Both share the denominator
//   [i dx + gamma/2][i dc + kappa + kappa_s/2] + g^2.
std::pair<C, C> coupled_pair(double g, double kappa, double kappa_s, double gamma, double dc, double dx) {
  const C i{0.0, 1.0};
  const C dipole = i * dx + gamma / 2.0;
  const C denom = dipole * (i * dc + kappa + kappa_s / 2.0) + g * g;
  const C r = (dipole * (i * dc + kappa_s / 2.0) + g * g) / denom;
  const C t = -kappa * dipole / denom;
  return {r, t};
}

}  // namespace

void CavityParams::validate() const {
  require_finite(g, "g");
  require_finite(kappa, "kappa");
  require_finite(kappa_s, "kappa_s");
  require_finite(gamma, "gamma");
  require_finite(detuning_c, "detuning_c");
  require_finite(detuning_x, "detuning_x");
  require(g >= 0.0, "g must be >= 0");
  require(kappa > 0.0, "kappa must be > 0");
  require(kappa_s >= 0.0, "kappa_s must be >= 0");
  require(gamma > 0.0, "gamma must be > 0");
}

bool ScatterCoefficients::is_real(double tolerance) const {
  return std::abs(r.imag()) <= tolerance && std::abs(t.imag()) <= tolerance && std::abs(r0.imag()) <= tolerance &&
         std::abs(t0.imag()) <= tolerance;
}

ScatterCoefficients scatter_coefficients(const CavityParams &p) {
  p.validate();
  if (p.resonant()) {
    return resonant_coefficients(p.g, p.kappa_s, p.gamma, p.kappa);
  }
  const auto [r, t] = coupled_pair(p.g, p.kappa, p.kappa_s, p.gamma, p.detuning_c, p.detuning_x);
  const auto [r0, t0] = coupled_pair(0.0, p.kappa, p.kappa_s, p.gamma, p.detuning_c, p.detuning_x);
  return {r, t, r0, t0};
}

ScatterCoefficients resonant_coefficients(double g, double kappa_s, double gamma, double kappa) {
  CavityParams{g, kappa, kappa_s, gamma, 0.0, 0.0}.validate();
  const double denom = gamma * (2.0 * kappa + kappa_s) + 4.0 * g * g;
  const double r = (gamma * kappa_s + 4.0 * g * g) / denom;
  const double t = -2.0 * gamma * kappa / denom;
  const double r0 = kappa_s / (2.0 * kappa + kappa_s);
  const double t0 = -2.0 * kappa / (2.0 * kappa + kappa_s);
  return {r, t, r0, t0};
}

}  // namespace qdcav
