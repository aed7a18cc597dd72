#pragma once

#include <complex>

namespace qdcav {

/// Physical parameters of the spin-cavity unit. Rates are in units of the
/// cavity field decay rate, so `kappa` stays at 1 unless a caller deliberately
/// rescales. Frequencies enter only through detunings from the probe photon.
struct CavityParams {
  double g = 0.0;        ///< QD-cavity coupling strength
  double kappa = 1.0;    ///< cavity field decay rate through the mirrors
  double kappa_s = 0.0;  ///< side leakage rate
  double gamma = 0.1;    ///< X- dipole decay rate
  double detuning_c = 0.0;  ///< omega_c - omega
  double detuning_x = 0.0;  ///< omega_X- - omega

  /// Throws std::invalid_argument naming the first violated precondition.
  void validate() const;
  bool resonant() const { return detuning_c == 0.0 && detuning_x == 0.0; }
};

/// Reflection and transmission amplitudes of the coupled (r, t) and uncoupled
/// (r0, t0) cavity.
struct ScatterCoefficients {
  std::complex<double> r;
  std::complex<double> t;
  std::complex<double> r0;
  std::complex<double> t0;

  bool is_real(double tolerance = 1e-12) const;
};

/// Weak-excitation input-output coefficients at arbitrary detuning. The
/// uncoupled pair is the same expression evaluated with g = 0.
ScatterCoefficients scatter_coefficients(const CavityParams &p);

/// Closed form at omega = omega_c = omega_X-. All four values are exactly real.
ScatterCoefficients resonant_coefficients(double g, double kappa_s, double gamma, double kappa = 1.0);

}  // namespace qdcav
