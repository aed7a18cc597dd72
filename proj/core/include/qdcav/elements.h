#pragma once

#include <array>

#include <Eigen/Core>

#include "qdcav/cavity.h"
#include "qdcav/state.h"

namespace qdcav {

/// Selects between the lossless reflect/transmit rules and the realistic rules
/// built from resonant cavity coefficients.
class ScatterMode {
 public:
  static ScatterMode ideal();
  /// Throws std::invalid_argument when the coefficients carry an imaginary part
  /// (off-resonant input); the realistic rules are stated in magnitudes.
  static ScatterMode realistic(const ScatterCoefficients &coefficients);
  /// realistic(resonant_coefficients(g, kappa_s, gamma)).
  static ScatterMode realistic(double g, double kappa_s, double gamma);

  bool is_ideal() const { return ideal_; }
  const ScatterCoefficients &coefficients() const { return coefficients_; }

  /// 8x8 map over (polarization, direction, spin), index pol*4 + dir*2 + spin.
  const Eigen::Matrix<Complex, 8, 8> &matrix() const { return matrix_; }

 private:
  ScatterMode(bool ideal, ScatterCoefficients c);

  bool ideal_;
  ScatterCoefficients coefficients_;
  Eigen::Matrix<Complex, 8, 8> matrix_;
};

/// Spin-cavity scattering of one photon. The photon must carry polarization and
/// direction, and the state must hold the spin.
JointState spin_cavity_scatter(const JointState &state, int photon, const ScatterMode &mode);

/// Polarization Hadamard: R -> (R + L)/sqrt2, L -> (R - L)/sqrt2.
JointState half_wave_plate(const JointState &state, int photon);

/// R <-> H, L <-> V. Pure relabeling.
JointState relabel_linear_basis(const JointState &state, int photon);
JointState relabel_circular_basis(const JointState &state, int photon);

/// Output direction for each (polarization, input direction), indexed
/// pol*2 + dir. The map must be a bijection on (polarization, direction) pairs.
struct PortMap {
  std::array<Dir, 4> out;

  /// R keeps its path, L switches.
  static PortMap circular_splitter();
  void validate() const;
};

JointState circular_pbs(const JointState &state, int photon, const PortMap &ports = PortMap::circular_splitter());

/// |up> -> (|up> + |down>)/sqrt2, |down> -> (|up> - |down>)/sqrt2.
JointState spin_hadamard(const JointState &state);

/// Z in the {R, L} eigenbasis: the L amplitude flips sign.
JointState pauli_z(const JointState &state, int photon);

/// 2x2 matrices shared by the elements above.
Eigen::Matrix2cd hadamard_matrix();
Eigen::Matrix2cd pauli_z_matrix();

}  // namespace qdcav
