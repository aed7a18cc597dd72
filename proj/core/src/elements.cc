#include "qdcav/elements.h"

#include <cmath>
#include <stdexcept>

namespace qdcav {

namespace {

constexpr int kIndex(int pol, int dir, int spin) { return pol * 4 + dir * 2 + spin; }

// A photon couples to the spin when its s_z matches the spin: s_z = +1 for R
// moving up or L moving down (couples to spin up), s_z = -1 otherwise (couples
// to spin down).
bool coupled(int pol, int dir, int spin) {
  const bool plus = (pol == 0) == (dir == 0);
  return plus == (spin == 0);
}

Eigen::Matrix<Complex, 8, 8> build_matrix(double r, double t, double r0, double t0) {
  Eigen::Matrix<Complex, 8, 8> m = Eigen::Matrix<Complex, 8, 8>::Zero();
  for (int p = 0; p < 2; ++p) {
    for (int d = 0; d < 2; ++d) {
      for (int s = 0; s < 2; ++s) {
        const int in = kIndex(p, d, s);
        const int same = in;
        // Reflection flips both the polarization letter and the direction.
        const int reflected = kIndex(1 - p, 1 - d, s);
        if (coupled(p, d, s)) {
          m(reflected, in) += r;
          m(same, in) += t;
        } else {
          m(same, in) += -t0;
          m(reflected, in) += -r0;
        }
      }
    }
  }
  return m;
}

}  // namespace

ScatterMode::ScatterMode(bool ideal, ScatterCoefficients c) : ideal_(ideal), coefficients_(c) {
  matrix_ = build_matrix(std::abs(c.r), std::abs(c.t), std::abs(c.r0), std::abs(c.t0));
}

ScatterMode ScatterMode::ideal() { return ScatterMode(true, {1.0, 0.0, 0.0, -1.0}); }

ScatterMode ScatterMode::realistic(const ScatterCoefficients &coefficients) {
  if (!coefficients.is_real()) {
    throw std::invalid_argument("realistic scattering needs resonant (real) coefficients");
  }
  return ScatterMode(false, coefficients);
}

ScatterMode ScatterMode::realistic(double g, double kappa_s, double gamma) {
  return realistic(resonant_coefficients(g, kappa_s, gamma));
}

JointState spin_cavity_scatter(const JointState &state, int photon, const ScatterMode &mode) {
  return apply_local(state, {pol(photon), dir(photon), spin_dof()}, mode.matrix());
}

Eigen::Matrix2cd hadamard_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd pauli_z_matrix() {
  Eigen::Matrix2cd z;
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

JointState half_wave_plate(const JointState &state, int photon) {
  return apply_local(state, {pol(photon)}, hadamard_matrix());
}

JointState relabel_linear_basis(const JointState &state, int photon) {
  return relabel(state, pol(photon), PolBasis::linear);
}

JointState relabel_circular_basis(const JointState &state, int photon) {
  return relabel(state, pol(photon), PolBasis::circular);
}

PortMap PortMap::circular_splitter() {
  // Indexed pol*2 + dir: R keeps its direction, L switches.
  return {{Dir::up, Dir::down, Dir::down, Dir::up}};
}

void PortMap::validate() const {
  std::array<bool, 4> hit{};
  for (int p = 0; p < 2; ++p) {
    for (int d = 0; d < 2; ++d) {
      const int target = p * 2 + static_cast<int>(out[p * 2 + d]);
      if (hit[target]) {
        throw std::invalid_argument("port map is not a bijection on (polarization, path)");
      }
      hit[target] = true;
    }
  }
}

JointState circular_pbs(const JointState &state, int photon, const PortMap &ports) {
  ports.validate();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int p = 0; p < 2; ++p) {
    for (int d = 0; d < 2; ++d) {
      m(p * 2 + static_cast<int>(ports.out[p * 2 + d]), p * 2 + d) = 1.0;
    }
  }
  return apply_local(state, {pol(photon), dir(photon)}, m);
}

JointState spin_hadamard(const JointState &state) { return apply_local(state, {spin_dof()}, hadamard_matrix()); }

JointState pauli_z(const JointState &state, int photon) {
  return apply_local(state, {pol(photon)}, pauli_z_matrix());
}

}  // namespace qdcav
