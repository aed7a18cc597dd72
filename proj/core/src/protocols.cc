#include "qdcav/protocols.h"

#include <cmath>
#include <stdexcept>

namespace qdcav {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// One photon through c-PBS -> cavity -> c-PBS. The photon enters down-going;
// afterwards its direction is a function of polarization only and is dropped.
JointState route_through_cavity(JointState state, int photon, const ScatterMode &mode) {
  state = circular_pbs(state, photon);
  state = spin_cavity_scatter(state, photon, mode);
  state = circular_pbs(state, photon);
  return drop_determined(state, dir(photon));
}

}  // namespace

CnotInput CnotInput::from_angles(double theta1, double theta2) {
  return {std::cos(theta1), std::sin(theta1), std::cos(theta2), std::sin(theta2)};
}

void CnotInput::validate() const {
  const double n1 = std::norm(alpha) + std::norm(beta);
  const double n2 = std::norm(delta) + std::norm(gamma_amp);
  if (std::abs(n1 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("control photon amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("target photon amplitudes must satisfy |delta|^2 + |gamma|^2 = 1");
  }
}

std::vector<BasisElement> spin_z_basis() { return {{"up", {1.0, 0.0}}, {"down", {0.0, 1.0}}}; }

std::vector<BasisElement> spin_x_basis() {
  return {{"+", {kInvSqrt2, kInvSqrt2}}, {"-", {kInvSqrt2, -kInvSqrt2}}};
}

std::vector<BasisElement> linear_pol_basis() { return {{"H", {1.0, 0.0}}, {"V", {0.0, 1.0}}}; }

ProtocolResult run_cnot(const CnotInput &input, const ScatterMode &mode) {
  input.validate();
  JointState state = tensor(
      tensor(JointState::photon(1, input.alpha, input.beta, Dir::down),
             JointState::photon(2, input.delta, input.gamma_amp, Dir::down)),
      JointState::spin(kInvSqrt2, -kInvSqrt2));

  state = half_wave_plate(state, 1);
  state = route_through_cavity(state, 1, mode);
  state = half_wave_plate(state, 1);
  state = spin_hadamard(state);
  state = route_through_cavity(state, 2, mode);
  state = spin_hadamard(state);

  ProtocolResult result{{}, 0.0, state};
  const DegreeRef spin_target[] = {spin_dof()};
  for (const auto &element : spin_z_basis()) {
    JointState photons = contract(state, spin_target, element.ket);
    if (element.label == "up") {
      photons = pauli_z(photons, 1);
    }
    const double p = photons.norm2();
    result.success_probability += p;
    result.outcomes.push_back({element.label, p, p > 0.0 ? photons.normalized() : photons});
  }
  return result;
}

ProtocolResult run_entanglement_swap(const ScatterMode &mode) {
  JointState state = tensor(tensor(bell_state(1, 2, BellKind::phi_plus), bell_state(3, 4, BellKind::phi_plus)),
                            JointState::spin(kInvSqrt2, kInvSqrt2));

  for (int photon : {1, 3}) {
    state = tensor(state, JointState({{DegreeKind::direction, photon}}, {0.0, 1.0}));
    state = half_wave_plate(state, photon);
    state = route_through_cavity(state, photon, mode);
    state = relabel_linear_basis(state, photon);
  }

  ProtocolResult result{{}, 0.0, state};
  const DegreeRef spin_target[] = {spin_dof()};
  const DegreeRef photon1_target[] = {pol(1)};
  const DegreeRef photon3_target[] = {pol(3)};
  for (const auto &s : spin_x_basis()) {
    const JointState after_spin = contract(state, spin_target, s.ket);
    for (const auto &p1 : linear_pol_basis()) {
      const JointState after_p1 = contract(after_spin, photon1_target, p1.ket);
      for (const auto &p3 : linear_pol_basis()) {
        JointState photons = contract(after_p1, photon3_target, p3.ket);
        const double p = photons.norm2();
        result.success_probability += p;
        result.outcomes.push_back(
            {p1.label + "1 " + p3.label + "3 " + s.label, p, p > 0.0 ? photons.normalized() : photons});
      }
    }
  }
  return result;
}

JointState ideal_swap_reference() {
  // Terms of the ideal output, each (photon 1, photon 3) x spin x (photon 2, photon 4)
  // with relative weight 1/4 on unnormalized kets.
  struct Term {
    double sign;
    std::vector<Complex> p13;  // over (H/V)1 (H/V)3
    bool spin_plus;
    std::vector<Complex> p24;  // over (R/L)2 (R/L)4
  };
  const std::vector<Term> terms = {
      {+1.0, {1, 0, 0, -1}, false, {0, 1, 1, 0}},
      {+1.0, {1, 0, 0, 1}, true, {1, 0, 0, 1}},
      {+1.0, {0, 1, 1, 0}, true, {1, 0, 0, -1}},
      {-1.0, {0, 1, -1, 0}, false, {0, 1, -1, 0}},
  };
  std::vector<Complex> amps(32);
  // Canonical order: pol1, pol2, pol3, pol4, spin.
  for (const auto &term : terms) {
    const Complex spin_up = kInvSqrt2;
    const Complex spin_down = term.spin_plus ? kInvSqrt2 : -kInvSqrt2;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 2; ++c) {
          for (int d = 0; d < 2; ++d) {
            const Complex w = 0.25 * term.sign * term.p13[a * 2 + c] * term.p24[b * 2 + d];
            const int base = (a << 4) | (b << 3) | (c << 2) | (d << 1);
            amps[base] += w * spin_up;
            amps[base | 1] += w * spin_down;
          }
        }
      }
    }
  }
  return JointState({{DegreeKind::polarization, 1, PolBasis::linear},
                     {DegreeKind::polarization, 2},
                     {DegreeKind::polarization, 3, PolBasis::linear},
                     {DegreeKind::polarization, 4},
                     {DegreeKind::spin, 0}},
                    std::move(amps));
}

JointState ideal_cnot_reference(const CnotInput &input) {
  input.validate();
  const Complex a = input.alpha, b = input.beta, d = input.delta, g = input.gamma_amp;
  // Index pol1*2 + pol2 with R = 0, L = 1.
  return JointState({{DegreeKind::polarization, 1}, {DegreeKind::polarization, 2}},
                    {a * d, a * g, b * g, b * d});
}

JointState bell_state(int first, int second, BellKind kind) {
  std::vector<Complex> amps(4);
  const double s = kInvSqrt2;
  switch (kind) {
    case BellKind::phi_plus:
      amps = {s, 0.0, 0.0, s};
      break;
    case BellKind::phi_minus:
      amps = {s, 0.0, 0.0, -s};
      break;
    case BellKind::psi_plus:
      amps = {0.0, s, s, 0.0};
      break;
    case BellKind::psi_minus:
      amps = {0.0, s, -s, 0.0};
      break;
  }
  return JointState({{DegreeKind::polarization, first}, {DegreeKind::polarization, second}}, std::move(amps));
}

BellKind heralded_bell(Lin photon1, Lin photon3, bool spin_plus) {
  const bool same = photon1 == photon3;
  if (spin_plus) {
    return same ? BellKind::phi_plus : BellKind::phi_minus;
  }
  return same ? BellKind::psi_plus : BellKind::psi_minus;
}

}  // namespace qdcav
