#pragma once

#include <string>
#include <vector>

#include "qdcav/elements.h"
#include "qdcav/state.h"

namespace qdcav {

/// Product input of the CNOT: photon 1 (control) alpha|R> + beta|L>, photon 2
/// (target) delta|R> + gamma_amp|L>.
struct CnotInput {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  Complex delta{1.0, 0.0};
  Complex gamma_amp{0.0, 0.0};

  /// Real-amplitude family (cos t1, sin t1) x (cos t2, sin t2).
  static CnotInput from_angles(double theta1, double theta2);
  /// Throws std::invalid_argument unless both photons are normalized to 1e-12.
  void validate() const;
};

struct ProtocolResult {
  /// Photon-only post-correction states, one record per measurement outcome.
  std::vector<OutcomeRecord> outcomes;
  double success_probability = 0.0;
  /// Pre-measurement state (possibly sub-normalized).
  JointState raw_final_state;
};

/// Photonic CNOT through one spin-cavity unit.
///
/// Sequence: spin prepared in (|up> - |down>)/sqrt2; photon 1 passes
/// HWP -> c-PBS -> cavity -> c-PBS -> HWP; spin Hadamard; photon 2 passes
/// c-PBS -> cavity -> c-PBS; spin Hadamard; spin measured in {up, down}; sigma_z
/// on photon 1 after an `up` result. Both photons enter the c-PBS down-going, so
/// R meets the cavity as R-down and L as L-up; the return pass through the
/// c-PBS brings every component back to the down-going path, which is then
/// dropped.
ProtocolResult run_cnot(const CnotInput &input, const ScatterMode &mode);

/// Entanglement swapping between (1,2) and (3,4), both prepared in
/// (|RR> + |LL>)/sqrt2, with the spin in |+>.
///
/// Photons 1 and 3 each pass HWP1 -> c-PBS -> cavity -> c-PBS, photon 1 first,
/// and are then relabelled into the linear basis (HWP2). The spin is measured in
/// {|+>, |->}, then photon 1 and photon 3 in {H, V}. Outcome labels read like
/// "H1 V3 -" and the conditioned states hold photons 2 and 4.
ProtocolResult run_entanglement_swap(const ScatterMode &mode);

/// alpha|R>1 (delta|R>2 + gamma|L>2) + beta|L>1 (delta|L>2 + gamma|R>2).
JointState ideal_cnot_reference(const CnotInput &input);

/// Normalized five-party output of the ideal swap over photons 1..4 (1 and 3 in
/// the H/V basis) and the spin.
JointState ideal_swap_reference();

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

/// Bell state of two polarization-only photons in the R/L basis.
JointState bell_state(int first, int second, BellKind kind);

/// Bell state of photons 2 and 4 heralded by the swap outcome.
BellKind heralded_bell(Lin photon1, Lin photon3, bool spin_plus);

/// Spin measurement bases used by the protocols.
std::vector<BasisElement> spin_z_basis();
std::vector<BasisElement> spin_x_basis();
std::vector<BasisElement> linear_pol_basis();

}  // namespace qdcav
