#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdcav/elements.h"
#include "qdcav/protocols.h"
#include "qdcav/state.h"

namespace qdcav {

enum class Normalization {
  conditioned,  ///< renormalize the achieved state before the overlap
  raw,          ///< keep the loss in the achieved state
};

enum class OutcomeHandling {
  per_outcome,  ///< one fidelity per spin result
  weighted,     ///< probability-weighted over spin results
};

struct FidelityConvention {
  Normalization normalization = Normalization::conditioned;
  OutcomeHandling outcome_handling = OutcomeHandling::weighted;

  bool operator==(const FidelityConvention &) const = default;
};

/// Convention selected by calibrate_convention() against the reference values.
inline constexpr FidelityConvention kDefaultConvention{Normalization::conditioned, OutcomeHandling::weighted};

/// Periodic rectangle rule points per angle.
inline constexpr int kDefaultGridN = 32;
inline constexpr int kMinGridN = 9;

/// Outcomes below this probability (for unit-norm inputs) are treated as never
/// heralded. Under the conditioned convention they score fidelity 0 rather than
/// a ratio of round-off terms.
inline constexpr double kNegligibleProbability = 1e-24;

std::string to_string(Normalization n);
std::string to_string(OutcomeHandling h);

/// conditioned: |<ref|ach>|^2 / <ach|ach>; raw: |<ref|ach>|^2. The reference
/// must be normalized. A zero achieved state under `conditioned` throws
/// std::domain_error.
double state_fidelity(const JointState &achieved, const JointState &reference, Normalization normalization);

/// Per-input fidelities of the CNOT outcomes against the ideal CNOT image.
/// Under `raw` each outcome state is scaled by sqrt(p / p_nominal), where the
/// nominal probability is the lossless one (1/2 per spin result).
struct CnotFidelity {
  double up = 0.0;
  double down = 0.0;
  double weighted = 0.0;
};

CnotFidelity cnot_fidelity(const CnotInput &input, const ScatterMode &mode, Normalization normalization);

/// Average over the real product family (cos t1, sin t1) x (cos t2, sin t2),
/// t1, t2 uniform on [0, 2 pi), with a grid_n x grid_n periodic rectangle rule.
/// Throws std::invalid_argument for grid_n < kMinGridN.
CnotFidelity average_cnot_fidelity(const ScatterMode &mode, Normalization normalization, int grid_n = kDefaultGridN);

/// Overlap of the five-party pre-measurement swap state with the ideal one.
double swap_fidelity(const ScatterMode &mode, Normalization normalization);

struct SwapOutcomeFidelity {
  std::string label;
  double probability = 0.0;
  BellKind expected;
  double fidelity = 0.0;  ///< conditioned overlap with the heralded Bell state
};

/// Per-outcome view of the swap: heralded Bell state of photons 2 and 4.
std::vector<SwapOutcomeFidelity> swap_outcome_fidelities(const ScatterMode &mode);

// Parameter sweeps.

enum class SweepQuantity { cnot_up, cnot_down, swap };

std::string to_string(SweepQuantity q);

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepSpec {
  SweepQuantity quantity = SweepQuantity::swap;
  AxisRange kappa_s{0.0, 2.0};
  AxisRange g{0.0, 3.0};
  int resolution = 101;
  double gamma = 0.1;
  Normalization normalization = kDefaultConvention.normalization;
  int grid_n = kDefaultGridN;
  unsigned threads = 1;

  /// Throws std::invalid_argument on an empty or non-physical range or a
  /// resolution below 2.
  void validate() const;
};

struct SweepRow {
  double kappa_s_over_kappa;
  double g_over_kappa;
  double fidelity;
};

/// Rows ordered row-major: kappa_s outer, g inner.
struct SweepTable {
  SweepSpec spec;
  std::size_t kappa_s_points = 0;
  std::size_t g_points = 0;
  std::vector<SweepRow> rows;

  const SweepRow &at(std::size_t ks_index, std::size_t g_index) const { return rows[ks_index * g_points + g_index]; }
};

/// Evenly spaced points from lo to hi inclusive; a degenerate range (lo == hi)
/// yields the single point.
std::vector<double> axis_points(const AxisRange &range, int resolution);

/// Fidelity at one grid point, as stored in a SweepTable.
double sweep_point(SweepQuantity quantity, double kappa_s, double g, double gamma, Normalization normalization,
                   int grid_n);

/// Evaluates the grid, fanning out over `spec.threads` workers. The table is
/// independent of the thread count.
SweepTable sweep(const SweepSpec &spec);

// Decoherence and timing.

enum class F2Convention {
  as_printed,  ///< F2' = 1 - exp(-tau / T_c)
  complement,  ///< F2' = exp(-tau / T_c)
};

std::string to_string(F2Convention c);

/// All times in seconds.
struct TimingParams {
  double T_e = 3e-6;       ///< electron spin coherence time
  double delta_t = 4.5e-9; ///< interval between the two photons
  double tau = 9e-12;      ///< cavity photon lifetime
  double T_c = 100e-9;     ///< exciton coherence time
  double n0 = 2e-3;        ///< critical photon number

  void validate() const;
};

struct DecoherenceFactors {
  double f1 = 1.0;  ///< spin decoherence: (1 + exp(-delta_t / T_e)) / 2
  double f2 = 1.0;  ///< trion dephasing, per the chosen convention
};

DecoherenceFactors decoherence_factors(const TimingParams &t, F2Convention f2_convention);

struct TimingEstimate {
  double n0;
  double delta_t;
};

/// n0 = gamma^2 / (2 g^2) and delta_t = tau / n0. Throws for g <= 0.
TimingEstimate timing_estimates(double gamma_over_kappa, double g_over_kappa, double tau);
double critical_photon_number(double gamma_over_kappa, double g_over_kappa);
double photon_interval(double tau, double n0);

// Convention calibration.

enum class ReferenceProtocol { cnot, swap };

struct ReferencePoint {
  ReferenceProtocol protocol;
  double kappa_s;
  double g;
  double gamma;
  double target;
};

/// Benchmark fidelities at gamma = 0.1 that the convention is calibrated against.
std::span<const ReferencePoint> reference_points();

struct CalibrationCandidate {
  FidelityConvention convention;
  /// Model value per reference point. For per-outcome CNOT entries this is the
  /// outcome farther from the target.
  std::vector<double> values;
  std::vector<double> residuals;  ///< value - target
  double max_abs_residual = 0.0;
};

struct CalibrationReport {
  std::vector<CalibrationCandidate> candidates;
  std::size_t selected = 0;

  const CalibrationCandidate &best() const { return candidates[selected]; }
};

/// Evaluates every normalization x outcome-handling combination at the
/// reference points and selects the one with the smallest worst-case residual.
CalibrationReport calibrate_convention(int grid_n = kDefaultGridN);

}  // namespace qdcav
