#include "qdcav/fidelity.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qdcav {

namespace {

void require(bool ok, const char *what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

// Lossless probability of each CNOT spin result.
constexpr double kCnotNominalProbability = 0.5;

double outcome_fidelity(const OutcomeRecord &outcome, const JointState &reference, Normalization normalization,
                        double nominal_probability) {
  if (normalization == Normalization::conditioned) {
    if (outcome.probability < kNegligibleProbability) {
      return 0.0;
    }
    return state_fidelity(outcome.conditioned_state, reference, normalization);
  }
  const JointState achieved = outcome.conditioned_state.scaled(std::sqrt(outcome.probability / nominal_probability));
  return state_fidelity(achieved, reference, normalization);
}

Lin parse_lin(char c) { return c == 'H' ? Lin::H : Lin::V; }

}  // namespace

std::string to_string(Normalization n) { return n == Normalization::conditioned ? "conditioned" : "raw"; }

std::string to_string(OutcomeHandling h) { return h == OutcomeHandling::per_outcome ? "per-outcome" : "weighted"; }

std::string to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::cnot_up:
      return "cnot_up";
    case SweepQuantity::cnot_down:
      return "cnot_down";
    case SweepQuantity::swap:
      return "swap";
  }
  return "?";
}

std::string to_string(F2Convention c) { return c == F2Convention::as_printed ? "as-printed" : "complement"; }

double state_fidelity(const JointState &achieved, const JointState &reference, Normalization normalization) {
  const double overlap = std::norm(inner_product(reference, achieved));
  if (normalization == Normalization::raw) {
    return overlap;
  }
  const double n2 = achieved.norm2();
  if (n2 <= 0.0) {
    throw std::domain_error("conditioned fidelity of a zero-norm state is undefined");
  }
  return overlap / n2;
}

CnotFidelity cnot_fidelity(const CnotInput &input, const ScatterMode &mode, Normalization normalization) {
  const ProtocolResult result = run_cnot(input, mode);
  const JointState reference = ideal_cnot_reference(input);
  CnotFidelity f;
  double weighted_num = 0.0;
  double weighted_den = 0.0;
  for (const auto &outcome : result.outcomes) {
    const double value = outcome_fidelity(outcome, reference, normalization, kCnotNominalProbability);
    (outcome.outcome_label == "up" ? f.up : f.down) = value;
    if (normalization == Normalization::conditioned) {
      weighted_num += outcome.probability * value;
      weighted_den += outcome.probability;
    } else {
      weighted_num += kCnotNominalProbability * value;
      weighted_den += kCnotNominalProbability;
    }
  }
  f.weighted = weighted_den < kNegligibleProbability ? 0.0 : weighted_num / weighted_den;
  return f;
}

CnotFidelity average_cnot_fidelity(const ScatterMode &mode, Normalization normalization, int grid_n) {
  require(grid_n >= kMinGridN, "grid_n must be at least 9 for an exact periodic rule");
  CnotFidelity sum;
  const double step = 2.0 * std::numbers::pi / grid_n;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const CnotFidelity f = cnot_fidelity(CnotInput::from_angles(i * step, j * step), mode, normalization);
      sum.up += f.up;
      sum.down += f.down;
      sum.weighted += f.weighted;
    }
  }
  const double inv = 1.0 / (static_cast<double>(grid_n) * grid_n);
  return {sum.up * inv, sum.down * inv, sum.weighted * inv};
}

double swap_fidelity(const ScatterMode &mode, Normalization normalization) {
  return state_fidelity(run_entanglement_swap(mode).raw_final_state, ideal_swap_reference(), normalization);
}

std::vector<SwapOutcomeFidelity> swap_outcome_fidelities(const ScatterMode &mode) {
  const ProtocolResult result = run_entanglement_swap(mode);
  std::vector<SwapOutcomeFidelity> out;
  for (const auto &outcome : result.outcomes) {
    // Labels read "<H|V>1 <H|V>3 <+|->".
    const std::string &label = outcome.outcome_label;
    const BellKind kind = heralded_bell(parse_lin(label[0]), parse_lin(label[3]), label.back() == '+');
    const double f = outcome.probability >= kNegligibleProbability
                         ? state_fidelity(outcome.conditioned_state, bell_state(2, 4, kind), Normalization::conditioned)
                         : 0.0;
    out.push_back({label, outcome.probability, kind, f});
  }
  return out;
}

void SweepSpec::validate() const {
  for (const AxisRange *r : {&kappa_s, &g}) {
    require(std::isfinite(r->lo) && std::isfinite(r->hi), "sweep range bounds must be finite");
    require(r->lo <= r->hi, "sweep range must satisfy lo <= hi");
    require(r->lo >= 0.0, "sweep ranges cover non-negative rates only");
  }
  require(resolution >= 2, "sweep resolution must be at least 2");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(grid_n >= kMinGridN, "grid_n must be at least 9 for an exact periodic rule");
}

std::vector<double> axis_points(const AxisRange &range, int resolution) {
  if (range.lo == range.hi) {
    return {range.lo};
  }
  std::vector<double> pts(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    pts[static_cast<std::size_t>(i)] = range.lo + (range.hi - range.lo) * i / (resolution - 1);
  }
  pts.back() = range.hi;
  return pts;
}

double sweep_point(SweepQuantity quantity, double kappa_s, double g, double gamma, Normalization normalization,
                   int grid_n) {
  const ScatterMode mode = ScatterMode::realistic(g, kappa_s, gamma);
  switch (quantity) {
    case SweepQuantity::cnot_up:
      return average_cnot_fidelity(mode, normalization, grid_n).up;
    case SweepQuantity::cnot_down:
      return average_cnot_fidelity(mode, normalization, grid_n).down;
    case SweepQuantity::swap:
      return swap_fidelity(mode, normalization);
  }
  throw std::invalid_argument("unknown sweep quantity");
}

SweepTable sweep(const SweepSpec &spec) {
  spec.validate();
  const auto ks = axis_points(spec.kappa_s, spec.resolution);
  const auto gs = axis_points(spec.g, spec.resolution);

  SweepTable table{spec, ks.size(), gs.size(), {}};
  table.rows.resize(ks.size() * gs.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      table.rows[i * gs.size() + j] = {ks[i], gs[j], 0.0};
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < table.rows.size(); k = next.fetch_add(1)) {
      SweepRow &row = table.rows[k];
      row.fidelity = sweep_point(spec.quantity, row.kappa_s_over_kappa, row.g_over_kappa, spec.gamma,
                                 spec.normalization, spec.grid_n);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(table.rows.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  return table;
}

void TimingParams::validate() const {
  for (double v : {T_e, delta_t, tau, T_c, n0}) {
    require(std::isfinite(v) && v > 0.0, "timing parameters must be strictly positive");
  }
}

DecoherenceFactors decoherence_factors(const TimingParams &t, F2Convention f2_convention) {
  t.validate();
  DecoherenceFactors d;
  d.f1 = 0.5 * (1.0 + std::exp(-t.delta_t / t.T_e));
  const double decay = std::exp(-t.tau / t.T_c);
  d.f2 = f2_convention == F2Convention::as_printed ? -std::expm1(-t.tau / t.T_c) : decay;
  return d;
}

double critical_photon_number(double gamma_over_kappa, double g_over_kappa) {
  require(std::isfinite(g_over_kappa) && g_over_kappa > 0.0, "g must be > 0 for the critical photon number");
  require(std::isfinite(gamma_over_kappa) && gamma_over_kappa > 0.0, "gamma must be > 0");
  return gamma_over_kappa * gamma_over_kappa / (2.0 * g_over_kappa * g_over_kappa);
}

double photon_interval(double tau, double n0) {
  require(std::isfinite(tau) && tau > 0.0, "tau must be > 0");
  require(std::isfinite(n0) && n0 > 0.0, "n0 must be > 0");
  return tau / n0;
}

TimingEstimate timing_estimates(double gamma_over_kappa, double g_over_kappa, double tau) {
  const double n0 = critical_photon_number(gamma_over_kappa, g_over_kappa);
  return {n0, photon_interval(tau, n0)};
}

std::span<const ReferencePoint> reference_points() {
  static const ReferencePoint points[] = {
      {ReferenceProtocol::cnot, 0.5, 2.5, 0.1, 0.9374},
      {ReferenceProtocol::cnot, 1.0, 0.45, 0.1, 0.7109},
      {ReferenceProtocol::swap, 0.5, 2.5, 0.1, 0.9371},
      {ReferenceProtocol::swap, 1.0, 0.45, 0.1, 0.7034},
  };
  return points;
}

CalibrationReport calibrate_convention(int grid_n) {
  CalibrationReport report;
  const auto points = reference_points();
  for (Normalization n : {Normalization::conditioned, Normalization::raw}) {
    // Fidelities depend on the normalization only; evaluate once per point.
    std::vector<CnotFidelity> cnot(points.size());
    std::vector<double> swap(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto &p = points[k];
      const ScatterMode mode = ScatterMode::realistic(p.g, p.kappa_s, p.gamma);
      if (p.protocol == ReferenceProtocol::cnot) {
        cnot[k] = average_cnot_fidelity(mode, n, grid_n);
      } else {
        swap[k] = swap_fidelity(mode, n);
      }
    }
    for (OutcomeHandling h : {OutcomeHandling::per_outcome, OutcomeHandling::weighted}) {
      CalibrationCandidate c{{n, h}, {}, {}, 0.0};
      for (std::size_t k = 0; k < points.size(); ++k) {
        const auto &p = points[k];
        double value = swap[k];
        if (p.protocol == ReferenceProtocol::cnot) {
          if (h == OutcomeHandling::weighted) {
            value = cnot[k].weighted;
          } else {
            value = std::abs(cnot[k].up - p.target) >= std::abs(cnot[k].down - p.target) ? cnot[k].up : cnot[k].down;
          }
        }
        c.values.push_back(value);
        c.residuals.push_back(value - p.target);
        c.max_abs_residual = std::max(c.max_abs_residual, std::abs(value - p.target));
      }
      report.candidates.push_back(std::move(c));
    }
  }
  for (std::size_t i = 1; i < report.candidates.size(); ++i) {
    if (report.candidates[i].max_abs_residual < report.candidates[report.selected].max_abs_residual) {
      report.selected = i;
    }
  }
  return report;
}

}  // namespace qdcav
