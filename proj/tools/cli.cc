#include "cli.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdcav/cavity.h"
#include "qdcav/elements.h"
#include "qdcav/fidelity.h"
#include "qdcav/protocols.h"

namespace qdcav::cli {

namespace {

using nlohmann::json;

/// Fifteen significant digits: the precision shared by every output format.
std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string num(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
  return buf;
}

/// JSON numbers are parsed back from the printed text so both formats agree digit for digit.
json jnum(double x) { return json::parse(num(x)); }

json jcomplex(Complex z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

Complex parse_complex(const std::string &text, const char *name) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error &) {
    throw std::invalid_argument(std::string(name) + " must read 're' or 're,im', got '" + text + "'");
  }
}

AxisRange parse_range(const std::string &text, const char *name) {
  auto sep = text.find(',');
  if (sep == std::string::npos) sep = text.find(':');
  if (sep == std::string::npos) {
    throw std::invalid_argument(std::string(name) + " must read 'lo,hi', got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, sep), b = text.substr(sep + 1);
    AxisRange r;
    r.lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    r.hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error &) {
    throw std::invalid_argument(std::string(name) + " must read 'lo,hi', got '" + text + "'");
  }
}

std::string bell_name(BellKind k) {
  switch (k) {
    case BellKind::phi_plus:
      return "phi+";
    case BellKind::phi_minus:
      return "phi-";
    case BellKind::psi_plus:
      return "psi+";
    case BellKind::psi_minus:
      return "psi-";
  }
  return "?";
}

struct RunConfig {
  std::string subcommand;
  CavityParams params;
  std::string mode = "realistic";
  Normalization normalization = kDefaultConvention.normalization;
  OutcomeHandling outcome_handling = kDefaultConvention.outcome_handling;
  F2Convention f2_convention = F2Convention::as_printed;
  int grid_n = kDefaultGridN;
  std::string range_ks = "0,2";
  std::string range_g = "0,3";
  int resolution = 101;
  SweepQuantity quantity = SweepQuantity::swap;
  unsigned threads = 1;
  std::string format;
  std::string out;
  std::string alpha = "1", beta = "0", delta = "1", gamma_amp = "0";
  TimingParams timing;
  std::optional<double> n0;
  std::optional<double> delta_t;

  ScatterMode scatter_mode() const {
    if (mode == "ideal") return ScatterMode::ideal();
    params.validate();
    return ScatterMode::realistic(scatter_coefficients(params));
  }
};

// Each command fills either `text` or `doc`, depending on the format.
struct Output {
  std::string format;
  std::ostringstream text;
  json doc = json::object();
};

void cmd_coeffs(const RunConfig &cfg, Output &o) {
  cfg.params.validate();
  const ScatterCoefficients c = cfg.mode == "ideal" ? ScatterMode::ideal().coefficients() : scatter_coefficients(cfg.params);
  const double res = std::abs(c.r - c.t - 1.0);
  const double res0 = std::abs(c.r0 - c.t0 - 1.0);
  if (o.format == "json") {
    o.doc = {{"mode", cfg.mode},        {"r", jcomplex(c.r)},   {"t", jcomplex(c.t)},
             {"r0", jcomplex(c.r0)},    {"t0", jcomplex(c.t0)}, {"residual_r_minus_t_minus_1", jnum(res)},
             {"residual_r0_minus_t0_minus_1", jnum(res0)}};
    return;
  }
  o.text << "r  = " << num(c.r) << "\n"
         << "t  = " << num(c.t) << "\n"
         << "r0 = " << num(c.r0) << "\n"
         << "t0 = " << num(c.t0) << "\n"
         << "|r - t - 1|   = " << num(res) << "\n"
         << "|r0 - t0 - 1| = " << num(res0) << "\n";
}

std::string basis_name(int index) {
  static const char *pol[] = {"R", "L"};
  static const char *dir[] = {"up", "down"};
  static const char *spin[] = {"spin-up", "spin-down"};
  return std::string(pol[index >> 2]) + " " + dir[(index >> 1) & 1] + " " + spin[index & 1];
}

void cmd_scatter(const RunConfig &cfg, Output &o) {
  const ScatterMode mode = cfg.scatter_mode();
  const auto &m = mode.matrix();
  json rows = json::array();
  for (int in = 0; in < 8; ++in) {
    json outs = json::array();
    std::string line = basis_name(in) + " ->";
    for (int k = 0; k < 8; ++k) {
      if (std::abs(m(k, in)) == 0.0) continue;
      outs.push_back({{"output", basis_name(k)}, {"amplitude", jcomplex(m(k, in))}});
      line += "  " + num(m(k, in)) + " |" + basis_name(k) + ">";
    }
    rows.push_back({{"input", basis_name(in)}, {"outputs", outs}});
    o.text << line << "\n";
  }
  o.doc = {{"mode", cfg.mode}, {"rows", rows}};
}

void cmd_cnot(const RunConfig &cfg, Output &o) {
  CnotInput input{parse_complex(cfg.alpha, "--alpha"), parse_complex(cfg.beta, "--beta"),
                  parse_complex(cfg.delta, "--delta"), parse_complex(cfg.gamma_amp, "--gamma-amp")};
  input.validate();
  const ScatterMode mode = cfg.scatter_mode();
  const ProtocolResult result = run_cnot(input, mode);
  const CnotFidelity f = cnot_fidelity(input, mode, cfg.normalization);

  static const char *basis[] = {"RR", "RL", "LR", "LL"};
  json outcomes = json::array();
  o.text << "normalization: " << to_string(cfg.normalization) << "\n";
  o.text << "outcome  probability  fidelity  state[RR RL LR LL]\n";
  for (const auto &rec : result.outcomes) {
    const double fid = rec.outcome_label == "up" ? f.up : f.down;
    json amps = json::object();
    o.text << rec.outcome_label << "  " << num(rec.probability) << "  " << num(fid) << " ";
    const auto a = rec.conditioned_state.amplitudes();
    for (std::size_t k = 0; k < a.size(); ++k) {
      amps[basis[k]] = jcomplex(a[k]);
      o.text << " " << num(a[k]);
    }
    o.text << "\n";
    outcomes.push_back(
        {{"spin", rec.outcome_label}, {"probability", jnum(rec.probability)}, {"fidelity", jnum(fid)}, {"state", amps}});
  }
  o.text << "success probability: " << num(result.success_probability) << "\n";
  if (cfg.outcome_handling == OutcomeHandling::weighted) {
    o.text << "fidelity (weighted): " << num(f.weighted) << "\n";
  }
  o.doc = {{"mode", cfg.mode},
           {"normalization", to_string(cfg.normalization)},
           {"outcomes", outcomes},
           {"success_probability", jnum(result.success_probability)},
           {"weighted_fidelity", jnum(f.weighted)}};
}

void cmd_swap(const RunConfig &cfg, Output &o) {
  const ScatterMode mode = cfg.scatter_mode();
  const double fid = swap_fidelity(mode, cfg.normalization);
  const auto outcomes = swap_outcome_fidelities(mode);
  json rows = json::array();
  o.text << "outcome  probability  heralded  fidelity\n";
  for (const auto &rec : outcomes) {
    o.text << rec.label << "  " << num(rec.probability) << "  " << bell_name(rec.expected) << "  " << num(rec.fidelity)
           << "\n";
    rows.push_back({{"outcome", rec.label},
                    {"probability", jnum(rec.probability)},
                    {"heralded", bell_name(rec.expected)},
                    {"fidelity", jnum(rec.fidelity)}});
  }
  o.text << "fidelity (" << to_string(cfg.normalization) << "): " << num(fid) << "\n";
  o.doc = {{"mode", cfg.mode},
           {"normalization", to_string(cfg.normalization)},
           {"fidelity", jnum(fid)},
           {"outcomes", rows}};
}

void cmd_avg_fidelity(const RunConfig &cfg, Output &o) {
  const CnotFidelity f = average_cnot_fidelity(cfg.scatter_mode(), cfg.normalization, cfg.grid_n);
  o.doc = {{"mode", cfg.mode},
           {"normalization", to_string(cfg.normalization)},
           {"outcome_handling", to_string(cfg.outcome_handling)},
           {"grid_n", cfg.grid_n}};
  o.text << "normalization: " << to_string(cfg.normalization) << ", grid_n: " << cfg.grid_n << "\n";
  if (cfg.outcome_handling == OutcomeHandling::weighted) {
    o.doc["fidelity"] = jnum(f.weighted);
    o.text << "fidelity: " << num(f.weighted) << "\n";
  } else {
    o.doc["fidelity_up"] = jnum(f.up);
    o.doc["fidelity_down"] = jnum(f.down);
    o.text << "fidelity (spin up):   " << num(f.up) << "\n"
           << "fidelity (spin down): " << num(f.down) << "\n";
  }
}

void cmd_sweep(const RunConfig &cfg, Output &o) {
  if (cfg.mode == "ideal") {
    throw std::invalid_argument("sweep scans the realistic cavity; --mode ideal is not meaningful here");
  }
  if (cfg.params.detuning_c != 0.0 || cfg.params.detuning_x != 0.0) {
    throw std::invalid_argument("sweep runs on resonance; detunings must be 0");
  }
  SweepSpec spec;
  spec.quantity = cfg.quantity;
  spec.kappa_s = parse_range(cfg.range_ks, "--range-ks");
  spec.g = parse_range(cfg.range_g, "--range-g");
  spec.resolution = cfg.resolution;
  spec.gamma = cfg.params.gamma;
  spec.normalization = cfg.normalization;
  spec.grid_n = cfg.grid_n;
  spec.threads = cfg.threads;
  const SweepTable table = sweep(spec);

  if (o.format == "json") {
    json rows = json::array();
    for (const auto &r : table.rows) {
      rows.push_back({{"kappa_s_over_kappa", jnum(r.kappa_s_over_kappa)},
                      {"g_over_kappa", jnum(r.g_over_kappa)},
                      {"fidelity", jnum(r.fidelity)}});
    }
    o.doc = {{"quantity", to_string(spec.quantity)},
             {"normalization", to_string(spec.normalization)},
             {"gamma_over_kappa", jnum(spec.gamma)},
             {"grid_n", spec.grid_n},
             {"kappa_s_points", table.kappa_s_points},
             {"g_points", table.g_points},
             {"rows", rows}};
    return;
  }
  o.text << "kappa_s_over_kappa,g_over_kappa,fidelity\n";
  for (const auto &r : table.rows) {
    o.text << num(r.kappa_s_over_kappa) << "," << num(r.g_over_kappa) << "," << num(r.fidelity) << "\n";
  }
}

void cmd_timing(const RunConfig &cfg, Output &o) {
  TimingParams t = cfg.timing;
  t.n0 = cfg.n0 ? *cfg.n0 : critical_photon_number(cfg.params.gamma, cfg.params.g);
  t.delta_t = cfg.delta_t ? *cfg.delta_t : photon_interval(t.tau, t.n0);
  const DecoherenceFactors d = decoherence_factors(t, cfg.f2_convention);
  const DecoherenceFactors printed = decoherence_factors(t, F2Convention::as_printed);
  const DecoherenceFactors comp = decoherence_factors(t, F2Convention::complement);
  // n0 quoted to one significant figure, as such estimates usually are.
  const double n0_rounded = std::stod([&] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0e", t.n0);
    return std::string(buf);
  }());
  const double dt_rounded = photon_interval(t.tau, n0_rounded);

  o.doc = {{"n0", jnum(t.n0)},
           {"n0_one_significant_figure", jnum(n0_rounded)},
           {"tau_s", jnum(t.tau)},
           {"delta_t_s", jnum(t.delta_t)},
           {"delta_t_at_rounded_n0_s", jnum(dt_rounded)},
           {"T_e_s", jnum(t.T_e)},
           {"T_c_s", jnum(t.T_c)},
           {"f1", jnum(d.f1)},
           {"f2", jnum(d.f2)},
           {"f2_convention", to_string(cfg.f2_convention)},
           {"f2_as_printed", jnum(printed.f2)},
           {"f2_complement", jnum(comp.f2)}};
  o.text << "n0 = " << num(t.n0) << " (" << num(n0_rounded) << " to one significant figure)\n"
         << "delta_t = " << num(t.delta_t) << " s (" << num(dt_rounded) << " s at the rounded n0)\n"
         << "F1' = " << num(d.f1) << "\n"
         << "F2' = " << num(d.f2) << " [" << to_string(cfg.f2_convention) << "]\n"
         << "F2' as-printed = " << num(printed.f2) << ", complement = " << num(comp.f2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{
      "qdcav: spin-cavity photonic gates.\n"
      "Rates (g, kappa-s, gamma, detunings) are dimensionless ratios to the cavity decay rate kappa.\n"
      "Times (tau, t-e, t-c, delta-t) are in seconds.",
      "qdcav"};
  app.set_help_all_flag("--help-all", "Expand help for every subcommand");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Plain key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  std::string normalization = to_string(cfg.normalization);
  std::string outcome_handling = to_string(cfg.outcome_handling);
  std::string f2 = to_string(cfg.f2_convention);
  std::string quantity = to_string(cfg.quantity);
  double n0 = 0.0, delta_t = 0.0;

  app.add_option("--g", cfg.params.g, "QD-cavity coupling g/kappa")->capture_default_str();
  app.add_option("--kappa-s", cfg.params.kappa_s, "Side leakage kappa_s/kappa")->capture_default_str();
  app.add_option("--gamma", cfg.params.gamma, "Dipole decay gamma/kappa")->capture_default_str();
  app.add_option("--detuning-c", cfg.params.detuning_c, "(omega_c - omega)/kappa")->capture_default_str();
  app.add_option("--detuning-x", cfg.params.detuning_x, "(omega_X - omega)/kappa")->capture_default_str();
  app.add_option("--mode", cfg.mode, "Scattering rules")
      ->check(CLI::IsMember({"ideal", "realistic"}))
      ->capture_default_str();
  app.add_option("--normalization", normalization, "Fidelity normalization")
      ->check(CLI::IsMember({"conditioned", "raw"}))
      ->capture_default_str();
  app.add_option("--outcome-handling", outcome_handling, "CNOT spin outcomes")
      ->check(CLI::IsMember({"per-outcome", "weighted"}))
      ->capture_default_str();
  app.add_option("--f2-convention", f2, "Trion dephasing factor")
      ->check(CLI::IsMember({"as-printed", "complement"}))
      ->capture_default_str();
  app.add_option("--grid-n", cfg.grid_n, "Quadrature points per input angle")->capture_default_str();
  app.add_option("--range-ks", cfg.range_ks, "Sweep range of kappa_s/kappa, 'lo,hi'")->capture_default_str();
  app.add_option("--range-g", cfg.range_g, "Sweep range of g/kappa, 'lo,hi'")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Sweep points per axis")->capture_default_str();
  app.add_option("--quantity", quantity, "Swept fidelity")
      ->check(CLI::IsMember({"cnot_up", "cnot_down", "swap"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Sweep worker threads")->capture_default_str();
  app.add_option("--format", cfg.format, "text|json, or csv|json for sweep (default text / csv)")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", cfg.out, "Write the result to this file instead of standard output");
  app.add_option("--alpha", cfg.alpha, "Control R amplitude, 're' or 're,im'")->capture_default_str();
  app.add_option("--beta", cfg.beta, "Control L amplitude")->capture_default_str();
  app.add_option("--delta", cfg.delta, "Target R amplitude")->capture_default_str();
  app.add_option("--gamma-amp", cfg.gamma_amp, "Target L amplitude")->capture_default_str();
  app.add_option("--tau", cfg.timing.tau, "Cavity photon lifetime [s]")->capture_default_str();
  app.add_option("--t-e", cfg.timing.T_e, "Electron spin coherence time [s]")->capture_default_str();
  app.add_option("--t-c", cfg.timing.T_c, "Exciton coherence time [s]")->capture_default_str();
  auto *n0_opt = app.add_option("--n0", n0, "Critical photon number (default gamma^2 / 2g^2)");
  auto *dt_opt = app.add_option("--delta-t", delta_t, "Photon separation [s] (default tau / n0)");

  const std::vector<std::pair<std::string, void (*)(const RunConfig &, Output &)>> commands = {
      {"coeffs", cmd_coeffs},
      {"scatter", cmd_scatter},
      {"cnot", cmd_cnot},
      {"swap", cmd_swap},
      {"avg-fidelity", cmd_avg_fidelity},
      {"sweep", cmd_sweep},
      {"timing", cmd_timing},
  };
  const std::vector<std::string> blurbs = {
      "Reflection/transmission coefficients r, t, r0, t0",
      "Single-photon scattering table over (polarization, direction, spin)",
      "Photonic CNOT on one product input",
      "Entanglement swapping between pairs (1,2) and (3,4)",
      "CNOT fidelity averaged over real product inputs",
      "Fidelity over a kappa_s x g grid (CSV or JSON table)",
      "Critical photon number, photon spacing and decoherence factors",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    app.add_subcommand(commands[i].first, blurbs[i]);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  try {
    cfg.normalization = normalization == "raw" ? Normalization::raw : Normalization::conditioned;
    cfg.outcome_handling = outcome_handling == "per-outcome" ? OutcomeHandling::per_outcome : OutcomeHandling::weighted;
    cfg.f2_convention = f2 == "complement" ? F2Convention::complement : F2Convention::as_printed;
    cfg.quantity = quantity == "cnot_up"     ? SweepQuantity::cnot_up
                   : quantity == "cnot_down" ? SweepQuantity::cnot_down
                                             : SweepQuantity::swap;
    if (n0_opt->count() > 0) cfg.n0 = n0;
    if (dt_opt->count() > 0) cfg.delta_t = delta_t;

    auto *sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    Output o;
    o.format = cfg.format.empty() ? (cfg.subcommand == "sweep" ? "csv" : "text") : cfg.format;
    if (o.format == "csv" && cfg.subcommand != "sweep") {
      throw std::invalid_argument("--format csv is only available for sweep");
    }
    if (o.format == "text" && cfg.subcommand == "sweep") {
      o.format = "csv";
    }
    for (const auto &[name, fn] : commands) {
      if (name == cfg.subcommand) fn(cfg, o);
    }

    const std::string payload = o.format == "json" ? o.doc.dump(2) + "\n" : o.text.str();
    if (cfg.out.empty()) {
      out << payload;
    } else {
      std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
      file << payload;
      if (!file.flush()) throw std::runtime_error("failed writing '" + cfg.out + "'");
      out << "wrote " << cfg.out << "\n";
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qdcav::cli
