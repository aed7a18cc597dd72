#include "qdcav/state.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdcav {

namespace {

// Sort key for canonical order: photons by index (polarization before
// direction), the spin last.
std::pair<long, int> canonical_key(const Degree &d) {
  if (d.kind == DegreeKind::spin) {
    return {std::numeric_limits<long>::max(), 0};
  }
  return {d.photon, d.kind == DegreeKind::polarization ? 0 : 1};
}

std::size_t bit_of(std::size_t index, std::size_t position, std::size_t n) {
  return (index >> (n - 1 - position)) & 1u;
}

std::string degree_name(const Degree &d) {
  switch (d.kind) {
    case DegreeKind::polarization:
      return "pol" + std::to_string(d.photon);
    case DegreeKind::direction:
      return "dir" + std::to_string(d.photon);
    case DegreeKind::spin:
      return "spin";
  }
  return "?";
}

std::string value_name(const Degree &d, std::size_t v) {
  switch (d.kind) {
    case DegreeKind::polarization:
      if (d.basis == PolBasis::linear) {
        return v == 0 ? "H" : "V";
      }
      return v == 0 ? "R" : "L";
    case DegreeKind::direction:
      return v == 0 ? "^" : "v";
    case DegreeKind::spin:
      return v == 0 ? "up" : "down";
  }
  return "?";
}

std::vector<std::size_t> positions_of(const JointState &state, std::span<const DegreeRef> targets) {
  std::vector<std::size_t> pos;
  pos.reserve(targets.size());
  for (const auto &t : targets) {
    std::size_t p = state.position(t);
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
      throw std::invalid_argument("degree targeted twice");
    }
    pos.push_back(p);
  }
  return pos;
}

}  // namespace

std::size_t ModeLabel::dim() const {
  if (kind == Kind::spin) {
    return 2;
  }
  return (has_polarization ? 2 : 1) * (has_direction ? 2 : 1);
}

std::string ModeLabel::to_string() const {
  if (kind == Kind::spin) {
    return "spin";
  }
  std::string s = "photon" + std::to_string(photon_index) + "(";
  if (has_polarization) {
    s += basis == PolBasis::circular ? "R/L" : "H/V";
  }
  if (has_direction) {
    s += has_polarization ? ",dir" : "dir";
  }
  return s + ")";
}

JointState::JointState() : amplitudes_{Complex{1.0, 0.0}} {}

JointState::JointState(std::vector<Degree> degrees, std::vector<Complex> amplitudes) {
  const std::size_t n = degrees.size();
  if (n > 20) {
    throw std::invalid_argument("too many degrees of freedom for a dense state");
  }
  if (amplitudes.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("amplitude vector length must be 2^(number of degrees)");
  }
  int spins = 0;
  for (const auto &d : degrees) {
    if (d.kind == DegreeKind::spin) {
      ++spins;
    } else if (d.photon < 1) {
      throw std::invalid_argument("photon indices start at 1");
    }
  }
  if (spins > 1) {
    throw std::invalid_argument("a state holds at most one spin");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canonical_key(degrees[a]) < canonical_key(degrees[b]);
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (canonical_key(degrees[order[i]]) == canonical_key(degrees[order[i - 1]])) {
      throw std::invalid_argument("duplicate degree " + degree_name(degrees[order[i]]));
    }
  }

  bool identity = std::is_sorted(order.begin(), order.end());
  if (identity) {
    degrees_ = std::move(degrees);
    amplitudes_ = std::move(amplitudes);
  } else {
    degrees_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      degrees_[i] = degrees[order[i]];
    }
    amplitudes_.assign(amplitudes.size(), Complex{});
    for (std::size_t old_index = 0; old_index < amplitudes.size(); ++old_index) {
      std::size_t new_index = 0;
      for (std::size_t i = 0; i < n; ++i) {
        new_index = (new_index << 1) | bit_of(old_index, order[i], n);
      }
      amplitudes_[new_index] = amplitudes[old_index];
    }
  }

  if (norm2() > 1.0 + kNormTolerance) {
    throw std::invalid_argument("squared norm exceeds 1");
  }
}

JointState JointState::photon(int index, Complex a_r, Complex a_l) {
  return JointState({{DegreeKind::polarization, index}}, {a_r, a_l});
}

JointState JointState::photon(int index, Complex a_r, Complex a_l, Dir d) {
  std::vector<Complex> amps(4);
  const int k = static_cast<int>(d);
  amps[0 * 2 + k] = a_r;
  amps[1 * 2 + k] = a_l;
  return JointState({{DegreeKind::polarization, index}, {DegreeKind::direction, index}}, std::move(amps));
}

JointState JointState::spin(Complex a_up, Complex a_down) {
  return JointState({{DegreeKind::spin, 0}}, {a_up, a_down});
}

JointState JointState::basis_ket(std::vector<Degree> degrees, std::span<const int> values) {
  if (values.size() != degrees.size()) {
    throw std::invalid_argument("one value per degree required");
  }
  std::size_t index = 0;
  for (int v : values) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("degree values are 0 or 1");
    }
    index = (index << 1) | static_cast<std::size_t>(v);
  }
  std::vector<Complex> amps(std::size_t{1} << degrees.size());
  amps[index] = 1.0;
  return JointState(std::move(degrees), std::move(amps));
}

std::vector<ModeLabel> JointState::modes() const {
  std::vector<ModeLabel> out;
  for (const auto &d : degrees_) {
    if (d.kind == DegreeKind::spin) {
      out.push_back({ModeLabel::Kind::spin, 0, false, false, PolBasis::circular});
      continue;
    }
    if (out.empty() || out.back().kind != ModeLabel::Kind::photon || out.back().photon_index != d.photon) {
      out.push_back({ModeLabel::Kind::photon, d.photon, false, false, PolBasis::circular});
    }
    if (d.kind == DegreeKind::polarization) {
      out.back().has_polarization = true;
      out.back().basis = d.basis;
    } else {
      out.back().has_direction = true;
    }
  }
  return out;
}

bool JointState::has(DegreeRef ref) const {
  return std::any_of(degrees_.begin(), degrees_.end(), [&](const Degree &d) { return d.ref() == ref; });
}

std::size_t JointState::position(DegreeRef ref) const {
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i].ref() == ref) {
      return i;
    }
  }
  throw std::invalid_argument("state has no degree " + degree_name({ref.kind, ref.photon}));
}

Complex JointState::amplitude(std::span<const int> values) const {
  if (values.size() != degrees_.size()) {
    throw std::invalid_argument("one value per degree required");
  }
  std::size_t index = 0;
  for (int v : values) {
    index = (index << 1) | static_cast<std::size_t>(v & 1);
  }
  return amplitudes_[index];
}

double JointState::norm2() const {
  double s = 0.0;
  for (const auto &a : amplitudes_) {
    s += std::norm(a);
  }
  return s;
}

JointState JointState::scaled(Complex factor) const {
  std::vector<Complex> amps(amplitudes_);
  for (auto &a : amps) {
    a *= factor;
  }
  return JointState(degrees_, std::move(amps));
}

JointState JointState::normalized() const {
  const double n2 = norm2();
  if (n2 <= 0.0) {
    throw std::domain_error("cannot normalize the zero vector");
  }
  std::vector<Complex> amps(amplitudes_);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto &a : amps) {
    a *= inv;
  }
  return JointState(degrees_, std::move(amps));
}

std::string JointState::to_string(double cutoff) const {
  std::ostringstream out;
  out.precision(6);
  bool first = true;
  const std::size_t n = degrees_.size();
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const Complex a = amplitudes_[i];
    if (std::abs(a) <= cutoff) {
      continue;
    }
    if (!first) {
      out << " + ";
    }
    first = false;
    out << "(" << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)|";
    for (std::size_t p = 0; p < n; ++p) {
      if (p > 0) {
        out << ",";
      }
      out << value_name(degrees_[p], bit_of(i, p, n));
      if (degrees_[p].kind != DegreeKind::spin) {
        out << degrees_[p].photon;
      }
    }
    out << ">";
  }
  return first ? "0" : out.str();
}

JointState tensor(const JointState &a, const JointState &b) {
  std::vector<Degree> degrees = a.degrees();
  degrees.insert(degrees.end(), b.degrees().begin(), b.degrees().end());
  const auto aa = a.amplitudes();
  const auto ba = b.amplitudes();
  std::vector<Complex> amps;
  amps.reserve(aa.size() * ba.size());
  for (const auto &x : aa) {
    for (const auto &y : ba) {
      amps.push_back(x * y);
    }
  }
  // The constructor reorders into canonical order and rejects overlaps.
  return JointState(std::move(degrees), std::move(amps));
}

Complex inner_product(const JointState &a, const JointState &b) {
  if (a.degrees() != b.degrees()) {
    throw std::invalid_argument("inner product needs identical degree labels");
  }
  Complex s{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += std::conj(x[i]) * y[i];
  }
  return s;
}

JointState apply_local(const JointState &state, std::span<const DegreeRef> targets, const Eigen::MatrixXcd &map) {
  const std::size_t k = targets.size();
  const std::size_t m = std::size_t{1} << k;
  if (k == 0 || map.rows() != static_cast<Eigen::Index>(m) || map.cols() != static_cast<Eigen::Index>(m)) {
    throw std::invalid_argument("map dimension does not match the targeted subspace");
  }
  const auto pos = positions_of(state, targets);
  const std::size_t n = state.degrees().size();

  std::size_t target_mask = 0;
  std::vector<std::size_t> shift(k);
  for (std::size_t j = 0; j < k; ++j) {
    shift[j] = n - 1 - pos[j];
    target_mask |= std::size_t{1} << shift[j];
  }
  // offsets[s] is the index contribution of local sub-index s.
  std::vector<std::size_t> offsets(m, 0);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      if ((s >> (k - 1 - j)) & 1u) {
        offsets[s] |= std::size_t{1} << shift[j];
      }
    }
  }

  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  std::vector<Complex> local(m);
  for (std::size_t base = 0; base < in.size(); ++base) {
    if (base & target_mask) {
      continue;
    }
    for (std::size_t s = 0; s < m; ++s) {
      local[s] = in[base | offsets[s]];
    }
    for (std::size_t r = 0; r < m; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < m; ++c) {
        acc += map(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * local[c];
      }
      out[base | offsets[r]] = acc;
    }
  }
  return JointState(state.degrees(), std::move(out));
}

JointState apply_local(const JointState &state, std::initializer_list<DegreeRef> targets, const Eigen::MatrixXcd &map) {
  return apply_local(state, std::span<const DegreeRef>(targets.begin(), targets.size()), map);
}

JointState contract(const JointState &state, std::span<const DegreeRef> targets, std::span<const Complex> ket) {
  const std::size_t k = targets.size();
  const std::size_t m = std::size_t{1} << k;
  if (ket.size() != m) {
    throw std::invalid_argument("ket dimension does not match the targeted subspace");
  }
  const auto pos = positions_of(state, targets);
  const std::size_t n = state.degrees().size();

  std::vector<bool> is_target(n, false);
  for (auto p : pos) {
    is_target[p] = true;
  }
  std::vector<Degree> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_target[i]) {
      rest.push_back(state.degrees()[i]);
    }
  }

  const auto in = state.amplitudes();
  std::vector<Complex> out(std::size_t{1} << rest.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::size_t s = 0;
    for (std::size_t j = 0; j < k; ++j) {
      s = (s << 1) | bit_of(i, pos[j], n);
    }
    std::size_t r = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (!is_target[p]) {
        r = (r << 1) | bit_of(i, p, n);
      }
    }
    out[r] += std::conj(ket[s]) * in[i];
  }
  return JointState(std::move(rest), std::move(out));
}

std::vector<OutcomeRecord> measure(
    const JointState &state, std::span<const DegreeRef> targets, std::span<const BasisElement> basis) {
  const std::size_t m = std::size_t{1} << targets.size();
  if (basis.size() != m) {
    throw std::invalid_argument("measurement basis must span the targeted subspace");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].ket.size() != m) {
      throw std::invalid_argument("basis element has the wrong dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      Complex ip{};
      for (std::size_t c = 0; c < m; ++c) {
        ip += std::conj(basis[j].ket[c]) * basis[i].ket[c];
      }
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kNormTolerance) {
        throw std::invalid_argument("measurement basis is not orthonormal");
      }
    }
  }

  std::vector<Degree> measured;
  for (const auto &t : targets) {
    measured.push_back(state.degree(t));
  }

  std::vector<OutcomeRecord> records;
  records.reserve(basis.size());
  for (const auto &element : basis) {
    JointState rest = contract(state, targets, element.ket);
    const double p = rest.norm2();
    JointState collapsed(measured, element.ket);
    JointState conditioned = tensor(p > 0.0 ? rest.normalized() : rest, collapsed);
    records.push_back({element.label, p, std::move(conditioned)});
  }
  return records;
}

JointState relabel(const JointState &state, DegreeRef polarization, PolBasis basis) {
  if (polarization.kind != DegreeKind::polarization) {
    throw std::invalid_argument("only polarization degrees carry a basis tag");
  }
  std::vector<Degree> degrees = state.degrees();
  degrees[state.position(polarization)].basis = basis;
  const auto a = state.amplitudes();
  return JointState(std::move(degrees), std::vector<Complex>(a.begin(), a.end()));
}

JointState drop_determined(const JointState &state, DegreeRef ref, double tolerance) {
  const std::size_t p = state.position(ref);
  const std::size_t n = state.degrees().size();
  const std::size_t bit = std::size_t{1} << (n - 1 - p);
  const auto in = state.amplitudes();

  std::vector<Degree> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != p) {
      rest.push_back(state.degrees()[i]);
    }
  }
  std::vector<Complex> out(in.size() / 2);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i & bit) {
      continue;
    }
    const Complex a0 = in[i];
    const Complex a1 = in[i | bit];
    if (std::abs(a0) > tolerance && std::abs(a1) > tolerance) {
      throw std::logic_error("degree is not determined by the others; it cannot be dropped coherently");
    }
    // Compact index: remove bit p from i.
    const std::size_t high = (i >> (n - p)) << (n - 1 - p);
    const std::size_t low = i & (bit - 1);
    out[high | low] = a0 + a1;
  }
  return JointState(std::move(rest), std::move(out));
}

}  // namespace qdcav
