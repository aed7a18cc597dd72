#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qdcav {

using Complex = std::complex<double>;

/// Tolerance used for norm and orthonormality checks throughout the library.
inline constexpr double kNormTolerance = 1e-12;

/// Every degree of freedom is two-dimensional. Value 0 is R (or H after the
/// linear relabel), up-going, or spin-up; value 1 is L (or V), down-going, or
/// spin-down.
enum class DegreeKind : std::uint8_t { polarization, direction, spin };

enum class PolBasis : std::uint8_t { circular, linear };

enum class Pol : int { R = 0, L = 1 };
enum class Lin : int { H = 0, V = 1 };
enum class Dir : int { up = 0, down = 1 };
enum class Spin : int { up = 0, down = 1 };

/// Addresses one degree of freedom by label, independent of its position in
/// the amplitude vector.
struct DegreeRef {
  DegreeKind kind;
  int photon = 0;

  bool operator==(const DegreeRef &) const = default;
};

inline DegreeRef pol(int photon) { return {DegreeKind::polarization, photon}; }
inline DegreeRef dir(int photon) { return {DegreeKind::direction, photon}; }
inline DegreeRef spin_dof() { return {DegreeKind::spin, 0}; }

/// A labelled degree of freedom stored in a state. The basis tag only matters
/// for polarization (R/L versus H/V naming).
struct Degree {
  DegreeKind kind;
  int photon = 0;
  PolBasis basis = PolBasis::circular;

  DegreeRef ref() const { return {kind, photon}; }
  bool operator==(const Degree &) const = default;
};

/// Grouped view over the degrees belonging to one physical carrier.
struct ModeLabel {
  enum class Kind : std::uint8_t { photon, spin };
  Kind kind;
  int photon_index = 0;
  bool has_polarization = false;
  bool has_direction = false;
  PolBasis basis = PolBasis::circular;

  std::size_t dim() const;
  std::string to_string() const;
};

/// Dense amplitude vector over an ordered list of two-level degrees.
///
/// Degrees are kept in canonical order: photon 1 polarization, photon 1
/// direction, photon 2 polarization, ..., spin. The first degree is the most
/// significant bit of the amplitude index. States may be sub-normalized; the
/// squared norm then reads as a survival probability.
class JointState {
 public:
  /// The scalar state (no degrees, amplitude 1).
  JointState();

  /// Degrees are sorted into canonical order and the amplitudes permuted to
  /// match. Throws std::invalid_argument on duplicate degrees, more than one
  /// spin, a size mismatch or a squared norm above 1 + kNormTolerance.
  JointState(std::vector<Degree> degrees, std::vector<Complex> amplitudes);

  /// Single photon, polarization only: a_r|R> + a_l|L>.
  static JointState photon(int index, Complex a_r, Complex a_l);
  /// Single photon carrying a propagation direction: (a_r|R> + a_l|L>)|d>.
  static JointState photon(int index, Complex a_r, Complex a_l, Dir d);
  static JointState spin(Complex a_up, Complex a_down);
  /// Basis ket with the given values, listed in the same order as `degrees`.
  static JointState basis_ket(std::vector<Degree> degrees, std::span<const int> values);

  const std::vector<Degree> &degrees() const { return degrees_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::vector<ModeLabel> modes() const;

  bool has(DegreeRef ref) const;
  /// Position of a degree in canonical order; throws if absent.
  std::size_t position(DegreeRef ref) const;
  const Degree &degree(DegreeRef ref) const { return degrees_[position(ref)]; }

  /// Amplitude of the basis configuration given in canonical degree order.
  Complex amplitude(std::span<const int> values) const;

  double norm2() const;
  JointState scaled(Complex factor) const;
  JointState normalized() const;

  std::string to_string(double cutoff = 1e-12) const;

 private:
  std::vector<Degree> degrees_;
  std::vector<Complex> amplitudes_;
};

struct OutcomeRecord {
  std::string outcome_label;
  double probability = 0.0;
  JointState conditioned_state;
};

/// One element of a projective measurement basis, as a ket over the targeted
/// degrees (first target most significant).
struct BasisElement {
  std::string label;
  std::vector<Complex> ket;
};

/// Outer product. Rejects overlapping degrees and a second spin.
JointState tensor(const JointState &a, const JointState &b);

/// <a|b>, conjugate-linear in `a`. Degree lists (including basis tags) must match.
Complex inner_product(const JointState &a, const JointState &b);

/// Applies `map` to the listed degrees, identity elsewhere. The matrix index
/// treats the first target as most significant. Throws on dimension mismatch or
/// if the result exceeds unit norm.
JointState apply_local(const JointState &state, std::span<const DegreeRef> targets, const Eigen::MatrixXcd &map);
JointState apply_local(const JointState &state, std::initializer_list<DegreeRef> targets, const Eigen::MatrixXcd &map);

/// Partial inner product <ket|state> over the targeted degrees, which are
/// removed from the result. The result is left unnormalized.
JointState contract(const JointState &state, std::span<const DegreeRef> targets, std::span<const Complex> ket);

/// Projective measurement. One record per basis element; each conditioned
/// state keeps the measured degrees, collapsed onto the basis element, and is
/// normalized (left as the zero vector when the probability vanishes).
std::vector<OutcomeRecord> measure(
    const JointState &state, std::span<const DegreeRef> targets, std::span<const BasisElement> basis);

/// Renames the basis of a polarization degree; amplitudes are untouched.
JointState relabel(const JointState &state, DegreeRef polarization, PolBasis basis);

/// Removes a degree whose value is a function of the remaining degrees. Throws
/// std::logic_error when two values of the degree carry weight for the same
/// configuration of the others.
JointState drop_determined(const JointState &state, DegreeRef ref, double tolerance = 1e-12);

}  // namespace qdcav
