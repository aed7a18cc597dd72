#include "qdcav/state.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <gtest/gtest.h>

namespace qdcav {
namespace {

const double s2 = 1.0 / std::sqrt(2.0);

Degree P(int k) { return {DegreeKind::polarization, k}; }
Degree D(int k) { return {DegreeKind::direction, k}; }
Degree S() { return {DegreeKind::spin, 0}; }

JointState random_state(std::mt19937_64 &rng, std::vector<Degree> degrees) {
  std::normal_distribution<double> n;
  std::vector<Complex> a(std::size_t{1} << degrees.size());
  double norm2 = 0;
  for (auto &z : a) {
    z = {n(rng), n(rng)};
    norm2 += std::norm(z);
  }
  for (auto &z : a) z /= std::sqrt(norm2);
  return JointState(std::move(degrees), std::move(a));
}

TEST(JointState, ScalarDefault) {
  JointState s;
  EXPECT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s.norm2(), 1.0);
}

TEST(JointState, SortsDegreesIntoCanonicalOrder) {
  // Spin given first, photon 2 before photon 1: amplitude on (spin=1, pol2=0, pol1=1).
  JointState s({S(), P(2), P(1)}, {0, 0, 0, 0, 1, 0, 0, 0});
  ASSERT_EQ(s.degrees().size(), 3u);
  EXPECT_EQ(s.degrees()[0], P(1));
  EXPECT_EQ(s.degrees()[1], P(2));
  EXPECT_EQ(s.degrees()[2], S());
  const int v[] = {0, 0, 1};
  EXPECT_EQ(s.amplitude(v), Complex(1.0));
}

TEST(JointState, RejectsMalformedInput) {
  EXPECT_THROW(JointState({P(1), P(1)}, {1, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(JointState({P(1)}, {1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(JointState({P(0)}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(JointState({P(1)}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(tensor(JointState::spin(1, 0), JointState::spin(1, 0)), std::invalid_argument);
  EXPECT_THROW(tensor(JointState::photon(1, 1, 0), JointState::photon(1, 1, 0)), std::invalid_argument);
}

TEST(JointState, SubNormalizedIsAllowed) {
  JointState s({P(1)}, {0.3, 0.4});
  EXPECT_NEAR(s.norm2(), 0.25, 1e-15);
  EXPECT_NEAR(s.normalized().norm2(), 1.0, 1e-15);
  EXPECT_THROW(JointState({P(1)}, {0, 0}).normalized(), std::domain_error);
}

TEST(Tensor, BasisProduct) {
  const JointState s = tensor(JointState::photon(1, 1, 0), JointState::spin(1, 0));
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.amplitudes()[0], Complex(1.0));
  EXPECT_NEAR(s.norm2(), 1.0, 1e-15);
}

TEST(Tensor, Linearity) {
  const JointState s = tensor(JointState::photon(1, s2, s2), JointState::spin(1, 0));
  // (R, up) and (L, up).
  EXPECT_NEAR(s.amplitudes()[0].real(), s2, 1e-15);
  EXPECT_NEAR(s.amplitudes()[2].real(), s2, 1e-15);
  EXPECT_EQ(s.amplitudes()[1], Complex(0.0));
}

TEST(Tensor, NormIsMultiplicative) {
  const JointState a({P(1)}, {0.5, 0.0});
  const JointState b = JointState::spin(std::sqrt(0.5), 0.0);
  EXPECT_NEAR(tensor(a, b).norm2(), 0.125, 1e-15);
}

TEST(InnerProduct, Examples) {
  EXPECT_EQ(inner_product(JointState::photon(1, 1, 0), JointState::photon(1, 0, 1)), Complex(0.0));
  EXPECT_NEAR(std::abs(inner_product(JointState::photon(1, s2, s2), JointState::photon(1, 1, 0)) - s2), 0.0, 1e-15);
  const JointState a = JointState::photon(1, 0.6, Complex(0, 0.8));
  EXPECT_NEAR(std::abs(inner_product(a, a) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(inner_product(JointState::photon(1, 1, 0), JointState::photon(2, 1, 0)), std::invalid_argument);
}

TEST(InnerProduct, ConjugateLinearInFirst) {
  const JointState a = JointState::photon(1, Complex(0, 1), 0);
  const JointState b = JointState::photon(1, 1, 0);
  EXPECT_EQ(inner_product(a, b), Complex(0, -1));
}

TEST(ApplyLocal, IdentityAndPauliZ) {
  std::mt19937_64 rng(7);
  const JointState s = random_state(rng, {P(1), D(1), S()});
  const JointState same = apply_local(s, {pol(1)}, Eigen::Matrix2cd::Identity());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(same.amplitudes()[i], s.amplitudes()[i]);

  Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
  z(0, 0) = 1.0, z(1, 1) = -1.0;
  const JointState l = apply_local(JointState::photon(1, 0, 1), {pol(1)}, z);
  EXPECT_EQ(l.amplitudes()[1], Complex(-1.0));
}

TEST(ApplyLocal, HadamardTwiceIsIdentity) {
  Eigen::Matrix2cd h;
  h << s2, s2, s2, -s2;
  std::mt19937_64 rng(11);
  const JointState s = random_state(rng, {P(1), P(2), S()});
  const JointState back = apply_local(apply_local(s, {pol(2)}, h), {pol(2)}, h);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(back.amplitudes()[i] - s.amplitudes()[i]), 0, 1e-14);
}

TEST(ApplyLocal, TargetOrderSetsMatrixIndex) {
  // CNOT with the spin as control, listed first: only the spin-down branch flips the photon.
  Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  const JointState in = tensor(JointState::photon(1, 1, 0), JointState::spin(0, 1));
  const JointState out = apply_local(in, {spin_dof(), pol(1)}, cx);
  const int v[] = {1, 1};  // L, down
  EXPECT_EQ(out.amplitude(v), Complex(1.0));
}

TEST(ApplyLocal, RandomUnitaryPreservesNorm) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const JointState s = random_state(rng, {P(1), D(1), P(2), S()});
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(4, 4);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd u = qr.householderQ();
    const JointState out = apply_local(s, {pol(1), spin_dof()}, u);
    EXPECT_NEAR(out.norm2(), 1.0, 1e-12);
  }
}

TEST(ApplyLocal, RejectsBadInput) {
  const JointState s = JointState::photon(1, 1, 0);
  EXPECT_THROW(apply_local(s, {pol(1)}, Eigen::Matrix4cd::Identity()), std::invalid_argument);
  EXPECT_THROW(apply_local(s, {pol(2)}, Eigen::Matrix2cd::Identity()), std::invalid_argument);
  EXPECT_THROW(apply_local(s, {pol(1)}, Eigen::Matrix2cd::Identity() * 2.0), std::invalid_argument);
}

TEST(Measure, BasisStates) {
  const DegreeRef t[] = {spin_dof()};
  const BasisElement z[] = {{"up", {1, 0}}, {"down", {0, 1}}};
  const auto r = measure(JointState::spin(1, 0), t, z);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r[0].probability, 1.0);
  EXPECT_DOUBLE_EQ(r[1].probability, 0.0);
}

TEST(Measure, SuperpositionCollapses) {
  const DegreeRef t[] = {spin_dof()};
  const BasisElement z[] = {{"up", {1, 0}}, {"down", {0, 1}}};
  const auto r = measure(JointState::spin(s2, -s2), t, z);
  EXPECT_NEAR(r[0].probability, 0.5, 1e-15);
  EXPECT_NEAR(r[1].probability, 0.5, 1e-15);
  EXPECT_NEAR(std::norm(inner_product(JointState::spin(1, 0), r[0].conditioned_state)), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(inner_product(JointState::spin(0, 1), r[1].conditioned_state)), 1.0, 1e-15);
}

TEST(Measure, RejectsNonOrthonormalBasis) {
  const DegreeRef t[] = {spin_dof()};
  const BasisElement bad[] = {{"a", {1, 0}}, {"b", {s2, s2}}};
  EXPECT_THROW(measure(JointState::spin(1, 0), t, bad), std::invalid_argument);
}

TEST(Measure, ProbabilitiesSumToNorm) {
  std::mt19937_64 rng(5);
  const JointState s = random_state(rng, {P(1), P(2), S()}).scaled(0.8);
  const DegreeRef t[] = {pol(2), spin_dof()};
  std::vector<BasisElement> basis;
  for (int i = 0; i < 4; ++i) {
    std::vector<Complex> k(4);
    k[static_cast<std::size_t>(i)] = 1.0;
    basis.push_back({std::to_string(i), k});
  }
  double total = 0;
  for (const auto &rec : measure(s, t, basis)) total += rec.probability;
  EXPECT_NEAR(total, 0.64, 1e-12);
}

TEST(Contract, RemovesTargets) {
  const JointState s = tensor(JointState::photon(1, 0.6, 0.8), JointState::spin(s2, s2));
  const DegreeRef t[] = {spin_dof()};
  const Complex ket[] = {1.0, 0.0};
  const JointState c = contract(s, t, ket);
  EXPECT_FALSE(c.has(spin_dof()));
  EXPECT_NEAR(c.norm2(), 0.5, 1e-15);
}

TEST(Relabel, KeepsAmplitudes) {
  const JointState s = JointState::photon(1, 0.6, 0.8);
  const JointState l = relabel(s, pol(1), PolBasis::linear);
  EXPECT_EQ(l.degree(pol(1)).basis, PolBasis::linear);
  EXPECT_EQ(l.amplitudes()[0], s.amplitudes()[0]);
  EXPECT_THROW(inner_product(s, l), std::invalid_argument);
}

TEST(DropDetermined, RemovesFunctionalDegree) {
  // Direction equals polarization.
  JointState s({P(1), D(1)}, {0.6, 0, 0, 0.8});
  const JointState d = drop_determined(s, dir(1));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.amplitudes()[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(d.amplitudes()[1].real(), 0.8, 1e-15);
}

TEST(DropDetermined, RejectsSuperposedDegree) {
  JointState s({P(1), D(1)}, {0.6, 0.8, 0, 0});
  EXPECT_THROW(drop_determined(s, dir(1)), std::logic_error);
}

TEST(Modes, GroupsPhotonDegrees) {
  const JointState s = tensor(JointState::photon(1, 1, 0, Dir::down), JointState::spin(1, 0));
  const auto modes = s.modes();
  ASSERT_EQ(modes.size(), 2u);
  EXPECT_EQ(modes[0].dim(), 4u);
  EXPECT_EQ(modes[1].dim(), 2u);
}

}  // namespace
}  // namespace qdcav
