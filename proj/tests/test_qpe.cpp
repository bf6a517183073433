// Copyright 2026 The fermiproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "fermiproc/qpe.hpp"
#include "oracles.hpp"

namespace fermiproc {
namespace {

const std::vector<SiteKind> kSites{SiteKind::kFermion, SiteKind::kFermion, SiteKind::kQubit};

StateVector with_fermions(const Vec& f) {
  auto reg = std::make_shared<const MixedRegister>(kSites, 1);
  StateVector s(reg);
  s.amplitudes.setZero();
  for (std::size_t k = 0; k < reg->fock().size(); ++k) s.amplitudes[reg->index(k, 0)] = f[k];
  return s;
}

TEST(Qpe, DyadicPhaseIsExact) {
  for (int num : {0, 1, 5, 11, 15}) {
    const int bits = 4;
    double phi = num / 16.0;
    Vec f(2);
    f << 1.0, 0.0;  // |10>: the phase site is occupied
    QpeOptions o;
    o.bits = bits;
    auto r = iterative_qpe(controlled_number_phase(kSites, 2, 0, 2 * kPi * phi), with_fermions(f), 2, o);
    EXPECT_EQ(r.phase, phi);
    EXPECT_NEAR(r.min_confidence, 1.0, 1e-12);
    EXPECT_EQ(r.bits.size(), 4u);
    EXPECT_LT(phase_insensitive_distance(r.final_state.amplitudes, with_fermions(f).amplitudes), 1e-12);
  }
}

TEST(Qpe, UnoccupiedSiteGivesZeroPhase) {
  Vec f(2);
  f << 0.0, 1.0;
  QpeOptions o;
  o.bits = 6;
  auto r = iterative_qpe(controlled_number_phase(kSites, 2, 0, 1.234), with_fermions(f), 2, o);
  EXPECT_EQ(r.phase, 0.0);
}

TEST(Qpe, TunnelingEigenphasesWithinResolution) {
  TunnelingParams t{kPi / 3, 0.4, 0.25};
  auto freg = MixedRegister::fermions(2, 1);
  Eigen::ComplexEigenSolver<Mat> es(gate_matrix(GateSpec::tunneling(0, 1, t), *freg));
  for (int k = 0; k < 2; ++k) {
    double exact = -std::arg(es.eigenvalues()(k)) / (2 * kPi);
    exact -= std::floor(exact);
    for (int bits : {3, 6, 10, 16}) {
      QpeOptions o;
      o.bits = bits;
      StateVector s = with_fermions(es.eigenvectors().col(k).normalized());
      auto r = iterative_qpe(controlled_tunneling_power(kSites, 2, 0, 1, t), s, 2, o);
      EXPECT_LT(phase_distance(r.phase, exact), std::ldexp(1.0, -bits)) << bits;
      // The register stays in the eigenstate with the ancilla reset.
      EXPECT_LT(phase_insensitive_distance(r.final_state.amplitudes, s.amplitudes), 1e-10);
    }
  }
}

TEST(Qpe, SampledReadoutIsSeededAndConsistent) {
  Vec f(2);
  f << 1.0, 0.0;
  QpeOptions o;
  o.bits = 8;
  o.sample_shots = true;
  o.seed = 42;
  auto b = controlled_number_phase(kSites, 2, 0, 2 * kPi * 0.3);
  auto r1 = iterative_qpe(b, with_fermions(f), 2, o);
  auto r2 = iterative_qpe(b, with_fermions(f), 2, o);
  EXPECT_EQ(r1.bits, r2.bits);
  EXPECT_EQ(r1.phase, r2.phase);
  EXPECT_LT(phase_distance(r1.phase, 0.3), 0.05);
}

TEST(Qpe, RejectsBadInput) {
  Vec f(2);
  f << 1.0, 0.0;
  auto b = controlled_number_phase(kSites, 2, 0, 1.0);
  QpeOptions o;
  o.bits = 0;
  EXPECT_THROW(iterative_qpe(b, with_fermions(f), 2, o), std::invalid_argument);
  o.bits = 63;
  EXPECT_THROW(iterative_qpe(b, with_fermions(f), 2, o), std::invalid_argument);
  o.bits = 4;
  StateVector excited = with_fermions(f);
  qubit_rotation(QubitAxis::kX, kPi, 2, excited);
  EXPECT_THROW(iterative_qpe(b, excited, 2, o), std::invalid_argument);
  EXPECT_THROW(iterative_qpe(b, with_fermions(f), 0, o), std::invalid_argument);
}

TEST(Qpe, PhaseDistanceWraps) {
  EXPECT_NEAR(phase_distance(0.95, 0.05), 0.1, 1e-15);
  EXPECT_NEAR(phase_distance(0.25, 0.5), 0.25, 1e-15);
  EXPECT_EQ(phase_distance(0.0, 1.0), 0.0);
}

// Controlled circuit equals |1~><1~| (x) 1 + |1><1| (x) U.
TEST(ControlledCircuit, MatchesProjectorForm) {
  const std::vector<SiteKind> layout{SiteKind::kFermion, SiteKind::kFermion, SiteKind::kFermion,
                                     SiteKind::kFermion, SiteKind::kQubit};
  Circuit c(layout);
  c.append(GateSpec::tunneling(0, 2, {0.7, 0.3, -0.4}));
  c.append(GateSpec::number_phase(1, 1.1));
  c.append(GateSpec::interaction(0, 3, 0.6));
  c.append(GateSpec::density_tunneling(3, 1, 0, 0.9, -0.8));
  c.append(GateSpec::density_tunneling(0, 2, 3, 0.5, 0.2));
  Circuit cc = controlled_circuit(c, 4);
  for (std::optional<int> n : {std::optional<int>{1}, std::optional<int>{2}, std::optional<int>{}}) {
    auto reg = std::make_shared<const MixedRegister>(layout, n);
    Mat u = circuit_unitary(c, *reg);
    Eigen::Matrix2cd one;
    one << 0, 0, 0, 1;
    const auto fd = static_cast<Eigen::Index>(reg->fock().size());
    Mat p = Eigen::kroneckerProduct(Mat::Identity(fd, fd), test::on_qubit(one, 0, 1));
    Mat id = Mat::Identity(p.rows(), p.cols());
    Mat expect = (id - p) + p * u;
    EXPECT_LT((circuit_unitary(cc, *reg) - expect).norm(), 1e-9);
  }
}

TEST(ControlledCircuit, RejectsUnsupportedGates) {
  const std::vector<SiteKind> layout{SiteKind::kFermion, SiteKind::kFermion, SiteKind::kFermion,
                                     SiteKind::kFermion, SiteKind::kQubit};
  Circuit c(layout);
  c.append(GateSpec::pair_tunneling(0, 1, 2, 3, 0.1, 0.2));
  EXPECT_THROW(controlled_circuit(c, 4), std::invalid_argument);
}

}  // namespace
}  // namespace fermiproc
