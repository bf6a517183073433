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

#include <cmath>
#include <random>

#include "fermiproc/noise.hpp"

namespace fermiproc {
namespace {

// Composite Simpson rule, radial overlap in zero-point units.
double radial_simpson(double d) {
  auto psi = [](double r) { return std::exp(-r * r / 4.0); };
  auto integ = [&](double shift) {
    const int n = 20000;
    const double b = 40.0, h = b / n;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      double r = k * h;
      double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      s += w * r * psi(r) * psi(r + shift);
    }
    return s * h / 3.0;
  };
  return integ(d) / integ(0.0);
}

Mat two_mode_matrix(const TwoModeOperator& op) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = op.empty;
  m.block(1, 1, 2, 2) = op.single;
  m(3, 3) = op.full;
  return m;
}

TEST(Trap, DerivedScales) {
  TrapParams t;
  t.validate();
  const double m = 86.9088775 * 1.66053906660e-27;
  const double v0 = 50e3 * 6.62607015e-34;
  const double hbar = 6.62607015e-34 / (2 * kPi);
  EXPECT_NEAR(t.omega_r() / (2 * kPi), std::sqrt(4 * v0 / (m * 1.21e-12)) / (2 * kPi), 1e-9);
  EXPECT_NEAR(t.rayleigh_length(), kPi * 1.21e-12 / 0.515e-6, 1e-18);
  EXPECT_NEAR(2 * m * t.omega_r() * t.r_zp() * t.r_zp() / hbar, 1.0, 1e-12);
  EXPECT_NEAR(2 * m * t.omega_z() * t.z_zp() * t.z_zp() / hbar, 1.0, 1e-12);
  EXPECT_LT(t.omega_z(), t.omega_r());
  TrapParams bad;
  bad.waist_um = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Overlap, TransverseMatchesGaussianFormula) {
  for (double a : {0.0, 0.1, 0.5, 1.0, 2.0, 3.5}) {
    for (double b : {0.0, 0.3, 1.7}) {
      OverlapValue q = overlap_factor(a, b);
      EXPECT_NEAR(q.value, std::exp(-(a * a + b * b) / 8.0), 1e-10);
      EXPECT_LT(q.error_estimate, 1e-10);
      EXPECT_NEAR(overlap_closed_form(a, b), q.value, 1e-10);
      EXPECT_NEAR(overlap_factor(-a, -b).value, q.value, 1e-12);
    }
  }
}

TEST(Overlap, RadialLiteralMatchesSimpson) {
  for (double a : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0}) {
    double q = overlap_factor(a, 0.0, OverlapMode::kRadialLiteral).value;
    EXPECT_NEAR(q, radial_simpson(a), 1e-9) << a;
    EXPECT_NEAR(overlap_closed_form(a, 0.4, OverlapMode::kRadialLiteral),
                overlap_factor(a, 0.4, OverlapMode::kRadialLiteral).value, 1e-10);
  }
  EXPECT_NEAR(overlap_factor(0.0, 0.0, OverlapMode::kRadialLiteral).value, 1.0, 1e-14);
}

TEST(Overlap, DecreasesWithOffset) {
  for (OverlapMode mode : {OverlapMode::kTransverse, OverlapMode::kRadialLiteral}) {
    double prev = 1.0 + 1e-15;
    for (double a = 0.0; a <= 3.0; a += 0.25) {
      double v = overlap_factor(a, 0.0, mode).value;
      EXPECT_LE(v, prev);
      EXPECT_GT(v, 0.0);
      prev = v;
    }
  }
}

TEST(Samples, ZeroDistributionGivesIdealPulse) {
  std::mt19937_64 rng(1);
  TrapParams t;
  NoiseSample s = draw_sample(NoiseDistribution{}, t, rng);
  EXPECT_TRUE(s.zero());
  PulseError e = pulse_error(s, t, 10e-6);
  EXPECT_EQ(e.f, 1.0);
  EXPECT_EQ(e.z_angle, 0.0);
  EXPECT_EQ(delta_v0(s, t), 0.0);
}

TEST(Samples, MomentsMatchDistribution) {
  TrapParams t;
  NoiseDistribution d{0.01, 0.1, 0.2};
  std::mt19937_64 rng(99);
  const int n = 40000;
  double sr = 0, sr2 = 0, sz2 = 0, sw2 = 0;
  for (int k = 0; k < n; ++k) {
    NoiseSample s = draw_sample(d, t, rng);
    sr += s.dr / t.r_zp();
    sr2 += std::pow(s.dr / t.r_zp(), 2);
    sz2 += std::pow(s.dz / t.z_zp(), 2);
    sw2 += std::pow(s.domega_r / t.omega_r(), 2);
  }
  EXPECT_NEAR(sr / n, 0.0, 5 * 0.1 / std::sqrt(n));
  EXPECT_NEAR(std::sqrt(sr2 / n), 0.1, 0.002);
  EXPECT_NEAR(std::sqrt(sz2 / n), 0.2, 0.004);
  EXPECT_NEAR(std::sqrt(sw2 / n), 0.01, 0.0002);
  std::mt19937_64 a(5), b(5);
  NoiseSample x = draw_sample(d, t, a), y = draw_sample(d, t, b);
  EXPECT_EQ(x.dr, y.dr);
  EXPECT_EQ(x.domega_r, y.domega_r);
}

TEST(Samples, DepthShiftFollowsHarmonicRelation) {
  TrapParams t;
  NoiseSample s;
  s.domega_r = 0.01 * t.omega_r();
  // V0 = m w0^2 omega_r^2 / 4, so a relative shift eps gives V0 ((1+eps)^2 - 1).
  EXPECT_NEAR(delta_v0(s, t) / t.depth_joule(), 1.01 * 1.01 - 1.0, 1e-12);
  PulseError e = pulse_error(s, t, 10e-6);
  EXPECT_EQ(e.f, 1.0);
  EXPECT_NEAR(e.z_angle, delta_v0(s, t) * 10e-6 / kHbar, 1e-9 * std::abs(e.z_angle));
}

TEST(PerturbedPulse, ScalesAndShifts) {
  TunnelingParams p = perturbed_pulse({1.0, 0.3, 0.5}, 0.9, 0.2);
  EXPECT_DOUBLE_EQ(p.theta1, 0.9);
  EXPECT_DOUBLE_EQ(p.theta2, 0.3);
  EXPECT_DOUBLE_EQ(p.theta3, 0.9 * 0.5 + 0.2);
}

TEST(PerturbedShuttle, IdealErrorsReproduceTheGate) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  auto reg = MixedRegister::fermions(2, std::nullopt);
  for (int k = 0; k < 20; ++k) {
    TunnelingParams t{a(rng), a(rng), a(rng)};
    Mat m = two_mode_matrix(perturbed_shuttle(t, {}, {}, {}));
    EXPECT_LT(phase_insensitive_distance(m, gate_matrix(GateSpec::tunneling(0, 1, t), *reg)), 1e-10);
  }
}

TEST(PerturbedShuttle, ErrorsAreContractiveAndGrowWithOffset) {
  TunnelingParams t{kPi / 2, 0.2, 0.1};
  auto reg = MixedRegister::fermions(2, std::nullopt);
  Mat ideal = gate_matrix(GateSpec::tunneling(0, 1, t), *reg);
  double prev = 0.0;
  for (double a : {0.1, 0.3, 0.6, 1.0}) {
    PulseError e{overlap_factor(a, 0.0).value, 0.0};
    Mat m = two_mode_matrix(perturbed_shuttle(t, e, e, e));
    Eigen::JacobiSVD<Mat> svd(m);
    EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-12);
    double d = phase_insensitive_distance(m, ideal);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(Budget, HeatingDephasingMotion) {
  const double p = rydberg_heating_probability(2 * kPi * 15e3, 100e-9);
  EXPECT_NEAR(p, std::pow(2 * kPi * 15e3 * 100e-9, 2) / 4, 1e-18);
  EXPECT_NEAR(p, 2.22e-5, 0.01e-5);
  EXPECT_EQ(rydberg_heating_probability(1e9, 1.0), 1.0);
  const double t2 = dephasing_time_estimate(50e3, 0.002);
  EXPECT_NEAR(t2, 1.0 / (2 * kPi * 100.0), 1e-15);
  EXPECT_NEAR(t2 * 1e3, 1.59, 0.01);
  EXPECT_TRUE(std::isinf(dephasing_time_estimate(50e3, 0.0)));
  MotionBudget m = motion_budget(50e-6, 1e4, t2);
  EXPECT_NEAR(m.total_time, 0.5, 1e-12);
  EXPECT_NEAR(m.ratio_to_t2, 0.5 / t2, 1e-9);
  EXPECT_NEAR(m.moves_within_t2, t2 / 50e-6, 1e-9);
  EXPECT_THROW(rydberg_heating_probability(-1, 1), std::invalid_argument);
  EXPECT_THROW(motion_budget(1, 1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace fermiproc
