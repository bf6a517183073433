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

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fermiproc/parallel.hpp"
#include "fermiproc/vqe.hpp"
#include "oracles.hpp"

namespace fermiproc {
namespace {

struct Fixture {
  SecondQuantizedHamiltonian h;
  nlohmann::json meta;
};

Fixture fixture(const std::string& name) {
  const std::string dir = FERMIPROC_DATA_DIR;
  std::ifstream in(dir + "/" + name + ".json");
  return {load_hamiltonian(dir + "/" + name + ".ham"), nlohmann::json::parse(in)};
}

EnergyModel model_of(const Fixture& f) {
  const auto ref = bits_from_string(f.meta.at("reference").get<std::string>());
  return EnergyModel(f.h, UCCAnsatz::from_reference(f.h.mode_count, ref));
}

TEST(Ansatz, LiHStructure) {
  auto a = UCCAnsatz::from_reference(8, bits_from_string("11000000"));
  EXPECT_EQ(a.occupied, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.doubles.size(), 15u);
  EXPECT_EQ(a.singles.size(), 12u);
  EXPECT_EQ(a.parameter_count(), 27u);
  EXPECT_EQ(a.doubles.front(), (std::array<int, 4>{0, 1, 2, 3}));
  EXPECT_EQ(a.doubles.back(), (std::array<int, 4>{0, 1, 6, 7}));
  EXPECT_EQ(a.singles.front(), (std::array<int, 2>{0, 2}));
  EXPECT_EQ(a.singles.back(), (std::array<int, 2>{1, 7}));
  auto c = build_ansatz_circuit(a, std::vector<double>(27, 0.1));
  EXPECT_EQ(c.gate_count(), 27u);
  EXPECT_THROW(build_ansatz_circuit(a, std::vector<double>(26, 0.1)), std::invalid_argument);
  EXPECT_THROW(UCCAnsatz::from_reference(3, 0b1000), std::invalid_argument);
}

// The prepared state is the ordered product of exponentials of the generators.
TEST(Ansatz, StateMatchesExponentialProduct) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto a = UCCAnsatz::from_reference(6, bits_from_string("101000"));
  auto reg = MixedRegister::fermions(6, 2);
  std::vector<double> p(a.parameter_count());
  for (double& x : p) x = u(rng);
  Vec psi = StateVector::basis_state(reg, a.reference).amplitudes;
  std::size_t k = 0;
  for (const auto& d : a.doubles) {
    psi = expm(-kI * test::oracle_generator(GateSpec::pair_tunneling(d[0], d[1], d[2], d[3], p[k++], kPi / 2), *reg)) *
          psi;
  }
  for (const auto& s : a.singles) {
    psi = expm(-kI * test::oracle_generator(GateSpec::tunneling(s[0], s[1], {p[k++], kPi / 2, 0.0}), *reg)) * psi;
  }
  StateVector got = StateVector::basis_state(reg, a.reference);
  apply_circuit(build_ansatz_circuit(a, p), got);
  EXPECT_LT((got.amplitudes - psi).norm(), 1e-12);
  // Real generators: amplitudes stay real.
  EXPECT_LT(psi.imag().norm(), 1e-12);
}

TEST(Energy, FixturesMatchReferenceValues) {
  for (const char* name : {"h2", "lih"}) {
    auto f = fixture(name);
    auto m = model_of(f);
    EXPECT_NEAR(m.exact_ground_energy(), f.meta.at("ground_energy").get<double>(), 1e-9) << name;
    std::vector<double> zero(m.ansatz().parameter_count(), 0.0);
    EXPECT_NEAR(m.evaluate(zero), f.meta.at("reference_energy").get<double>(), 1e-9) << name;
    EXPECT_EQ(m.reg()->fock().particle_number(), f.meta.at("electrons").get<int>());
  }
}

TEST(Energy, VariationalBound) {
  auto m = model_of(fixture("lih"));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> p(27);
    for (double& x : p) x = u(rng);
    StateVector s = m.prepare(p);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_GE(m.evaluate(p), m.exact_ground_energy() - 1e-12);
  }
}

TEST(Energy, RejectsMismatches) {
  auto reg = MixedRegister::fermions(2, 1);
  StateVector s = StateVector::basis_state(reg, 0b01);
  EXPECT_THROW(energy(s, Mat::Identity(3, 3)), std::invalid_argument);
  Mat nh = Mat::Zero(2, 2);
  nh(0, 1) = kI;
  s.amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_THROW(energy(s, nh), std::runtime_error);
}

TEST(Vqe, H2ReachesGroundState) {
  auto m = model_of(fixture("h2"));
  MinimizeOptions o;
  auto r = optimize_vqe(m, o, 3);
  EXPECT_LT(r.delta_e, 1e-8);
  EXPECT_GE(r.delta_e, -1e-12);
  EXPECT_FALSE(r.trace.empty());
}

TEST(Vqe, LiHReachesChemicalAccuracy) {
  auto m = model_of(fixture("lih"));
  MinimizeOptions o;
  o.method = MinimizeMethod::kBfgs;
  auto r = optimize_vqe(m, o, 3);
  EXPECT_LT(r.delta_e, kChemicalAccuracy);
  EXPECT_EQ(r.params.size(), 27u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k], r.trace[k - 1] + 1e-15);
}

TEST(Minimize, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  for (MinimizeMethod method : {MinimizeMethod::kNelderMead, MinimizeMethod::kBfgs}) {
    MinimizeOptions o;
    o.method = method;
    auto r = minimize(f, {-1.2, 1.0}, o);
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
    EXPECT_LT(r.f, 1e-8);
  }
  MinimizeOptions tight;
  tight.max_evaluations = 30;
  tight.restarts = 0;
  auto r = minimize(f, {-1.2, 1.0}, tight);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_FALSE(r.converged);
}

NoiseModel noise(double wr, double r) {
  NoiseModel n;
  n.dist = {wr, r, 0.0};
  return n;
}

std::vector<double> optimum(const EnergyModel& m) {
  MinimizeOptions o;
  o.method = MinimizeMethod::kBfgs;
  return optimize_vqe(m, o, 1).params;
}

TEST(NoisyEnergy, ZeroNoiseIsIdeal) {
  auto m = model_of(fixture("h2"));
  auto p = optimum(m);
  auto r = noisy_energy_mc(m, p, noise(0, 0), 8, 1);
  const double ideal = m.evaluate(p) - m.exact_ground_energy();
  for (double d : r.delta_e) EXPECT_NEAR(d, ideal, 1e-14);
  EXPECT_NEAR(r.stderr_delta_e, 0.0, 1e-14);
}

TEST(NoisyEnergy, SeededAndWorkerIndependent) {
  auto m = model_of(fixture("h2"));
  auto p = optimum(m);
  auto a = noisy_energy_mc(m, p, noise(0.01, 0.1), 40, 77, 1);
  auto b = noisy_energy_mc(m, p, noise(0.01, 0.1), 40, 77, 3);
  auto c = noisy_energy_mc(m, p, noise(0.01, 0.1), 40, 78, 1);
  EXPECT_EQ(a.delta_e, b.delta_e);
  EXPECT_NE(a.delta_e, c.delta_e);
  EXPECT_THROW(noisy_energy_mc(m, p, noise(0.01, 0.1), 1, 77), std::invalid_argument);
}

TEST(NoisyEnergy, ErrorGrowsWithNoise) {
  auto m = model_of(fixture("h2"));
  auto p = optimum(m);
  double prev = -1.0;
  for (double r : {0.0, 0.05, 0.2, 0.5}) {
    auto e = noisy_energy_mc(m, p, noise(0.0, r), 100, 5);
    EXPECT_GT(e.mean_delta_e, prev - 1e-12);
    for (double d : e.delta_e) EXPECT_GE(d, -1e-10);
    prev = e.mean_delta_e;
  }
  EXPECT_GT(prev, 1e-6);
}

TEST(NoiseSweep, GridCsvAndThreshold) {
  auto m = model_of(fixture("h2"));
  auto p = optimum(m);
  SweepSpec s;
  s.delta_wr = {0.0, 0.01};
  s.delta_r = {0.0, 0.3};
  s.samples = 20;
  s.seed = 4;
  auto cells = noise_sweep(m, p, noise(0, 0), s);
  ASSERT_EQ(cells.size(), 4u);
  std::ostringstream os;
  write_sweep_csv(os, cells);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "delta_wr,delta_r,mean_dE,stderr,n");
  auto again = noise_sweep(m, p, noise(0, 0), s);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(cells[k].result.delta_e, again[k].result.delta_e);
  auto hit = threshold_crossing(cells, 1e-9);
  ASSERT_TRUE(hit);
  EXPECT_GT(hit->delta_wr + hit->delta_r, 0.0);
  EXPECT_FALSE(threshold_crossing(cells, 1e9));
}

TEST(Parallel, CoversEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(50, 3,
                            [](std::size_t i) {
                              if (i == 17) throw std::runtime_error("x");
                            }),
               std::runtime_error);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t a = 0; a < 100; ++a) {
    for (std::uint64_t b = 0; b < 10; ++b) seeds.insert(derive_seed(1, a, b));
  }
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(derive_seed(5, 1, 2), derive_seed(5, 1, 2));
}

}  // namespace
}  // namespace fermiproc
