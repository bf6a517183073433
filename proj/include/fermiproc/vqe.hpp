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

// Disentangled unitary coupled cluster: ansatz circuits, energies,
// optimization and the Monte Carlo energy study under shuttle noise.

#ifndef FERMIPROC_VQE_HPP_
#define FERMIPROC_VQE_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "fermiproc/circuit.hpp"
#include "fermiproc/hamiltonian.hpp"
#include "fermiproc/noise.hpp"
#include "fermiproc/optimize.hpp"

namespace fermiproc {

inline constexpr double kChemicalAccuracy = 1.59e-3;  // Ha

struct UCCAnsatz {
  int mode_count = 0;
  Bits reference = 0;
  std::vector<int> occupied;
  std::vector<int> virtuals;
  // Gate order: every double (i < j occupied, a < b virtual) first, then
  // every single (i occupied, a virtual), both lexicographic.
  std::vector<std::array<int, 4>> doubles;
  std::vector<std::array<int, 2>> singles;

  static UCCAnsatz from_reference(int mode_count, Bits reference);
  std::size_t parameter_count() const { return doubles.size() + singles.size(); }
  int particle_number() const { return static_cast<int>(occupied.size()); }
};

// Doubles are PT(theta, pi/2) on (i, j, a, b); singles T(theta, pi/2, 0) on
// (i, a). Parameters follow the gate order.
Circuit build_ansatz_circuit(const UCCAnsatz& ansatz, const std::vector<double>& params);

// <psi|H|psi> with H given on the state's register basis. Throws when the
// imaginary part exceeds 1e-10 or the dimensions differ.
double energy(const StateVector& state, const Mat& h);

class EnergyModel {
 public:
  EnergyModel(const SecondQuantizedHamiltonian& h, UCCAnsatz ansatz);

  const UCCAnsatz& ansatz() const { return ansatz_; }
  const std::shared_ptr<const MixedRegister>& reg() const { return reg_; }
  const Mat& matrix() const { return h_; }
  double exact_ground_energy() const { return e0_; }

  StateVector reference_state() const;
  StateVector prepare(const std::vector<double>& params) const;
  double evaluate(const std::vector<double>& params) const;

 private:
  UCCAnsatz ansatz_;
  std::shared_ptr<const MixedRegister> reg_;
  Mat h_;
  double e0_ = 0.0;
};

struct VQEResult {
  std::vector<double> params;
  double energy = 0.0;
  double exact_energy = 0.0;
  double delta_e = 0.0;
  std::vector<double> trace;
  int evaluations = 0;
  bool converged = false;
  bool budget_exhausted = false;
};

// Minimizes from all-zero parameters; options.seed is replaced by `seed`.
VQEResult optimize_vqe(const EnergyModel& model, MinimizeOptions options, std::uint64_t seed);

struct NoiseModel {
  TrapParams trap;
  NoiseDistribution dist;
  double pulse_time_s = 10e-6;
  OverlapMode overlap = OverlapMode::kTransverse;
  // One error triple per circuit execution shared by every tunneling gate,
  // instead of fresh draws for each pulse.
  bool per_run = false;
};

// Executes the circuit with every T gate replaced by its perturbed shuttle
// sequence. Other gates are ideal. Leakage out of the computational space is
// dropped and the state renormalized.
void apply_noisy_circuit(const Circuit& circuit, StateVector& state, const NoiseModel& model, std::mt19937_64& rng);

struct NoisyEnergy {
  double mean_delta_e = 0.0;
  double stderr_delta_e = 0.0;
  int samples = 0;
  std::vector<double> delta_e;
};

NoisyEnergy noisy_energy_mc(const EnergyModel& model, const std::vector<double>& params, const NoiseModel& noise,
                            int samples, std::uint64_t seed, int workers = 1);

struct SweepSpec {
  std::vector<double> delta_wr;  // fractions of omega_r
  std::vector<double> delta_r;   // fractions of r_zp
  double delta_z = 0.0;          // fraction of z_zp, fixed over the grid
  int samples = 200;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct SweepCell {
  double delta_wr = 0.0;
  double delta_r = 0.0;
  NoisyEnergy result;
};

std::vector<SweepCell> noise_sweep(const EnergyModel& model, const std::vector<double>& params, NoiseModel noise,
                                   const SweepSpec& spec);

// Columns: delta_wr, delta_r, mean_dE, stderr, n.
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

// First cell (by delta_wr + delta_r, then delta_wr) whose mean exceeds the threshold.
std::optional<SweepCell> threshold_crossing(const std::vector<SweepCell>& cells,
                                            double threshold = kChemicalAccuracy);

}  // namespace fermiproc

#endif  // FERMIPROC_VQE_HPP_
