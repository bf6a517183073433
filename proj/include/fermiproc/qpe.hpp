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

// Iterative (Kitaev-style) phase estimation with one qubit ancilla.
//
// Eigenphases follow U|psi> = exp(-2 pi i phi)|psi>, phi in [0, 1). The
// ancilla idles in |1~> (qubit bit 0); a round reads out bit b_m with the
// ancilla in |1> meaning b_m = 1.

#ifndef FERMIPROC_QPE_HPP_
#define FERMIPROC_QPE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "fermiproc/circuit.hpp"

namespace fermiproc {

// Circuit implementing the ancilla-controlled U^power on the full register.
using ControlledPowerBuilder = std::function<Circuit(std::uint64_t power)>;

struct QpeOptions {
  int bits = 8;
  // Sample each ancilla readout instead of taking the likelier outcome.
  bool sample_shots = false;
  std::uint64_t seed = 0;
};

struct QpeResult {
  std::vector<int> bits;           // b_1 .. b_k
  double phase = 0.0;              // sum_r b_r 2^-r
  std::vector<double> confidence;  // probability of the recorded outcome, per round (b_k first)
  double min_confidence = 1.0;
  StateVector final_state;
};

QpeResult iterative_qpe(const ControlledPowerBuilder& builder, const StateVector& initial, int ancilla,
                        const QpeOptions& options);

// Distance between two phases on the unit circle, in turns.
double phase_distance(double a, double b);

// Controlled version of a circuit: T -> CT, N(i) -> INT(a, i), fermionic
// INT -> CINT, DT -> its controlled four-gate form. Other gates throw.
Circuit controlled_circuit(const Circuit& circuit, int ancilla);

// U = exp(-i theta n_site) on a fermion or qubit site.
ControlledPowerBuilder controlled_number_phase(const std::vector<SiteKind>& sites, int ancilla, int site,
                                               double theta);
// U = T(t) on modes (i, j).
ControlledPowerBuilder controlled_tunneling_power(const std::vector<SiteKind>& sites, int ancilla, int i, int j,
                                                  const TunnelingParams& t);
// U = the given circuit, repeated.
ControlledPowerBuilder controlled_repeat(const Circuit& circuit, int ancilla);

}  // namespace fermiproc

#endif  // FERMIPROC_QPE_HPP_
