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

// Numerical re-derivation of short native-gate circuits for the
// density-dependent (DT) and pair (PT) tunneling gates.
//
// A template is a list of layers of parametrized T / INT slots; slots in one
// layer act on disjoint modes. The search minimizes the phase-insensitive
// Frobenius distance to the target on the full Fock space of the smallest
// register (3 modes for DT, 4 for PT) by Levenberg-Marquardt from random
// starting points.

#ifndef FERMIPROC_DECOMPOSITION_HPP_
#define FERMIPROC_DECOMPOSITION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fermiproc/circuit.hpp"

namespace fermiproc {

struct TemplateSlot {
  GateKind kind = GateKind::kTunneling;  // kTunneling or kInteraction
  std::vector<int> sites;
};

struct DecompositionTemplate {
  GateKind target = GateKind::kDensityTunneling;
  std::string name;
  std::vector<std::vector<TemplateSlot>> layers;
  std::vector<double> parameters;

  int mode_count() const { return target == GateKind::kDensityTunneling ? 3 : 4; }
  int depth() const { return static_cast<int>(layers.size()); }
  int slot_count() const;
  int parameter_count() const;
  // Gate list in application order for a parameter vector.
  std::vector<GateSpec> gates(const std::vector<double>& params) const;
  std::vector<GateSpec> gates() const { return gates(parameters); }
  // Throws if a layer reuses a mode or a slot is not a T / INT gate.
  void validate() const;
};

// Target gate on modes (0, 1, 2) or (0, 1, 2, 3).
GateSpec decomposition_target(GateKind target, double theta1, double theta2);
Mat decomposition_target_matrix(GateKind target, double theta1, double theta2);
Mat template_unitary(const DecompositionTemplate& tmpl, const std::vector<double>& params);

struct SearchOptions {
  double tolerance = 1e-9;
  int restarts = 64;
  // Residual evaluations per start, finite-difference Jacobians included.
  int max_evaluations = 200000;
  std::uint64_t seed = 1;
};

struct DecompositionResult {
  DecompositionTemplate solved;
  double residual = 0.0;
  bool success = false;
  int starts_used = 0;
};

// Tries the warm start (when given) and then up to `restarts` random starts,
// stopping at the first residual below tolerance.
DecompositionResult find_decomposition(GateKind target, double theta1, double theta2,
                                       const DecompositionTemplate& tmpl, const SearchOptions& options,
                                       const std::optional<std::vector<double>>& warm_start = std::nullopt);

// T(0,2) INT(1,2) T(0,2) INT(1,2): four gates, four layers.
DecompositionTemplate dt_template();
// T(0,2)|T(1,3), INT(0,3)|INT(1,2), T|T, INT|INT, T|T: ten gates, five layers.
DecompositionTemplate pt_layered_template();
// Strictly sequential five-gate templates alternating T and INT slots over
// the pairings that carry the pair-hopping amplitude.
std::vector<DecompositionTemplate> pt_five_gate_templates();

// Closed form exp(-i t1 (e^{-i t2} c+_i n_j c_k + h.c.)) =
//   T_ik(t1, t2, 0) INT_jk(pi) T_ik(-t1, t2, 0) INT_jk(pi)   (right to left).
std::vector<GateSpec> dt_decomposition(int i, int j, int k, double theta1, double theta2);

// The same pattern with INT_jk replaced by CINT_{a,j,k}: the DT gate
// controlled by qubit a.
std::vector<GateSpec> controlled_dt_decomposition(int ancilla, int i, int j, int k, double theta1, double theta2);

}  // namespace fermiproc

#endif  // FERMIPROC_DECOMPOSITION_HPP_
