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

// Layered circuits over the native gate set.
//
// The support of a hopping-type gate (T, CT, DT, PT) is every fermionic site
// between its outermost fermionic targets, i.e. the Jordan-Wigner string,
// plus its remaining targets. Diagonal gates and qubit rotations are
// supported on their targets only. Gates sharing a layer have disjoint
// supports.
//
// Text form: an optional first line "SITES <F|Q per site>", then one gate per
// line as "KIND site... param...", with layers separated by a line "---".

#ifndef FERMIPROC_CIRCUIT_HPP_
#define FERMIPROC_CIRCUIT_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fermiproc/gates.hpp"
#include "fermiproc/hamiltonian.hpp"

namespace fermiproc {

std::vector<int> gate_support(const GateSpec& gate, const std::vector<SiteKind>& sites);

class Circuit {
 public:
  explicit Circuit(int site_count = 0);
  explicit Circuit(std::vector<SiteKind> sites);

  const std::vector<SiteKind>& sites() const { return sites_; }
  int site_count() const { return static_cast<int>(sites_.size()); }

  // Places the gate in the earliest layer after every layer it overlaps.
  // The product of all gates keeps the order of append calls.
  void append(const GateSpec& gate);
  void append(const Circuit& other);
  // Opens a new layer with exactly these gates; throws if they overlap.
  void append_layer(const std::vector<GateSpec>& gates);

  const std::vector<std::vector<GateSpec>>& layers() const { return layers_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  std::size_t gate_count() const;
  std::map<GateKind, int> gate_counts() const;
  // Gates in application order (layer by layer).
  std::vector<GateSpec> gates() const;

  // Throws std::logic_error if a layer has overlapping supports.
  void check_layers() const;

 private:
  bool overlaps(const std::vector<int>& a, const std::vector<int>& b) const;

  std::vector<SiteKind> sites_;
  std::vector<std::vector<GateSpec>> layers_;
  std::vector<std::vector<std::vector<int>>> supports_;
};

// Greedy maximal packing: repeatedly sweeps the remaining gates in order and
// fills one layer with every gate disjoint from those already taken. The
// resulting product differs from the input order whenever non-commuting
// gates get reordered.
Circuit pack_layers(const std::vector<GateSpec>& gates, const std::vector<SiteKind>& sites);

void apply_circuit(const Circuit& circuit, StateVector& state);
Mat circuit_unitary(const Circuit& circuit, const MixedRegister& reg);

void write_circuit(std::ostream& out, const Circuit& circuit);
Circuit read_circuit(std::istream& in);
std::string circuit_to_string(const Circuit& circuit);
Circuit circuit_from_string(const std::string& text);

// First-order Trotter step exp(-i H dt) ~ prod of native gates:
//   h1_ij c+_i c_j + h.c.   -> T(2|h1_ij| dt, -arg h1_ij, 0) on (i, j)
//   h1_ii n_i               -> N(h1_ii dt)
//   w n_a n_b               -> INT(w dt)
//   w c+_x n_m c_y + h.c.   -> DT(|w| dt, -arg w) on (x, m, y)
//   w c+_a c+_b c_c c_d + h.c. -> PT(|w| dt, -arg w) on (a, b, c, d)
// after the two-body table is brought to normal order a < b, c < d and its
// Hermitian pairs are merged. Layers are packed greedily.
Circuit trotter_step(const SecondQuantizedHamiltonian& h, double dt);

}  // namespace fermiproc

#endif  // FERMIPROC_CIRCUIT_HPP_
