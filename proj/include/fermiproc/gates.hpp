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

// Native gates and the fermion-qubit extension.
//
//   T     U(t)   = exp(-i[(t1/2)(e^{-i t2} c+_i c_j + h.c.) + (t3/2)(n_i - n_j)])
//   INT   U(int) = exp(-i t n_i n_j)
//   N     U(n)   = exp(-i t n_i)
//   DT    U(dt)  = exp(-i t1 (e^{-i t2} c+_i n_j c_k + h.c.))
//   PT    U(pt)  = exp(-i t1 (e^{-i t2} c+_i c+_j c_k c_l + h.c.))
//   RX/RZ        = exp(-i (t/2) X), exp(-i (t/2) Z) on a qubit site
//   CINT         = |1~><1~| (x) 1 + |1><1| (x) exp(-i t n_j n_k)
//   CT           = |1~><1~| (x) 1 + |1><1| (x) U(t)_{ij}
//
// On a qubit site the occupation n is the projector on |1>, and Z|1> = |1>.
// INT, N and CINT accept qubit sites wherever an occupation appears.

#ifndef FERMIPROC_GATES_HPP_
#define FERMIPROC_GATES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "fermiproc/fock.hpp"

namespace fermiproc {

struct TunnelingParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

enum class GateKind {
  kTunneling,
  kInteraction,
  kNumberPhase,
  kDensityTunneling,
  kPairTunneling,
  kQubitRx,
  kQubitRz,
  kControlledInteraction,
  kControlledTunneling,
};

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);

struct GateSpec {
  GateKind kind = GateKind::kTunneling;
  std::vector<int> sites;
  std::vector<double> params;

  GateSpec() = default;
  GateSpec(GateKind k, std::vector<int> s, std::vector<double> p);

  static GateSpec tunneling(int i, int j, TunnelingParams t);
  static GateSpec interaction(int i, int j, double theta);
  static GateSpec number_phase(int i, double theta);
  static GateSpec density_tunneling(int i, int j, int k, double theta1, double theta2);
  static GateSpec pair_tunneling(int i, int j, int k, int l, double theta1, double theta2);
  static GateSpec rx(int site, double theta);
  static GateSpec rz(int site, double theta);
  static GateSpec controlled_interaction(int control, int j, int k, double theta = kPi);
  static GateSpec controlled_tunneling(int control, int i, int j, TunnelingParams t);

  bool operator==(const GateSpec&) const = default;
};

// Throws when sites or parameters do not fit the register (wrong kind of
// site, out of range, or a gate that would change the particle number).
void validate_gate(const GateSpec& gate, const MixedRegister& reg);
void validate_gate(const GateSpec& gate, const std::vector<SiteKind>& sites);

void apply_gate(const GateSpec& gate, StateVector& state);

void tunneling_gate(const TunnelingParams& t, int i, int j, StateVector& state);
void interaction_gate(double theta, int i, int j, StateVector& state);
void number_phase_gate(double theta, int i, StateVector& state);
void dt_gate(double theta1, double theta2, int i, int j, int k, StateVector& state);
void pt_gate(double theta1, double theta2, int i, int j, int k, int l, StateVector& state);
enum class QubitAxis { kX, kZ };
void qubit_rotation(QubitAxis axis, double theta, int site, StateVector& state);
void controlled_interaction(int control, int j, int k, StateVector& state, double theta = kPi);
void controlled_tunneling(const TunnelingParams& t, int control, int i, int j, StateVector& state);

// exp(i phi01 (n_i + n_j) + i phi11 n_i n_j) in the sense of the pulse
// sequence: |10>, |01> pick up e^{i phi01} and |11> picks up e^{i phi11}.
void rydberg_protocol(double phi01, double phi11, int i, int j, StateVector& state);

// Dense matrix of a gate, built column by column from the closed-form action.
Mat gate_matrix(const GateSpec& gate, const MixedRegister& reg);

// Hermitian G with gate = exp(-i G); the reference for the closed forms.
Mat generator_matrix(const GateSpec& gate, const MixedRegister& reg);

// Dense occupation operator of a site (fermion number or qubit |1><1|).
Mat site_number_operator(const MixedRegister& reg, int site);

// Dense Pauli operator on a qubit site; 'X', 'Y' or 'Z'.
Mat qubit_pauli(const MixedRegister& reg, int site, char pauli);

// A number-conserving operator on two fermionic modes (i, j), stored as its
// action on |00>, |11> and the single-particle block in the order
// (|1_i 0_j>, |0_i 1_j>). Off-diagonal single-block entries are the
// coefficients of c+_i c_j and c+_j c_i, so Jordan-Wigner signs of the
// embedding register are applied on top.
struct TwoModeOperator {
  cplx empty{1.0, 0.0};
  cplx full{1.0, 0.0};
  Eigen::Matrix2cd single = Eigen::Matrix2cd::Identity();
};

void apply_two_mode_operator(const TwoModeOperator& op, int i, int j, StateVector& state);

// Two-mode operator read off a 4x4 matrix on the full two-mode Fock space
// ordered |00>, |10>, |01>, |11>. Entries that would change the particle
// number are ignored.
TwoModeOperator two_mode_operator_from_matrix(const Mat& m);

// The shuttle sequence realizing U(t)_{ij}. Each site holds a storage level
// and a transport level; the transport level of the moving tweezer is an
// extra fermionic mode P. A pulse R_s(theta) on site s is exp(-i[(t1/2)
// (cos t2 X + sin t2 Y) + (t3/2) Z]) on (transport, storage) of site s,
// i.e. the tunneling gate between P and s with P listed first.
struct ShuttleStep {
  enum class Kind { kPulse, kMove };
  Kind kind = Kind::kPulse;
  int site = 0;           // pulse site, or move target
  int from = 0;           // move origin
  TunnelingParams pulse;  // pulse parameters
  std::string label;
};

struct ShuttleResult {
  std::vector<ShuttleStep> steps;
  // Unitary on the local register (i, j, P) = modes (0, 1, 2), full space.
  Mat local_unitary;
  // The restriction to the P-empty block: modes (i, j), order |00>,|10>,|01>,|11>.
  Mat unitary;
};

ShuttleResult shuttle_protocol(const TunnelingParams& t, int i, int j);

// Composes three pulses (steps 1, 3, 5) on the local register (0, 1, 2).
Mat shuttle_local_unitary(const TunnelingParams& pulse1, const TunnelingParams& pulse3,
                          const TunnelingParams& pulse5);

}  // namespace fermiproc

#endif  // FERMIPROC_GATES_HPP_
