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

#include "fermiproc/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace fermiproc {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr KindInfo kKinds[] = {
    {GateKind::kTunneling, "T", 2, 3},
    {GateKind::kInteraction, "INT", 2, 1},
    {GateKind::kNumberPhase, "N", 1, 1},
    {GateKind::kDensityTunneling, "DT", 3, 2},
    {GateKind::kPairTunneling, "PT", 4, 2},
    {GateKind::kQubitRx, "RX", 1, 1},
    {GateKind::kQubitRz, "RZ", 1, 1},
    {GateKind::kControlledInteraction, "CINT", 3, 1},
    {GateKind::kControlledTunneling, "CT", 3, 3},
};

const KindInfo& info(GateKind kind) {
  for (const KindInfo& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw std::logic_error("unknown gate kind");
}

bool site_occupied(const MixedRegister& reg, int site, Bits fermions, Bits qubits) {
  int local = reg.local_index(site);
  return reg.is_qubit(site) ? ((qubits >> local) & 1U) : occupied(fermions, local);
}

Bits mode_bit(const MixedRegister& reg, int site) { return Bits{1} << reg.local_index(site); }

// exp(-i G) for G = [[d, g], [conj(g), -d]].
Eigen::Matrix2cd block_exp(cplx g, double d) {
  double w = std::sqrt(d * d + std::norm(g));
  double c = std::cos(w);
  double sw = w > 0.0 ? std::sin(w) / w : 1.0;
  Eigen::Matrix2cd u;
  u(0, 0) = cplx(c, -sw * d);
  u(1, 1) = cplx(c, sw * d);
  u(0, 1) = -kI * sw * g;
  u(1, 0) = -kI * sw * std::conj(g);
  return u;
}

// Applies exp(-i G) on every two-dimensional block {a, b} where a matches
// `pattern` under `mask`, b = a ^ flip, and G restricted to the block is
// [[d, g s], [conj(g s), -d]] with s the sign of `hop` |b> = s |a>.
// An optional qubit control restricts the action to qubit bit = 1.
void apply_blocks(StateVector& state, Bits mask, Bits pattern, Bits flip, const LadderTerm& hop,
                  cplx g, double d, int control_qubit) {
  const MixedRegister& reg = *state.reg;
  const FockBasis& basis = reg.fock();
  const Bits nq = Bits{1} << reg.qubit_count();
  const Bits qmask = control_qubit >= 0 ? (Bits{1} << control_qubit) : 0;
  const Eigen::Matrix2cd u_plus = block_exp(g, d);
  const Eigen::Matrix2cd u_minus = block_exp(-g, d);
  for (std::size_t fa = 0; fa < basis.size(); ++fa) {
    Bits a = basis.state(fa);
    if ((a & mask) != pattern) continue;
    Bits b = a ^ flip;
    auto img = ladder_action(hop, b);
    if (!img || img->first != a) throw std::logic_error("block partner mismatch");
    std::int64_t fb = basis.index(b);
    if (fb < 0) throw std::logic_error("block partner outside the basis");
    const Eigen::Matrix2cd& u = img->second > 0 ? u_plus : u_minus;
    for (Bits q = 0; q < nq; ++q) {
      if ((q & qmask) != qmask) continue;
      auto xa = static_cast<Eigen::Index>(reg.index(fa, q));
      auto xb = static_cast<Eigen::Index>(reg.index(fb, q));
      cplx va = state.amplitudes[xa];
      cplx vb = state.amplitudes[xb];
      state.amplitudes[xa] = u(0, 0) * va + u(0, 1) * vb;
      state.amplitudes[xb] = u(1, 0) * va + u(1, 1) * vb;
    }
  }
}

template <class PhaseFn>
void apply_diagonal(StateVector& state, PhaseFn phase) {
  const MixedRegister& reg = *state.reg;
  const FockBasis& basis = reg.fock();
  const Bits nq = Bits{1} << reg.qubit_count();
  for (std::size_t f = 0; f < basis.size(); ++f) {
    Bits bits = basis.state(f);
    for (Bits q = 0; q < nq; ++q) {
      cplx p = phase(bits, q);
      if (p != cplx(1.0)) state.amplitudes[static_cast<Eigen::Index>(reg.index(f, q))] *= p;
    }
  }
}

void tunneling_blocks(const TunnelingParams& t, int i, int j, StateVector& state, int control_qubit) {
  const MixedRegister& reg = *state.reg;
  Bits bi = mode_bit(reg, i);
  Bits bj = mode_bit(reg, j);
  LadderTerm hop({reg.local_index(i)}, {reg.local_index(j)});
  cplx g = 0.5 * t.theta1 * std::exp(-kI * t.theta2);
  apply_blocks(state, bi | bj, bi, bi | bj, hop, g, 0.5 * t.theta3, control_qubit);
}

void require_distinct(const std::vector<int>& sites) {
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      if (sites[a] == sites[b]) throw std::invalid_argument("gate targets must be distinct sites");
    }
  }
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (const KindInfo& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) { return info(kind).arity; }
int gate_param_count(GateKind kind) { return info(kind).params; }

GateSpec::GateSpec(GateKind k, std::vector<int> s, std::vector<double> p)
    : kind(k), sites(std::move(s)), params(std::move(p)) {
  if (static_cast<int>(sites.size()) != gate_arity(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                std::to_string(gate_arity(kind)) + " sites");
  }
  if (static_cast<int>(params.size()) != gate_param_count(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                std::to_string(gate_param_count(kind)) + " parameters");
  }
  require_distinct(sites);
  for (double x : params) {
    if (!std::isfinite(x)) throw std::invalid_argument("gate parameters must be finite");
  }
}

GateSpec GateSpec::tunneling(int i, int j, TunnelingParams t) {
  return {GateKind::kTunneling, {i, j}, {t.theta1, t.theta2, t.theta3}};
}
GateSpec GateSpec::interaction(int i, int j, double theta) { return {GateKind::kInteraction, {i, j}, {theta}}; }
GateSpec GateSpec::number_phase(int i, double theta) { return {GateKind::kNumberPhase, {i}, {theta}}; }
GateSpec GateSpec::density_tunneling(int i, int j, int k, double theta1, double theta2) {
  return {GateKind::kDensityTunneling, {i, j, k}, {theta1, theta2}};
}
GateSpec GateSpec::pair_tunneling(int i, int j, int k, int l, double theta1, double theta2) {
  return {GateKind::kPairTunneling, {i, j, k, l}, {theta1, theta2}};
}
GateSpec GateSpec::rx(int site, double theta) { return {GateKind::kQubitRx, {site}, {theta}}; }
GateSpec GateSpec::rz(int site, double theta) { return {GateKind::kQubitRz, {site}, {theta}}; }
GateSpec GateSpec::controlled_interaction(int control, int j, int k, double theta) {
  return {GateKind::kControlledInteraction, {control, j, k}, {theta}};
}
GateSpec GateSpec::controlled_tunneling(int control, int i, int j, TunnelingParams t) {
  return {GateKind::kControlledTunneling, {control, i, j}, {t.theta1, t.theta2, t.theta3}};
}

void validate_gate(const GateSpec& gate, const std::vector<SiteKind>& sites) {
  if (static_cast<int>(gate.sites.size()) != gate_arity(gate.kind) ||
      static_cast<int>(gate.params.size()) != gate_param_count(gate.kind)) {
    throw std::invalid_argument("gate arity mismatch");
  }
  require_distinct(gate.sites);
  const int n = static_cast<int>(sites.size());
  for (int s : gate.sites) {
    if (s < 0 || s >= n) throw std::out_of_range("gate site " + std::to_string(s) + " out of range");
  }
  auto fermion = [&](int s) {
    if (sites[s] != SiteKind::kFermion) {
      throw std::invalid_argument(std::string(gate_name(gate.kind)) + " needs a fermionic site at " +
                                  std::to_string(s));
    }
  };
  auto qubit = [&](int s) {
    if (sites[s] != SiteKind::kQubit) {
      throw std::invalid_argument(std::string(gate_name(gate.kind)) + " needs a qubit site at " + std::to_string(s));
    }
  };
  switch (gate.kind) {
    case GateKind::kTunneling:
    case GateKind::kDensityTunneling:
    case GateKind::kPairTunneling:
      for (int s : gate.sites) fermion(s);
      break;
    case GateKind::kInteraction:
    case GateKind::kNumberPhase:
      break;
    case GateKind::kQubitRx:
    case GateKind::kQubitRz:
      qubit(gate.sites[0]);
      break;
    case GateKind::kControlledInteraction:
    case GateKind::kControlledTunneling:
      qubit(gate.sites[0]);
      fermion(gate.sites[1]);
      fermion(gate.sites[2]);
      break;
  }
}

void validate_gate(const GateSpec& gate, const MixedRegister& reg) { validate_gate(gate, reg.sites()); }

void tunneling_gate(const TunnelingParams& t, int i, int j, StateVector& state) {
  apply_gate(GateSpec::tunneling(i, j, t), state);
}

void interaction_gate(double theta, int i, int j, StateVector& state) {
  apply_gate(GateSpec::interaction(i, j, theta), state);
}

void number_phase_gate(double theta, int i, StateVector& state) {
  apply_gate(GateSpec::number_phase(i, theta), state);
}

void dt_gate(double theta1, double theta2, int i, int j, int k, StateVector& state) {
  apply_gate(GateSpec::density_tunneling(i, j, k, theta1, theta2), state);
}

void pt_gate(double theta1, double theta2, int i, int j, int k, int l, StateVector& state) {
  apply_gate(GateSpec::pair_tunneling(i, j, k, l, theta1, theta2), state);
}

void qubit_rotation(QubitAxis axis, double theta, int site, StateVector& state) {
  apply_gate(axis == QubitAxis::kX ? GateSpec::rx(site, theta) : GateSpec::rz(site, theta), state);
}

void controlled_interaction(int control, int j, int k, StateVector& state, double theta) {
  apply_gate(GateSpec::controlled_interaction(control, j, k, theta), state);
}

void controlled_tunneling(const TunnelingParams& t, int control, int i, int j, StateVector& state) {
  apply_gate(GateSpec::controlled_tunneling(control, i, j, t), state);
}

void apply_gate(const GateSpec& gate, StateVector& state) {
  const MixedRegister& reg = *state.reg;
  validate_gate(gate, reg);
  const auto& s = gate.sites;
  const auto& p = gate.params;
  switch (gate.kind) {
    case GateKind::kTunneling:
      tunneling_blocks({p[0], p[1], p[2]}, s[0], s[1], state, -1);
      break;
    case GateKind::kControlledTunneling:
      tunneling_blocks({p[0], p[1], p[2]}, s[1], s[2], state, reg.local_index(s[0]));
      break;
    case GateKind::kInteraction: {
      cplx ph = std::exp(-kI * p[0]);
      apply_diagonal(state, [&](Bits f, Bits q) {
        return site_occupied(reg, s[0], f, q) && site_occupied(reg, s[1], f, q) ? ph : cplx(1.0);
      });
      break;
    }
    case GateKind::kNumberPhase: {
      cplx ph = std::exp(-kI * p[0]);
      apply_diagonal(state, [&](Bits f, Bits q) { return site_occupied(reg, s[0], f, q) ? ph : cplx(1.0); });
      break;
    }
    case GateKind::kControlledInteraction: {
      cplx ph = std::exp(-kI * p[0]);
      apply_diagonal(state, [&](Bits f, Bits q) {
        return site_occupied(reg, s[0], f, q) && site_occupied(reg, s[1], f, q) &&
                       site_occupied(reg, s[2], f, q)
                   ? ph
                   : cplx(1.0);
      });
      break;
    }
    case GateKind::kDensityTunneling: {
      Bits bi = mode_bit(reg, s[0]);
      Bits bj = mode_bit(reg, s[1]);
      Bits bk = mode_bit(reg, s[2]);
      LadderTerm hop({reg.local_index(s[0])}, {reg.local_index(s[2])});
      apply_blocks(state, bi | bj | bk, bi | bj, bi | bk, hop, p[0] * std::exp(-kI * p[1]), 0.0, -1);
      break;
    }
    case GateKind::kPairTunneling: {
      Bits bij = mode_bit(reg, s[0]) | mode_bit(reg, s[1]);
      Bits bkl = mode_bit(reg, s[2]) | mode_bit(reg, s[3]);
      LadderTerm hop({reg.local_index(s[0]), reg.local_index(s[1])},
                     {reg.local_index(s[2]), reg.local_index(s[3])});
      apply_blocks(state, bij | bkl, bij, bij | bkl, hop, p[0] * std::exp(-kI * p[1]), 0.0, -1);
      break;
    }
    case GateKind::kQubitRx:
    case GateKind::kQubitRz: {
      const Bits bit = Bits{1} << reg.local_index(s[0]);
      const auto n = static_cast<Eigen::Index>(reg.dim());
      double c = std::cos(p[0] / 2);
      double sn = std::sin(p[0] / 2);
      for (Eigen::Index x = 0; x < n; ++x) {
        if (static_cast<Bits>(x) & bit) continue;
        Eigen::Index y = x | static_cast<Eigen::Index>(bit);
        cplx v0 = state.amplitudes[x];  // |1~>
        cplx v1 = state.amplitudes[y];  // |1>
        if (gate.kind == GateKind::kQubitRx) {
          state.amplitudes[x] = c * v0 - kI * sn * v1;
          state.amplitudes[y] = -kI * sn * v0 + c * v1;
        } else {
          state.amplitudes[x] = cplx(c, sn) * v0;
          state.amplitudes[y] = cplx(c, -sn) * v1;
        }
      }
      break;
    }
  }
}

void rydberg_protocol(double phi01, double phi11, int i, int j, StateVector& state) {
  const MixedRegister& reg = *state.reg;
  if (i == j) throw std::invalid_argument("Rydberg pulse needs two distinct sites");
  if (i < 0 || j < 0 || i >= reg.site_count() || j >= reg.site_count()) {
    throw std::out_of_range("site index out of range");
  }
  cplx p1 = std::exp(kI * phi01);
  cplx p2 = std::exp(kI * phi11);
  apply_diagonal(state, [&](Bits f, Bits q) {
    bool a = site_occupied(reg, i, f, q);
    bool b = site_occupied(reg, j, f, q);
    if (a && b) return p2;
    if (a || b) return p1;
    return cplx(1.0);
  });
}

Mat gate_matrix(const GateSpec& gate, const MixedRegister& reg) {
  auto shared = std::make_shared<const MixedRegister>(reg);
  const auto n = static_cast<Eigen::Index>(reg.dim());
  Mat m(n, n);
  StateVector col(shared);
  for (Eigen::Index c = 0; c < n; ++c) {
    col.amplitudes.setZero();
    col.amplitudes[c] = 1.0;
    apply_gate(gate, col);
    m.col(c) = col.amplitudes;
  }
  return m;
}

Mat site_number_operator(const MixedRegister& reg, int site) {
  const auto n = static_cast<Eigen::Index>(reg.dim());
  Mat m = Mat::Zero(n, n);
  const Bits nq = Bits{1} << reg.qubit_count();
  for (std::size_t f = 0; f < reg.fock().size(); ++f) {
    for (Bits q = 0; q < nq; ++q) {
      if (site_occupied(reg, site, reg.fock().state(f), q)) {
        auto x = static_cast<Eigen::Index>(reg.index(f, q));
        m(x, x) = 1.0;
      }
    }
  }
  return m;
}

Mat qubit_pauli(const MixedRegister& reg, int site, char pauli) {
  reg.check_qubit(site);
  const auto n = static_cast<Eigen::Index>(reg.dim());
  const auto bit = Eigen::Index{1} << reg.local_index(site);
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    bool one = x & bit;
    Eigen::Index y = x ^ bit;
    switch (pauli) {
      case 'X':
        m(y, x) = 1.0;
        break;
      case 'Y':
        // Y|1~> = i|1>, Y|1> = -i|1~> with |1~> as the Z = -1 level.
        m(y, x) = one ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        break;
      case 'Z':
        m(x, x) = one ? 1.0 : -1.0;
        break;
      default:
        throw std::invalid_argument("Pauli label must be X, Y or Z");
    }
  }
  return m;
}

Mat generator_matrix(const GateSpec& gate, const MixedRegister& reg) {
  validate_gate(gate, reg);
  const auto& s = gate.sites;
  const auto& p = gate.params;
  auto m = [&](int site) { return reg.local_index(site); };
  auto tunneling_gen = [&](int i, int j, double t1, double t2, double t3) {
    LadderTerm hop({m(i)}, {m(j)}, 0.5 * t1 * std::exp(-kI * t2));
    std::vector<LadderTerm> terms{hop, hop.adjoint(), LadderTerm({m(i)}, {m(i)}, 0.5 * t3),
                                  LadderTerm({m(j)}, {m(j)}, -0.5 * t3)};
    return dense_matrix(terms, reg);
  };
  switch (gate.kind) {
    case GateKind::kTunneling:
      return tunneling_gen(s[0], s[1], p[0], p[1], p[2]);
    case GateKind::kControlledTunneling:
      return site_number_operator(reg, s[0]) * tunneling_gen(s[1], s[2], p[0], p[1], p[2]);
    case GateKind::kInteraction:
      return p[0] * site_number_operator(reg, s[0]) * site_number_operator(reg, s[1]);
    case GateKind::kNumberPhase:
      return p[0] * site_number_operator(reg, s[0]);
    case GateKind::kControlledInteraction:
      return p[0] * site_number_operator(reg, s[0]) * site_number_operator(reg, s[1]) *
             site_number_operator(reg, s[2]);
    case GateKind::kDensityTunneling: {
      LadderTerm t({m(s[0]), m(s[1])}, {m(s[1]), m(s[2])}, p[0] * std::exp(-kI * p[1]));
      return dense_matrix({t, t.adjoint()}, reg);
    }
    case GateKind::kPairTunneling: {
      LadderTerm t({m(s[0]), m(s[1])}, {m(s[2]), m(s[3])}, p[0] * std::exp(-kI * p[1]));
      return dense_matrix({t, t.adjoint()}, reg);
    }
    case GateKind::kQubitRx:
      return 0.5 * p[0] * qubit_pauli(reg, s[0], 'X');
    case GateKind::kQubitRz:
      return 0.5 * p[0] * qubit_pauli(reg, s[0], 'Z');
  }
  throw std::logic_error("unhandled gate kind");
}

void apply_two_mode_operator(const TwoModeOperator& op, int i, int j, StateVector& state) {
  const MixedRegister& reg = *state.reg;
  reg.check_fermion(i);
  reg.check_fermion(j);
  if (i == j) throw std::invalid_argument("two-mode operator needs distinct modes");
  const FockBasis& basis = reg.fock();
  const Bits bi = mode_bit(reg, i);
  const Bits bj = mode_bit(reg, j);
  const Bits nq = Bits{1} << reg.qubit_count();
  LadderTerm hop({reg.local_index(i)}, {reg.local_index(j)});
  for (std::size_t f = 0; f < basis.size(); ++f) {
    Bits a = basis.state(f);
    bool ni = a & bi;
    bool nj = a & bj;
    if (ni == nj) {
      cplx c = ni ? op.full : op.empty;
      for (Bits q = 0; q < nq; ++q) state.amplitudes[static_cast<Eigen::Index>(reg.index(f, q))] *= c;
      continue;
    }
    if (!ni) continue;
    Bits b = a ^ bi ^ bj;
    std::int64_t fb = basis.index(b);
    double sign = ladder_action(hop, b)->second;
    for (Bits q = 0; q < nq; ++q) {
      auto xa = static_cast<Eigen::Index>(reg.index(f, q));
      auto xb = static_cast<Eigen::Index>(reg.index(fb, q));
      cplx va = state.amplitudes[xa];
      cplx vb = state.amplitudes[xb];
      state.amplitudes[xa] = op.single(0, 0) * va + sign * op.single(0, 1) * vb;
      state.amplitudes[xb] = sign * op.single(1, 0) * va + op.single(1, 1) * vb;
    }
  }
}

TwoModeOperator two_mode_operator_from_matrix(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("two-mode operator needs a 4x4 matrix");
  TwoModeOperator op;
  op.empty = m(0, 0);
  op.full = m(3, 3);
  op.single << m(1, 1), m(1, 2), m(2, 1), m(2, 2);
  return op;
}

Mat shuttle_local_unitary(const TunnelingParams& pulse1, const TunnelingParams& pulse3,
                          const TunnelingParams& pulse5) {
  static const auto local = MixedRegister::fermions(3, std::nullopt);
  constexpr int kI_ = 0, kJ = 1, kP = 2;
  Mat u1 = gate_matrix(GateSpec::tunneling(kP, kI_, pulse1), *local);
  Mat u3 = gate_matrix(GateSpec::tunneling(kP, kJ, pulse3), *local);
  Mat u5 = gate_matrix(GateSpec::tunneling(kP, kI_, pulse5), *local);
  return u5 * u3 * u1;
}

ShuttleResult shuttle_protocol(const TunnelingParams& t, int i, int j) {
  if (i == j) throw std::invalid_argument("shuttle needs two distinct sites");
  ShuttleResult r;
  TunnelingParams flip{kPi, 0.0, 0.0};
  TunnelingParams star{t.theta1, t.theta2 + kPi / 2, t.theta3};
  TunnelingParams undo{-kPi, 0.0, 0.0};
  r.steps.push_back({ShuttleStep::Kind::kPulse, i, i, flip, "pi pulse storage->transport"});
  r.steps.push_back({ShuttleStep::Kind::kMove, j, i, {}, "move transport tweezer"});
  r.steps.push_back({ShuttleStep::Kind::kPulse, j, j, star, "parametrized pulse"});
  r.steps.push_back({ShuttleStep::Kind::kMove, i, j, {}, "move back"});
  r.steps.push_back({ShuttleStep::Kind::kPulse, i, i, undo, "undo pi pulse"});
  r.local_unitary = shuttle_local_unitary(flip, star, undo);
  r.unitary = r.local_unitary.topLeftCorner(4, 4);
  return r;
}

}  // namespace fermiproc
