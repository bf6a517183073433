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

#include "fermiproc/qpe.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fermiproc/decomposition.hpp"

namespace fermiproc {

namespace {

double ancilla_one_probability(const StateVector& s, int qbit) {
  double p = 0.0;
  for (Eigen::Index k = 0; k < s.amplitudes.size(); ++k) {
    if ((static_cast<std::size_t>(k) >> qbit) & 1U) p += std::norm(s.amplitudes[k]);
  }
  return p;
}

void project_ancilla(StateVector& s, int qbit, int outcome) {
  for (Eigen::Index k = 0; k < s.amplitudes.size(); ++k) {
    int b = static_cast<int>((static_cast<std::size_t>(k) >> qbit) & 1U);
    if (b != outcome) s.amplitudes[k] = 0.0;
  }
  s.normalize();
}

}  // namespace

double phase_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

QpeResult iterative_qpe(const ControlledPowerBuilder& builder, const StateVector& initial, int ancilla,
                        const QpeOptions& options) {
  if (options.bits < 1) throw std::invalid_argument("qpe needs at least one bit");
  if (options.bits > 62) throw std::invalid_argument("qpe bit count too large");
  if (!initial.reg) throw std::invalid_argument("qpe state has no register");
  initial.reg->check_qubit(ancilla);
  const int qbit = initial.reg->local_index(ancilla);
  if (ancilla_one_probability(initial, qbit) > 1e-12) throw std::invalid_argument("qpe ancilla must start in |1~>");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const int k = options.bits;
  QpeResult res;
  res.bits.assign(k, 0);
  StateVector state = initial;
  for (int m = k; m >= 1; --m) {
    double tail = 0.0;  // 0.0 b_{m+1} ... b_k
    for (int r = m + 1; r <= k; ++r) tail += res.bits[r - 1] * std::ldexp(1.0, -(r - m + 1));
    qubit_rotation(QubitAxis::kX, kPi / 2, ancilla, state);
    apply_circuit(builder(std::uint64_t{1} << (m - 1)), state);
    qubit_rotation(QubitAxis::kZ, -2.0 * kPi * tail, ancilla, state);
    qubit_rotation(QubitAxis::kX, -kPi / 2, ancilla, state);

    double p1 = ancilla_one_probability(state, qbit);
    int outcome = options.sample_shots ? (uni(rng) < p1 ? 1 : 0) : (p1 > 0.5 ? 1 : 0);
    res.bits[m - 1] = outcome;
    res.confidence.push_back(outcome ? p1 : 1.0 - p1);
    project_ancilla(state, qbit, outcome);
    if (outcome) qubit_rotation(QubitAxis::kX, kPi, ancilla, state);
  }
  for (int r = 1; r <= k; ++r) res.phase += res.bits[r - 1] * std::ldexp(1.0, -r);
  for (double c : res.confidence) res.min_confidence = std::min(res.min_confidence, c);
  res.final_state = std::move(state);
  return res;
}

Circuit controlled_circuit(const Circuit& circuit, int ancilla) {
  const auto& sites = circuit.sites();
  if (ancilla < 0 || ancilla >= static_cast<int>(sites.size()) || sites[ancilla] != SiteKind::kQubit) {
    throw std::invalid_argument("control must be a qubit site");
  }
  Circuit out(sites);
  for (const GateSpec& g : circuit.gates()) {
    for (int s : g.sites) {
      if (s == ancilla) throw std::invalid_argument("gate acts on the control ancilla");
    }
    const auto& p = g.params;
    switch (g.kind) {
      case GateKind::kTunneling:
        out.append(GateSpec::controlled_tunneling(ancilla, g.sites[0], g.sites[1], {p[0], p[1], p[2]}));
        break;
      case GateKind::kNumberPhase:
        out.append(GateSpec::interaction(ancilla, g.sites[0], p[0]));
        break;
      case GateKind::kInteraction:
        if (sites[g.sites[0]] != SiteKind::kFermion || sites[g.sites[1]] != SiteKind::kFermion) {
          throw std::invalid_argument("controlled interaction needs fermionic targets");
        }
        out.append(GateSpec::controlled_interaction(ancilla, g.sites[0], g.sites[1], p[0]));
        break;
      case GateKind::kDensityTunneling:
        for (const GateSpec& h :
             controlled_dt_decomposition(ancilla, g.sites[0], g.sites[1], g.sites[2], p[0], p[1])) {
          out.append(h);
        }
        break;
      default:
        throw std::invalid_argument("no controlled form for gate " + std::string(gate_name(g.kind)));
    }
  }
  return out;
}

ControlledPowerBuilder controlled_number_phase(const std::vector<SiteKind>& sites, int ancilla, int site,
                                               double theta) {
  return [=](std::uint64_t power) {
    Circuit c(sites);
    c.append(GateSpec::interaction(ancilla, site, std::fmod(theta * static_cast<double>(power), 2.0 * kPi)));
    return c;
  };
}

ControlledPowerBuilder controlled_tunneling_power(const std::vector<SiteKind>& sites, int ancilla, int i, int j,
                                                  const TunnelingParams& t) {
  return [=](std::uint64_t power) {
    double p = static_cast<double>(power);
    Circuit c(sites);
    c.append(GateSpec::controlled_tunneling(ancilla, i, j, {t.theta1 * p, t.theta2, t.theta3 * p}));
    return c;
  };
}

ControlledPowerBuilder controlled_repeat(const Circuit& circuit, int ancilla) {
  Circuit one = controlled_circuit(circuit, ancilla);
  return [one](std::uint64_t power) {
    Circuit c(one.sites());
    for (std::uint64_t r = 0; r < power; ++r) c.append(one);
    return c;
  };
}

}  // namespace fermiproc
