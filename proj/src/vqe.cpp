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

#include "fermiproc/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "fermiproc/parallel.hpp"

namespace fermiproc {

UCCAnsatz UCCAnsatz::from_reference(int mode_count, Bits reference) {
  if (mode_count < 1 || mode_count > 62) throw std::invalid_argument("bad mode count");
  if (reference >> mode_count) throw std::invalid_argument("reference occupies modes beyond the register");
  UCCAnsatz a;
  a.mode_count = mode_count;
  a.reference = reference;
  for (int m = 0; m < mode_count; ++m) (fermiproc::occupied(reference, m) ? a.occupied : a.virtuals).push_back(m);
  for (std::size_t x = 0; x < a.occupied.size(); ++x) {
    for (std::size_t y = x + 1; y < a.occupied.size(); ++y) {
      for (std::size_t u = 0; u < a.virtuals.size(); ++u) {
        for (std::size_t v = u + 1; v < a.virtuals.size(); ++v) {
          a.doubles.push_back({a.occupied[x], a.occupied[y], a.virtuals[u], a.virtuals[v]});
        }
      }
    }
  }
  for (int i : a.occupied) {
    for (int v : a.virtuals) a.singles.push_back({i, v});
  }
  return a;
}

Circuit build_ansatz_circuit(const UCCAnsatz& ansatz, const std::vector<double>& params) {
  if (params.size() != ansatz.parameter_count()) {
    throw std::invalid_argument("expected " + std::to_string(ansatz.parameter_count()) + " parameters, got " +
                                std::to_string(params.size()));
  }
  Circuit c(ansatz.mode_count);
  std::size_t p = 0;
  for (const auto& d : ansatz.doubles) c.append(GateSpec::pair_tunneling(d[0], d[1], d[2], d[3], params[p++], kPi / 2));
  for (const auto& s : ansatz.singles) c.append(GateSpec::tunneling(s[0], s[1], {params[p++], kPi / 2, 0.0}));
  return c;
}

double energy(const StateVector& state, const Mat& h) {
  if (h.rows() != state.amplitudes.size() || h.cols() != state.amplitudes.size()) {
    throw std::invalid_argument("Hamiltonian and state live in different sectors");
  }
  cplx e = state.amplitudes.dot(h * state.amplitudes);
  if (std::abs(e.imag()) > 1e-10) throw std::runtime_error("energy has an imaginary part");
  return e.real();
}

EnergyModel::EnergyModel(const SecondQuantizedHamiltonian& h, UCCAnsatz ansatz) : ansatz_(std::move(ansatz)) {
  if (h.mode_count != ansatz_.mode_count) throw std::invalid_argument("ansatz and Hamiltonian mode counts differ");
  reg_ = MixedRegister::fermions(ansatz_.mode_count, ansatz_.particle_number());
  h_ = hamiltonian_matrix(h, reg_->fock());
  e0_ = ground_state(h_).energy;
}

StateVector EnergyModel::reference_state() const { return StateVector::basis_state(reg_, ansatz_.reference); }

StateVector EnergyModel::prepare(const std::vector<double>& params) const {
  StateVector s = reference_state();
  apply_circuit(build_ansatz_circuit(ansatz_, params), s);
  return s;
}

double EnergyModel::evaluate(const std::vector<double>& params) const { return energy(prepare(params), h_); }

VQEResult optimize_vqe(const EnergyModel& model, MinimizeOptions options, std::uint64_t seed) {
  options.seed = seed;
  std::vector<double> x0(model.ansatz().parameter_count(), 0.0);
  MinimizeResult m = minimize([&](const std::vector<double>& x) { return model.evaluate(x); }, x0, options);
  VQEResult r;
  r.params = m.x;
  r.energy = m.f;
  r.exact_energy = model.exact_ground_energy();
  r.delta_e = r.energy - r.exact_energy;
  r.trace = std::move(m.trace);
  r.evaluations = m.evaluations;
  r.converged = m.converged;
  r.budget_exhausted = m.budget_exhausted;
  return r;
}

void apply_noisy_circuit(const Circuit& circuit, StateVector& state, const NoiseModel& model, std::mt19937_64& rng) {
  auto draw = [&] { return pulse_error(draw_sample(model.dist, model.trap, rng), model.trap, model.pulse_time_s, model.overlap); };
  std::array<PulseError, 3> shared{};
  if (model.per_run) shared = {draw(), draw(), draw()};
  for (const GateSpec& g : circuit.gates()) {
    if (g.kind != GateKind::kTunneling) {
      apply_gate(g, state);
      continue;
    }
    std::array<PulseError, 3> e = model.per_run ? shared : std::array<PulseError, 3>{draw(), draw(), draw()};
    bool ideal = true;
    for (const auto& x : e) ideal = ideal && x.f == 1.0 && x.z_angle == 0.0;
    if (ideal) {
      apply_gate(g, state);
      continue;
    }
    validate_gate(g, *state.reg);
    TwoModeOperator op = perturbed_shuttle({g.params[0], g.params[1], g.params[2]}, e[0], e[1], e[2]);
    apply_two_mode_operator(op, g.sites[0], g.sites[1], state);
    double n = state.norm();
    if (!(n > 0.0)) throw std::runtime_error("state fully leaked out of the computational space");
    state.amplitudes /= n;
  }
}

NoisyEnergy noisy_energy_mc(const EnergyModel& model, const std::vector<double>& params, const NoiseModel& noise,
                            int samples, std::uint64_t seed, int workers) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  noise.trap.validate();
  noise.dist.validate();
  const Circuit c = build_ansatz_circuit(model.ansatz(), params);
  NoisyEnergy out;
  out.samples = samples;
  out.delta_e.assign(samples, 0.0);
  parallel_for(samples, workers, [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    StateVector s = model.reference_state();
    apply_noisy_circuit(c, s, noise, rng);
    out.delta_e[k] = energy(s, model.matrix()) - model.exact_ground_energy();
  });
  double sum = 0.0;
  for (double d : out.delta_e) sum += d;
  out.mean_delta_e = sum / samples;
  double ss = 0.0;
  for (double d : out.delta_e) ss += (d - out.mean_delta_e) * (d - out.mean_delta_e);
  out.stderr_delta_e = std::sqrt(ss / (samples - 1) / samples);
  return out;
}

std::vector<SweepCell> noise_sweep(const EnergyModel& model, const std::vector<double>& params, NoiseModel noise,
                                   const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  for (double wr : spec.delta_wr) {
    for (double r : spec.delta_r) cells.push_back({wr, r, {}});
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    NoiseModel m = noise;
    m.dist = {cells[c].delta_wr, cells[c].delta_r, spec.delta_z};
    cells[c].result = noisy_energy_mc(model, params, m, spec.samples, derive_seed(spec.seed, 0x5eed, c), spec.workers);
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "delta_wr,delta_r,mean_dE,stderr,n\n";
  out << std::setprecision(17);
  for (const auto& c : cells) {
    out << c.delta_wr << ',' << c.delta_r << ',' << c.result.mean_delta_e << ',' << c.result.stderr_delta_e << ','
        << c.result.samples << '\n';
  }
}

std::optional<SweepCell> threshold_crossing(const std::vector<SweepCell>& cells, double threshold) {
  std::optional<SweepCell> best;
  for (const auto& c : cells) {
    if (c.result.mean_delta_e <= threshold) continue;
    if (!best) {
      best = c;
      continue;
    }
    double a = c.delta_wr + c.delta_r;
    double b = best->delta_wr + best->delta_r;
    if (a < b || (a == b && c.delta_wr < best->delta_wr)) best = c;
  }
  return best;
}

}  // namespace fermiproc
