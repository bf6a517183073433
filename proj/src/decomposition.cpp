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

#include "fermiproc/decomposition.hpp"

#include <limits>
#include <random>
#include <set>
#include <algorithm>
#include <memory>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace fermiproc {

namespace {

int slot_params(const TemplateSlot& s) { return s.kind == GateKind::kTunneling ? 3 : 1; }

const std::shared_ptr<const MixedRegister>& full_register_ptr(int modes) {
  static const auto r3 = MixedRegister::fermions(3, std::nullopt);
  static const auto r4 = MixedRegister::fermions(4, std::nullopt);
  return modes == 3 ? r3 : r4;
}

const MixedRegister& full_register(int modes) { return *full_register_ptr(modes); }

// Residual vector: real and imaginary parts of e^{i phi} U(x) - V, with the
// global phase phi as the last unknown.
struct Residual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const DecompositionTemplate* tmpl;
  Mat target;

  int inputs() const { return tmpl->parameter_count() + 1; }
  int values() const { return static_cast<int>(2 * target.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    std::vector<double> p(x.data(), x.data() + x.size() - 1);
    Mat u = template_unitary(*tmpl, p) * std::exp(kI * x[x.size() - 1]);
    Mat r = u - target;
    const Eigen::Index n = r.size();
    for (Eigen::Index a = 0; a < n; ++a) {
      f[a] = r.data()[a].real();
      f[n + a] = r.data()[a].imag();
    }
    return 0;
  }
};

}  // namespace

int DecompositionTemplate::slot_count() const {
  int n = 0;
  for (const auto& l : layers) n += static_cast<int>(l.size());
  return n;
}

int DecompositionTemplate::parameter_count() const {
  int n = 0;
  for (const auto& l : layers) {
    for (const auto& s : l) n += slot_params(s);
  }
  return n;
}

std::vector<GateSpec> DecompositionTemplate::gates(const std::vector<double>& params) const {
  if (static_cast<int>(params.size()) != parameter_count()) throw std::invalid_argument("template parameter count");
  std::vector<GateSpec> out;
  std::size_t at = 0;
  for (const auto& l : layers) {
    for (const auto& s : l) {
      if (s.kind == GateKind::kTunneling) {
        out.push_back(GateSpec::tunneling(s.sites[0], s.sites[1], {params[at], params[at + 1], params[at + 2]}));
        at += 3;
      } else {
        out.push_back(GateSpec::interaction(s.sites[0], s.sites[1], params[at]));
        at += 1;
      }
    }
  }
  return out;
}

void DecompositionTemplate::validate() const {
  for (const auto& l : layers) {
    std::set<int> used;
    for (const auto& s : l) {
      if (s.kind != GateKind::kTunneling && s.kind != GateKind::kInteraction) {
        throw std::invalid_argument("template slots must be T or INT");
      }
      if (s.sites.size() != 2) throw std::invalid_argument("template slots act on two modes");
      for (int m : s.sites) {
        if (m < 0 || m >= mode_count()) throw std::out_of_range("template mode out of range");
        if (!used.insert(m).second) throw std::invalid_argument("template layer reuses a mode");
      }
    }
  }
}

GateSpec decomposition_target(GateKind target, double theta1, double theta2) {
  if (target == GateKind::kDensityTunneling) return GateSpec::density_tunneling(0, 1, 2, theta1, theta2);
  if (target == GateKind::kPairTunneling) return GateSpec::pair_tunneling(0, 1, 2, 3, theta1, theta2);
  throw std::invalid_argument("decomposition target must be DT or PT");
}

Mat decomposition_target_matrix(GateKind target, double theta1, double theta2) {
  GateSpec g = decomposition_target(target, theta1, theta2);
  return gate_matrix(g, full_register(gate_arity(target)));
}

Mat template_unitary(const DecompositionTemplate& tmpl, const std::vector<double>& params) {
  const auto& reg = full_register_ptr(tmpl.mode_count());
  const auto n = static_cast<Eigen::Index>(reg->dim());
  const std::vector<GateSpec> gates = tmpl.gates(params);
  Mat u(n, n);
  StateVector col(reg);
  for (Eigen::Index c = 0; c < n; ++c) {
    col.amplitudes.setZero();
    col.amplitudes[c] = 1.0;
    for (const GateSpec& g : gates) apply_gate(g, col);
    u.col(c) = col.amplitudes;
  }
  return u;
}

DecompositionResult find_decomposition(GateKind target, double theta1, double theta2,
                                       const DecompositionTemplate& tmpl, const SearchOptions& options,
                                       const std::optional<std::vector<double>>& warm_start) {
  tmpl.validate();
  if (tmpl.target != target) throw std::invalid_argument("template built for a different target");
  Residual res{&tmpl, decomposition_target_matrix(target, theta1, theta2)};
  Eigen::NumericalDiff<Residual, Eigen::Central> numdiff(res);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const int np = tmpl.parameter_count();

  DecompositionResult best;
  best.solved = tmpl;
  best.residual = std::numeric_limits<double>::infinity();
  const int total = options.restarts + (warm_start ? 1 : 0);
  for (int start = 0; start < total; ++start) {
    Eigen::VectorXd x(np + 1);
    if (warm_start && start == 0) {
      if (static_cast<int>(warm_start->size()) != np) throw std::invalid_argument("warm start size");
      for (int a = 0; a < np; ++a) x[a] = (*warm_start)[a];
      x[np] = 0.0;
    } else {
      for (int a = 0; a <= np; ++a) x[a] = angle(rng);
    }
    // Align the global phase before iterating.
    {
      std::vector<double> p(x.data(), x.data() + np);
      cplx ov = (template_unitary(tmpl, p).adjoint() * res.target).trace();
      x[np] = std::arg(ov);
    }
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual, Eigen::Central>> lm(numdiff);
    // Each step also spends 2 (np + 1) evaluations on the Jacobian.
    lm.parameters.maxfev = std::max(20, options.max_evaluations / (2 * np + 3));
    lm.parameters.xtol = 1e-15;
    lm.parameters.ftol = 1e-15;
    lm.minimize(x);
    std::vector<double> p(x.data(), x.data() + np);
    double r = phase_insensitive_distance(template_unitary(tmpl, p), res.target);
    best.starts_used = start + 1;
    if (r < best.residual) {
      best.residual = r;
      best.solved.parameters = p;
    }
    if (best.residual < options.tolerance) break;
  }
  best.success = best.residual < options.tolerance;
  return best;
}

DecompositionTemplate dt_template() {
  using K = GateKind;
  DecompositionTemplate t;
  t.target = K::kDensityTunneling;
  t.name = "T02-INT12-T02-INT12";
  t.layers = {{{K::kTunneling, {0, 2}}}, {{K::kInteraction, {1, 2}}}, {{K::kTunneling, {0, 2}}},
              {{K::kInteraction, {1, 2}}}};
  t.parameters.assign(t.parameter_count(), 0.0);
  return t;
}

DecompositionTemplate pt_layered_template() {
  using K = GateKind;
  DecompositionTemplate t;
  t.target = K::kPairTunneling;
  t.name = "T02|T13-INT03|INT12-T02|T13-INT03|INT12-T02|T13";
  std::vector<TemplateSlot> tl{{K::kTunneling, {0, 2}}, {K::kTunneling, {1, 3}}};
  std::vector<TemplateSlot> il{{K::kInteraction, {0, 3}}, {K::kInteraction, {1, 2}}};
  t.layers = {tl, il, tl, il, tl};
  t.parameters.assign(t.parameter_count(), 0.0);
  return t;
}

std::vector<DecompositionTemplate> pt_five_gate_templates() {
  using K = GateKind;
  const std::vector<std::vector<int>> tp{{0, 2}, {1, 3}};
  const std::vector<std::vector<int>> ip{{0, 3}, {1, 2}};
  std::vector<DecompositionTemplate> out;
  auto name_of = [](const DecompositionTemplate& t) {
    std::string s;
    for (const auto& l : t.layers) {
      if (!s.empty()) s += "-";
      s += l[0].kind == K::kTunneling ? "T" : "INT";
      s += std::to_string(l[0].sites[0]) + std::to_string(l[0].sites[1]);
    }
    return s;
  };
  // T I T I T
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 4; ++b) {
      DecompositionTemplate t;
      t.target = K::kPairTunneling;
      t.layers = {{{K::kTunneling, tp[a & 1]}},
                  {{K::kInteraction, ip[b & 1]}},
                  {{K::kTunneling, tp[(a >> 1) & 1]}},
                  {{K::kInteraction, ip[(b >> 1) & 1]}},
                  {{K::kTunneling, tp[(a >> 2) & 1]}}};
      t.name = name_of(t);
      t.parameters.assign(t.parameter_count(), 0.0);
      out.push_back(t);
    }
  }
  // I T I T I
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 8; ++b) {
      DecompositionTemplate t;
      t.target = K::kPairTunneling;
      t.layers = {{{K::kInteraction, ip[b & 1]}},
                  {{K::kTunneling, tp[a & 1]}},
                  {{K::kInteraction, ip[(b >> 1) & 1]}},
                  {{K::kTunneling, tp[(a >> 1) & 1]}},
                  {{K::kInteraction, ip[(b >> 2) & 1]}}};
      t.name = name_of(t);
      t.parameters.assign(t.parameter_count(), 0.0);
      out.push_back(t);
    }
  }
  return out;
}

std::vector<GateSpec> dt_decomposition(int i, int j, int k, double theta1, double theta2) {
  return {GateSpec::interaction(j, k, kPi), GateSpec::tunneling(i, k, {-theta1, theta2, 0.0}),
          GateSpec::interaction(j, k, kPi), GateSpec::tunneling(i, k, {theta1, theta2, 0.0})};
}

std::vector<GateSpec> controlled_dt_decomposition(int ancilla, int i, int j, int k, double theta1, double theta2) {
  return {GateSpec::controlled_interaction(ancilla, j, k, kPi), GateSpec::tunneling(i, k, {-theta1, theta2, 0.0}),
          GateSpec::controlled_interaction(ancilla, j, k, kPi), GateSpec::tunneling(i, k, {theta1, theta2, 0.0})};
}

}  // namespace fermiproc
