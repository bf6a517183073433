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

#include "fermiproc/echo.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

namespace fermiproc {

std::string_view strategy_name(EchoStrategy s) {
  switch (s) {
    case EchoStrategy::kNone:
      return "none";
    case EchoStrategy::kCyclicShift:
      return "cyclic-shift";
    case EchoStrategy::kPairwiseSwap:
      return "pairwise-swap";
  }
  return "?";
}

EchoStrategy strategy_from_name(std::string_view name) {
  for (auto s : {EchoStrategy::kNone, EchoStrategy::kCyclicShift, EchoStrategy::kPairwiseSwap}) {
    if (strategy_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown echo strategy '" + std::string(name) + "'");
}

DisorderPattern DisorderPattern::gaussian(int sites, double sigma, std::uint64_t seed) {
  if (sites < 1) throw std::invalid_argument("need at least one site");
  if (!(sigma >= 0.0)) throw std::invalid_argument("disorder width must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  DisorderPattern d;
  d.h.resize(sites);
  for (double& x : d.h) x = sigma * g(rng);
  return d;
}

double DisorderPattern::max_abs() const {
  double m = 0.0;
  for (double x : h) m = std::max(m, std::abs(x));
  return m;
}

PermutationSchedule::PermutationSchedule(EchoStrategy strategy, int sites)
    : strategy_(strategy), sites_(sites), sigma_(sites) {
  if (sites < 2) throw std::invalid_argument("ring needs at least two sites");
  for (int x = 0; x < sites; ++x) sigma_[x] = x;
}

void PermutationSchedule::advance() {
  switch (strategy_) {
    case EchoStrategy::kNone:
      break;
    case EchoStrategy::kCyclicShift:
      for (int x = 0; x < sites_; ++x) sigma_[x] = static_cast<int>(((x - (t_ + 1)) % sites_ + sites_) % sites_);
      break;
    case EchoStrategy::kPairwiseSwap: {
      std::vector<int> next = sigma_;
      for (auto [a, b] : round_bonds(sites_, t_)) {
        next[a] = sigma_[b];
        next[b] = sigma_[a];
      }
      sigma_ = std::move(next);
      break;
    }
  }
  ++t_;
}

std::vector<std::pair<int, int>> round_bonds(int sites, long t) {
  if (sites % 2 != 0) throw std::invalid_argument("bipartite ring layering needs an even number of sites");
  std::vector<std::pair<int, int>> bonds;
  for (int x = static_cast<int>(t % 2); x < sites; x += 2) bonds.emplace_back(x, (x + 1) % sites);
  return bonds;
}

double accumulated_relative_phase(EchoStrategy strategy, const DisorderPattern& disorder, int i, long t,
                                  bool closed_form) {
  const int n = disorder.size();
  if (i < 0 || i >= n) throw std::out_of_range("bond index out of range");
  if (t < 0) throw std::invalid_argument("negative time");
  const int k = (i + 1) % n;
  if (closed_form && strategy == EchoStrategy::kCyclicShift) {
    long s = ((i - t) % n + n) % n;
    return disorder.h[k] - disorder.h[s];
  }
  PermutationSchedule sched(strategy, n);
  double acc = 0.0;
  for (long s = 0; s <= t; ++s) {
    acc += disorder.h[sched(k)] - disorder.h[sched(i)];
    if (s < t) sched.advance();
  }
  return acc;
}

FreeFermionPropagator::FreeFermionPropagator(int sites, const std::vector<int>& initial_sites)
    : u_(Mat::Zero(sites, static_cast<Eigen::Index>(initial_sites.size()))) {
  for (std::size_t c = 0; c < initial_sites.size(); ++c) {
    int x = initial_sites[c];
    if (x < 0 || x >= sites) throw std::out_of_range("initial site out of range");
    if (u_(x, static_cast<Eigen::Index>(c)) != cplx(0.0)) throw std::invalid_argument("initial site repeated");
    u_(x, static_cast<Eigen::Index>(c)) = 1.0;
  }
}

FreeFermionPropagator FreeFermionPropagator::identity(int sites) {
  std::vector<int> all(sites);
  for (int x = 0; x < sites; ++x) all[x] = x;
  return FreeFermionPropagator(sites, all);
}

void FreeFermionPropagator::hop(double j_tau, int parity) {
  const cplx c(std::cos(j_tau), 0.0);
  const cplx s(0.0, -std::sin(j_tau));
  for (auto [a, b] : round_bonds(sites(), parity)) {
    for (Eigen::Index col = 0; col < u_.cols(); ++col) {
      cplx ua = u_(a, col);
      cplx ub = u_(b, col);
      u_(a, col) = c * ua + s * ub;
      u_(b, col) = s * ua + c * ub;
    }
  }
}

void FreeFermionPropagator::phase(const std::vector<double>& phases) {
  for (int x = 0; x < sites(); ++x) u_.row(x) *= std::polar(1.0, -phases[x]);
}

void FreeFermionPropagator::reorthonormalize() {
  Eigen::JacobiSVD<Mat> svd(u_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  u_ = svd.matrixU() * svd.matrixV().adjoint();
}

double FreeFermionPropagator::orthonormality_defect() const {
  return (u_.adjoint() * u_ - Mat::Identity(u_.cols(), u_.cols())).norm();
}

void floquet_step(FreeFermionPropagator& u, double j, double tau, const DisorderPattern& disorder,
                  const PermutationSchedule& schedule) {
  if (disorder.size() != u.sites()) throw std::invalid_argument("disorder size does not match the ring");
  u.hop(j * tau, static_cast<int>(schedule.time() % 2));
  std::vector<double> ph(u.sites());
  for (int x = 0; x < u.sites(); ++x) ph[x] = disorder.h[schedule(x)];
  u.phase(ph);
}

double determinant_fidelity(const Mat& w_ideal, const Mat& w) {
  if (w_ideal.rows() != w.rows() || w_ideal.cols() != w.cols()) throw std::invalid_argument("propagator shapes differ");
  Mat m = w_ideal.adjoint() * w;
  return std::norm(m.partialPivLu().determinant());
}

std::vector<int> evenly_spaced_sites(int sites, int atoms) {
  if (atoms < 0 || atoms > sites) throw std::invalid_argument("atom count must lie in [0, sites]");
  std::vector<int> out(atoms);
  for (int k = 0; k < atoms; ++k) out[k] = static_cast<int>(static_cast<long>(k) * sites / atoms);
  return out;
}

void EchoConfig::validate() const {
  if (sites < 2 || sites % 2 != 0) throw std::invalid_argument("ring size must be even and at least 2");
  if (atoms < 1 || atoms > sites) throw std::invalid_argument("atom count must lie in [1, sites]");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  if (!(sigma >= 0.0) || !std::isfinite(j) || !std::isfinite(tau)) throw std::invalid_argument("bad couplings");
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  if (reorthonormalize_every < 1 || record_every < 1) throw std::invalid_argument("bad cadence");
}

EchoTrace run_echo_experiment(const EchoConfig& cfg) {
  cfg.validate();
  const DisorderPattern disorder = DisorderPattern::gaussian(cfg.sites, cfg.sigma, cfg.seed);
  const DisorderPattern clean{std::vector<double>(cfg.sites, 0.0)};
  const std::vector<int> init = evenly_spaced_sites(cfg.sites, cfg.atoms);
  FreeFermionPropagator ideal(cfg.sites, init), none(cfg.sites, init), echo(cfg.sites, init);
  PermutationSchedule s_ideal(EchoStrategy::kNone, cfg.sites), s_none(EchoStrategy::kNone, cfg.sites),
      s_echo(cfg.strategy, cfg.sites);

  EchoTrace tr;
  bool crossed_none = false, crossed_echo = false;
  for (long t = 0; t < cfg.horizon; ++t) {
    floquet_step(ideal, cfg.j, cfg.tau, clean, s_ideal);
    if (!crossed_none || !cfg.stop_after_crossing) floquet_step(none, cfg.j, cfg.tau, disorder, s_none);
    floquet_step(echo, cfg.j, cfg.tau, disorder, s_echo);
    s_ideal.advance();
    s_none.advance();
    s_echo.advance();
    const long round = t + 1;
    if (round % cfg.reorthonormalize_every == 0) {
      ideal.reorthonormalize();
      none.reorthonormalize();
      echo.reorthonormalize();
    }
    double f_none = crossed_none && cfg.stop_after_crossing ? std::nan("") : determinant_fidelity(ideal.columns(), none.columns());
    double f_echo = determinant_fidelity(ideal.columns(), echo.columns());
    if (!crossed_none && f_none < cfg.threshold) {
      crossed_none = true;
      tr.useful_none = round;
    }
    if (!crossed_echo && f_echo < cfg.threshold) {
      crossed_echo = true;
      tr.useful_echo = round;
    }
    if (round % cfg.record_every == 0) {
      tr.rounds.push_back(round);
      tr.fidelity_none.push_back(f_none);
      tr.fidelity_echo.push_back(f_echo);
    }
    if (cfg.stop_after_crossing && crossed_none && crossed_echo) break;
  }
  if (!crossed_none) {
    tr.censored_none = true;
    tr.useful_none = cfg.horizon;
  }
  if (!crossed_echo) {
    tr.censored_echo = true;
    tr.useful_echo = cfg.horizon;
  }
  return tr;
}

void write_echo_csv(std::ostream& out, const EchoTrace& trace, double tau) {
  out << "round,time,fidelity_none,fidelity_echo\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    out << trace.rounds[k] << ',' << trace.rounds[k] * tau << ',';
    if (!std::isnan(trace.fidelity_none[k])) out << trace.fidelity_none[k];
    out << ',' << trace.fidelity_echo[k] << '\n';
  }
}

}  // namespace fermiproc
