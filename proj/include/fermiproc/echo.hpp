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

// Free-fermion simulation of hopping on a ring with static per-tweezer phase
// disorder, and the motional echo that permutes atoms among tweezers.

#ifndef FERMIPROC_ECHO_HPP_
#define FERMIPROC_ECHO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fermiproc/linalg.hpp"

namespace fermiproc {

enum class EchoStrategy { kNone, kCyclicShift, kPairwiseSwap };

std::string_view strategy_name(EchoStrategy s);
EchoStrategy strategy_from_name(std::string_view name);

struct DisorderPattern {
  std::vector<double> h;  // radians per round, one per tweezer

  static DisorderPattern gaussian(int sites, double sigma, std::uint64_t seed);
  int size() const { return static_cast<int>(h.size()); }
  double max_abs() const;
};

// sigma_t: atom at site x sees the disorder of tweezer sigma_t(x).
//   none:          identity
//   cyclic shift:  (x - t) mod L
//   pairwise swap: sigma_{t+1}(x) = sigma_t(partner_t(x)), partner_t taken
//                  over the bonds of round t
class PermutationSchedule {
 public:
  PermutationSchedule(EchoStrategy strategy, int sites);

  EchoStrategy strategy() const { return strategy_; }
  long time() const { return t_; }
  int operator()(int x) const { return sigma_[x]; }
  const std::vector<int>& current() const { return sigma_; }
  void advance();

 private:
  EchoStrategy strategy_;
  int sites_;
  long t_ = 0;
  std::vector<int> sigma_;
};

// Bonds (x, x + 1 mod L) active in round t: even x for even t, odd x for odd t.
std::vector<std::pair<int, int>> round_bonds(int sites, long t);

// sum_{s=0..t} (h_{sigma_s(i+1)} - h_{sigma_s(i)}) for bond (i, i+1 mod L).
// With closed_form the cyclic-shift telescoped value h_{i+1} - h_{sigma_t(i)}
// is returned instead; other strategies are summed directly either way.
double accumulated_relative_phase(EchoStrategy strategy, const DisorderPattern& disorder, int i, long t,
                                  bool closed_form = true);

// Single-particle propagator restricted to a set of initial columns, so that
// U is L x cols with orthonormal columns.
class FreeFermionPropagator {
 public:
  FreeFermionPropagator(int sites, const std::vector<int>& initial_sites);
  static FreeFermionPropagator identity(int sites);

  const Mat& columns() const { return u_; }
  int sites() const { return static_cast<int>(u_.rows()); }

  // Beam splitters exp(-i J tau (c+_a c_b + h.c.)) on the bonds of the parity.
  void hop(double j_tau, int parity);
  // Row x picks up exp(-i phases[x]).
  void phase(const std::vector<double>& phases);
  // Replace columns by the nearest isometry (polar factor).
  void reorthonormalize();
  double orthonormality_defect() const;

 private:
  Mat u_;
};

// One Floquet round: U <- D_t B_{t mod 2} U with D_t = diag(exp(-i h_{sigma_t(x)})).
void floquet_step(FreeFermionPropagator& u, double j, double tau, const DisorderPattern& disorder,
                  const PermutationSchedule& schedule);

// |det(W_ideal^+ W)|^2 for propagated occupied columns.
double determinant_fidelity(const Mat& w_ideal, const Mat& w);

// N atoms on sites floor(k L / N).
std::vector<int> evenly_spaced_sites(int sites, int atoms);

struct EchoConfig {
  int sites = 100;
  int atoms = 20;
  double j = 1.0;
  double tau = 0.13;
  double sigma = 0.035;
  EchoStrategy strategy = EchoStrategy::kCyclicShift;
  long horizon = 200000;
  double threshold = 0.9;
  std::uint64_t seed = 1;
  int reorthonormalize_every = 1000;
  int record_every = 1;
  // Stop once every tracked run has crossed the threshold.
  bool stop_after_crossing = true;

  void validate() const;
};

struct EchoTrace {
  std::vector<long> rounds;
  std::vector<double> fidelity_none;
  std::vector<double> fidelity_echo;
  long useful_none = 0;  // first round with fidelity below threshold
  long useful_echo = 0;
  bool censored_none = false;  // never crossed within the horizon
  bool censored_echo = false;
  double ratio() const { return static_cast<double>(useful_echo) / static_cast<double>(useful_none); }
};

// Propagates the disorder-free reference, the unprotected run and the run
// with the configured strategy in lockstep.
EchoTrace run_echo_experiment(const EchoConfig& config);

// Columns: round, time, fidelity_none, fidelity_echo.
void write_echo_csv(std::ostream& out, const EchoTrace& trace, double tau);

}  // namespace fermiproc

#endif  // FERMIPROC_ECHO_HPP_
