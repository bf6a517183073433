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

// Occupation-number bases, ladder operators and the dense
// exact-diagonalization helpers.
//
// Mode j of a Fock state is bit j of a 64-bit word. A basis lists its states
// in ascending order of that word, so for two modes and one particle the
// order is |10>, |01> (mode 0 written first). Ladder operators carry the
// Jordan-Wigner sign (-1)^(number of occupied modes below the acted-on mode).

#ifndef FERMIPROC_FOCK_HPP_
#define FERMIPROC_FOCK_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermiproc/linalg.hpp"

namespace fermiproc {

using Bits = std::uint64_t;

inline int parity_below(Bits bits, int mode) {
  Bits mask = (Bits{1} << mode) - 1;
  return std::popcount(bits & mask) & 1;
}

inline bool occupied(Bits bits, int mode) { return (bits >> mode) & 1U; }

// "n_0 n_1 ... n_{L-1}", mode 0 first.
std::string bits_to_string(Bits bits, int mode_count);
Bits bits_from_string(const std::string& s);

class FockBasis {
 public:
  static constexpr std::size_t kDefaultMaxDim = 2'000'000;

  FockBasis(int mode_count, std::optional<int> particle_number,
            std::size_t max_dim = kDefaultMaxDim);

  int mode_count() const { return mode_count_; }
  std::optional<int> particle_number() const { return particle_number_; }
  std::size_t size() const { return states_.size(); }
  Bits state(std::size_t i) const { return states_[i]; }
  const std::vector<Bits>& states() const { return states_; }

  // Position of `bits` in the basis, or -1 when it is not a member.
  std::int64_t index(Bits bits) const;
  bool contains(Bits bits) const { return index(bits) >= 0; }

  bool operator==(const FockBasis& o) const {
    return mode_count_ == o.mode_count_ && particle_number_ == o.particle_number_;
  }

 private:
  int mode_count_;
  std::optional<int> particle_number_;
  std::vector<Bits> states_;
  // binom_[n][k] for the colexicographic rank of fixed-N states.
  std::vector<std::vector<std::uint64_t>> binom_;
};

std::shared_ptr<const FockBasis> build_basis(int mode_count, std::optional<int> particle_number);

// Coefficient times c+_{a1} c+_{a2} ... c_{b1} c_{b2} ..., applied right to left.
struct LadderTerm {
  std::vector<int> creation;
  std::vector<int> annihilation;
  cplx coefficient{1.0, 0.0};

  LadderTerm() = default;
  LadderTerm(std::vector<int> cre, std::vector<int> ann, cplx coeff = 1.0);

  bool number_conserving() const { return creation.size() == annihilation.size(); }
  int max_index() const;
  LadderTerm adjoint() const;
};

// Action of the operator string (without coefficient) on one basis state.
// Returns the image state and its sign, or nothing when the image vanishes.
std::optional<std::pair<Bits, int>> ladder_action(const LadderTerm& term, Bits bits);

enum class SiteKind { kFermion, kQubit };

// A register whose sites are either fermionic modes or qubits. Fermionic
// sites are numbered as modes in site order and share one Fock basis; qubits
// never enter Jordan-Wigner strings. Amplitude index = fock_index * 2^Q + q,
// with qubit k at bit k of q. A qubit bit of 1 is the |1> level, 0 is |1~>.
class MixedRegister {
 public:
  MixedRegister(std::vector<SiteKind> sites, std::optional<int> particle_number);

  // All-fermion register of `mode_count` modes.
  static std::shared_ptr<const MixedRegister> fermions(int mode_count,
                                                       std::optional<int> particle_number);

  int site_count() const { return static_cast<int>(sites_.size()); }
  SiteKind kind(int site) const { return sites_.at(site); }
  bool is_qubit(int site) const { return kind(site) == SiteKind::kQubit; }
  const std::vector<SiteKind>& sites() const { return sites_; }
  // Fermionic mode index (or qubit index) of a site.
  int local_index(int site) const { return local_.at(site); }
  int qubit_count() const { return qubit_count_; }
  int mode_count() const { return basis_->mode_count(); }
  const FockBasis& fock() const { return *basis_; }
  std::shared_ptr<const FockBasis> fock_ptr() const { return basis_; }
  std::size_t dim() const { return basis_->size() << qubit_count_; }

  std::size_t index(std::size_t fock_index, Bits qubits) const {
    return (fock_index << qubit_count_) | qubits;
  }
  // Site-level description of a basis index, e.g. "10|1" for two fermion
  // sites and one qubit; used in diagnostics only.
  std::string describe(std::size_t index) const;

  void check_fermion(int site) const;
  void check_qubit(int site) const;

 private:
  std::vector<SiteKind> sites_;
  std::vector<int> local_;
  int qubit_count_ = 0;
  std::shared_ptr<const FockBasis> basis_;
};

struct StateVector {
  std::shared_ptr<const MixedRegister> reg;
  Vec amplitudes;

  StateVector() = default;
  explicit StateVector(std::shared_ptr<const MixedRegister> r);

  // Unit amplitude on one fermionic configuration (and qubit bits).
  static StateVector basis_state(std::shared_ptr<const MixedRegister> r, Bits fermions,
                                 Bits qubits = 0);

  double norm() const { return amplitudes.norm(); }
  void normalize() { amplitudes /= amplitudes.norm(); }
};

// Unnormalized image of `state` under `term`. The image must stay inside the
// register's Fock basis; a fixed-N register rejects number-changing terms.
StateVector apply_ladder(const LadderTerm& term, const StateVector& state);

// Dense matrix of the sum of terms on a Fock basis. Hermitian closure is the
// caller's job.
Mat dense_matrix(const std::vector<LadderTerm>& terms, const FockBasis& basis,
                 std::size_t max_dim = 4096);

// Same, lifted to a mixed register (identity on the qubits).
Mat dense_matrix(const std::vector<LadderTerm>& terms, const MixedRegister& reg,
                 std::size_t max_dim = 4096);

struct GroundState {
  double energy = 0.0;
  Vec vector;
};

// Lowest eigenpair of a Hermitian matrix; the first amplitude with modulus
// above 1e-9 is made real and positive.
GroundState ground_state(const Mat& h);

}  // namespace fermiproc

#endif  // FERMIPROC_FOCK_HPP_
