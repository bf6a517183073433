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

// Second-quantized Hamiltonians
//   H = sum_ij h1_ij c+_i c_j + sum_ijkl h2_ijkl c+_i c+_j c_k c_l
// and the text format they are read from:
//
//   # comment
//   L <modes>
//   1 i j re im
//   2 i j k l re im
//
// Indices are 0-based. A missing Hermitian partner is added with a warning;
// a partner that disagrees, or a repeated entry with a different value, is an
// error. Two-body entries with i == j or k == l vanish identically and are
// dropped with a warning.

#ifndef FERMIPROC_HAMILTONIAN_HPP_
#define FERMIPROC_HAMILTONIAN_HPP_

#include <array>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fermiproc/fock.hpp"

namespace fermiproc {

struct SecondQuantizedHamiltonian {
  int mode_count = 0;
  std::map<std::pair<int, int>, cplx> one_body;
  std::map<std::array<int, 4>, cplx> two_body;

  std::vector<LadderTerm> terms() const;

  // Largest |h - conj(partner)| over both tables; partners that are absent
  // count as zero.
  double hermiticity_defect() const;
};

SecondQuantizedHamiltonian parse_hamiltonian(std::istream& in, const std::string& source,
                                             std::vector<std::string>* warnings = nullptr);
SecondQuantizedHamiltonian load_hamiltonian(const std::string& path,
                                            std::vector<std::string>* warnings = nullptr);
void write_hamiltonian(std::ostream& out, const SecondQuantizedHamiltonian& h);

Mat hamiltonian_matrix(const SecondQuantizedHamiltonian& h, const FockBasis& basis,
                       std::size_t max_dim = 4096);

// Same model with modes relabeled by perm (mode p becomes perm[p]).
// Dense random Hermitian Hamiltonian: every one-body pair and every
// two-body (a < b, c < d) pair carries a N(0, scale^2) complex coefficient
// together with its Hermitian partner.
SecondQuantizedHamiltonian random_hamiltonian(int mode_count, std::mt19937_64& rng, double one_body_scale = 1.0,
                                              double two_body_scale = 1.0);

SecondQuantizedHamiltonian relabel_modes(const SecondQuantizedHamiltonian& h, const std::vector<int>& perm);

}  // namespace fermiproc

#endif  // FERMIPROC_HAMILTONIAN_HPP_
