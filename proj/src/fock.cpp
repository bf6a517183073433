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

#include "fermiproc/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace fermiproc {

std::string bits_to_string(Bits bits, int mode_count) {
  std::string s(mode_count, '0');
  for (int j = 0; j < mode_count; ++j) {
    if (occupied(bits, j)) s[j] = '1';
  }
  return s;
}

Bits bits_from_string(const std::string& s) {
  if (s.size() > 62) throw std::invalid_argument("occupation string too long");
  Bits bits = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1') {
      bits |= Bits{1} << j;
    } else if (s[j] != '0') {
      throw std::invalid_argument("occupation string must contain only 0 and 1: " + s);
    }
  }
  return bits;
}

FockBasis::FockBasis(int mode_count, std::optional<int> particle_number, std::size_t max_dim)
    : mode_count_(mode_count), particle_number_(particle_number) {
  if (mode_count < 0 || mode_count > 62) {
    throw std::invalid_argument("mode count must lie in [0, 62], got " + std::to_string(mode_count));
  }
  binom_.assign(mode_count + 1, std::vector<std::uint64_t>(mode_count + 2, 0));
  for (int n = 0; n <= mode_count; ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= n; ++k) binom_[n][k] = binom_[n - 1][k - 1] + (k <= n - 1 ? binom_[n - 1][k] : 0);
  }
  if (particle_number) {
    int n = *particle_number;
    if (n < 0 || n > mode_count) {
      throw std::invalid_argument("particle number " + std::to_string(n) + " outside [0, " +
                                  std::to_string(mode_count) + "]");
    }
    std::uint64_t dim = binom_[mode_count][n];
    if (dim > max_dim) throw std::length_error("Fock sector dimension exceeds the limit");
    states_.reserve(dim);
    if (n == 0) {
      states_.push_back(0);
    } else {
      Bits v = (Bits{1} << n) - 1;
      Bits end = Bits{1} << mode_count;
      while (v < end) {
        states_.push_back(v);
        Bits t = v | (v - 1);
        v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
      }
    }
  } else {
    std::uint64_t dim = std::uint64_t{1} << mode_count;
    if (dim > max_dim) throw std::length_error("Fock space dimension exceeds the limit");
    states_.resize(dim);
    for (std::uint64_t i = 0; i < dim; ++i) states_[i] = i;
  }
}

std::int64_t FockBasis::index(Bits bits) const {
  if (mode_count_ < 64 && (bits >> mode_count_) != 0) return -1;
  if (!particle_number_) return static_cast<std::int64_t>(bits);
  if (std::popcount(bits) != *particle_number_) return -1;
  std::uint64_t rank = 0;
  int r = 0;
  while (bits) {
    int p = std::countr_zero(bits);
    ++r;
    if (r <= p) rank += binom_[p][r];
    bits &= bits - 1;
  }
  return static_cast<std::int64_t>(rank);
}

std::shared_ptr<const FockBasis> build_basis(int mode_count, std::optional<int> particle_number) {
  return std::make_shared<const FockBasis>(mode_count, particle_number);
}

LadderTerm::LadderTerm(std::vector<int> cre, std::vector<int> ann, cplx coeff)
    : creation(std::move(cre)), annihilation(std::move(ann)), coefficient(coeff) {
  auto check = [](const std::vector<int>& v, const char* what) {
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (v[a] < 0) throw std::invalid_argument(std::string("negative ") + what + " index");
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        if (v[a] == v[b]) {
          throw std::invalid_argument(std::string("repeated ") + what +
                                      " index makes the term vanish identically");
        }
      }
    }
  };
  check(creation, "creation");
  check(annihilation, "annihilation");
}

int LadderTerm::max_index() const {
  int m = -1;
  for (int c : creation) m = std::max(m, c);
  for (int a : annihilation) m = std::max(m, a);
  return m;
}

LadderTerm LadderTerm::adjoint() const {
  // (c+_a1 .. c+_an c_b1 .. c_bm)^dag = c+_bm .. c+_b1 c_an .. c_a1
  std::vector<int> cre(annihilation.rbegin(), annihilation.rend());
  std::vector<int> ann(creation.rbegin(), creation.rend());
  return LadderTerm(std::move(cre), std::move(ann), std::conj(coefficient));
}

std::optional<std::pair<Bits, int>> ladder_action(const LadderTerm& term, Bits bits) {
  int sign = 1;
  for (auto it = term.annihilation.rbegin(); it != term.annihilation.rend(); ++it) {
    int j = *it;
    if (!occupied(bits, j)) return std::nullopt;
    if (parity_below(bits, j)) sign = -sign;
    bits ^= Bits{1} << j;
  }
  for (auto it = term.creation.rbegin(); it != term.creation.rend(); ++it) {
    int j = *it;
    if (occupied(bits, j)) return std::nullopt;
    if (parity_below(bits, j)) sign = -sign;
    bits ^= Bits{1} << j;
  }
  return std::make_pair(bits, sign);
}

MixedRegister::MixedRegister(std::vector<SiteKind> sites, std::optional<int> particle_number)
    : sites_(std::move(sites)) {
  int modes = 0;
  local_.reserve(sites_.size());
  for (SiteKind k : sites_) {
    if (k == SiteKind::kFermion) {
      local_.push_back(modes++);
    } else {
      local_.push_back(qubit_count_++);
    }
  }
  if (qubit_count_ > 20) throw std::length_error("too many qubit sites for a dense register");
  basis_ = build_basis(modes, particle_number);
  if (dim() > FockBasis::kDefaultMaxDim) throw std::length_error("register dimension exceeds the limit");
}

std::shared_ptr<const MixedRegister> MixedRegister::fermions(int mode_count,
                                                             std::optional<int> particle_number) {
  return std::make_shared<const MixedRegister>(std::vector<SiteKind>(mode_count, SiteKind::kFermion),
                                               particle_number);
}

std::string MixedRegister::describe(std::size_t index) const {
  std::size_t f = index >> qubit_count_;
  Bits q = index & ((Bits{1} << qubit_count_) - 1);
  std::string s = bits_to_string(basis_->state(f), mode_count());
  if (qubit_count_ > 0) s += "|" + bits_to_string(q, qubit_count_);
  return s;
}

void MixedRegister::check_fermion(int site) const {
  if (site < 0 || site >= site_count()) throw std::out_of_range("site index out of range");
  if (is_qubit(site)) throw std::invalid_argument("site " + std::to_string(site) + " is a qubit site");
}

void MixedRegister::check_qubit(int site) const {
  if (site < 0 || site >= site_count()) throw std::out_of_range("site index out of range");
  if (!is_qubit(site)) throw std::invalid_argument("site " + std::to_string(site) + " is a fermionic site");
}

StateVector::StateVector(std::shared_ptr<const MixedRegister> r) : reg(std::move(r)) {
  amplitudes = Vec::Zero(static_cast<Eigen::Index>(reg->dim()));
}

StateVector StateVector::basis_state(std::shared_ptr<const MixedRegister> r, Bits fermions,
                                     Bits qubits) {
  StateVector s(r);
  std::int64_t f = r->fock().index(fermions);
  if (f < 0) throw std::invalid_argument("configuration not in the register's Fock basis");
  if (qubits >> r->qubit_count()) throw std::invalid_argument("qubit bits out of range");
  s.amplitudes[static_cast<Eigen::Index>(r->index(f, qubits))] = 1.0;
  return s;
}

namespace {

void check_term(const LadderTerm& term, const FockBasis& basis) {
  if (term.max_index() >= basis.mode_count()) throw std::out_of_range("ladder index beyond mode count");
  if (basis.particle_number() && !term.number_conserving()) {
    throw std::invalid_argument("number-changing term on a fixed particle-number sector");
  }
}

}  // namespace

StateVector apply_ladder(const LadderTerm& term, const StateVector& state) {
  const MixedRegister& reg = *state.reg;
  const FockBasis& basis = reg.fock();
  check_term(term, basis);
  StateVector out(state.reg);
  const std::size_t nq = std::size_t{1} << reg.qubit_count();
  for (std::size_t f = 0; f < basis.size(); ++f) {
    auto img = ladder_action(term, basis.state(f));
    if (!img) continue;
    std::int64_t g = basis.index(img->first);
    if (g < 0) throw std::logic_error("ladder image outside the basis");
    cplx c = term.coefficient * static_cast<double>(img->second);
    for (std::size_t q = 0; q < nq; ++q) {
      out.amplitudes[reg.index(g, q)] += c * state.amplitudes[reg.index(f, q)];
    }
  }
  return out;
}

Mat dense_matrix(const std::vector<LadderTerm>& terms, const FockBasis& basis, std::size_t max_dim) {
  if (basis.size() > max_dim) throw std::length_error("dense matrix dimension exceeds the limit");
  const auto n = static_cast<Eigen::Index>(basis.size());
  Mat m = Mat::Zero(n, n);
  for (const LadderTerm& term : terms) {
    check_term(term, basis);
    for (std::size_t f = 0; f < basis.size(); ++f) {
      auto img = ladder_action(term, basis.state(f));
      if (!img) continue;
      std::int64_t g = basis.index(img->first);
      if (g < 0) throw std::logic_error("ladder image outside the basis");
      m(g, static_cast<Eigen::Index>(f)) += term.coefficient * static_cast<double>(img->second);
    }
  }
  return m;
}

Mat dense_matrix(const std::vector<LadderTerm>& terms, const MixedRegister& reg, std::size_t max_dim) {
  if (reg.dim() > max_dim) throw std::length_error("dense matrix dimension exceeds the limit");
  Mat f = dense_matrix(terms, reg.fock(), max_dim);
  const auto nq = Eigen::Index{1} << reg.qubit_count();
  return Eigen::kroneckerProduct(f, Mat::Identity(nq, nq));
}

GroundState ground_state(const Mat& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("ground_state needs a square matrix");
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-10 * scale) throw std::invalid_argument("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  GroundState g;
  g.energy = es.eigenvalues()[0];
  g.vector = es.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < g.vector.size(); ++i) {
    double a = std::abs(g.vector[i]);
    if (a > 1e-9) {
      g.vector *= std::conj(g.vector[i]) / a;
      g.vector[i] = a;
      break;
    }
  }
  return g;
}

}  // namespace fermiproc
