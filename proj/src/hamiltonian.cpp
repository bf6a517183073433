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

#include "fermiproc/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fermiproc {

namespace {

constexpr double kHermTol = 1e-12;

[[noreturn]] void parse_error(const std::string& source, int line, const std::string& msg) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + msg);
}

bool close(cplx a, cplx b) { return std::abs(a - b) <= kHermTol * std::max(1.0, std::abs(a)); }

}  // namespace

std::vector<LadderTerm> SecondQuantizedHamiltonian::terms() const {
  std::vector<LadderTerm> out;
  out.reserve(one_body.size() + two_body.size());
  for (const auto& [ij, c] : one_body) out.emplace_back(std::vector<int>{ij.first}, std::vector<int>{ij.second}, c);
  for (const auto& [idx, c] : two_body) {
    out.emplace_back(std::vector<int>{idx[0], idx[1]}, std::vector<int>{idx[2], idx[3]}, c);
  }
  return out;
}

double SecondQuantizedHamiltonian::hermiticity_defect() const {
  double d = 0.0;
  for (const auto& [ij, c] : one_body) {
    auto it = one_body.find({ij.second, ij.first});
    cplx p = it == one_body.end() ? cplx(0.0) : it->second;
    d = std::max(d, std::abs(c - std::conj(p)));
  }
  for (const auto& [idx, c] : two_body) {
    auto it = two_body.find({idx[3], idx[2], idx[1], idx[0]});
    cplx p = it == two_body.end() ? cplx(0.0) : it->second;
    d = std::max(d, std::abs(c - std::conj(p)));
  }
  return d;
}

SecondQuantizedHamiltonian parse_hamiltonian(std::istream& in, const std::string& source,
                                             std::vector<std::string>* warnings) {
  SecondQuantizedHamiltonian h;
  bool have_header = false;
  std::string raw;
  int lineno = 0;
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  std::map<std::pair<int, int>, int> one_line;
  std::map<std::array<int, 4>, int> two_line;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "L") {
      if (have_header) parse_error(source, lineno, "duplicate L header");
      if (!(ls >> h.mode_count) || h.mode_count <= 0 || h.mode_count > 62) {
        parse_error(source, lineno, "L must be followed by a mode count in [1, 62]");
      }
      have_header = true;
    } else if (tag == "1" || tag == "2") {
      if (!have_header) parse_error(source, lineno, "coefficient before the L header");
      int n = tag == "1" ? 2 : 4;
      std::array<int, 4> idx{};
      for (int a = 0; a < n; ++a) {
        if (!(ls >> idx[a])) parse_error(source, lineno, "expected " + std::to_string(n) + " indices");
        if (idx[a] < 0 || idx[a] >= h.mode_count) parse_error(source, lineno, "index out of range");
      }
      double re = 0.0;
      double im = 0.0;
      if (!(ls >> re >> im)) parse_error(source, lineno, "expected real and imaginary parts");
      if (!std::isfinite(re) || !std::isfinite(im)) parse_error(source, lineno, "non-finite coefficient");
      cplx c(re, im);
      if (n == 2) {
        std::pair<int, int> key{idx[0], idx[1]};
        auto it = h.one_body.find(key);
        if (it != h.one_body.end()) {
          if (!close(it->second, c)) {
            parse_error(source, lineno, "conflicting duplicate of line " + std::to_string(one_line[key]));
          }
          continue;
        }
        h.one_body[key] = c;
        one_line[key] = lineno;
      } else {
        if (idx[0] == idx[1] || idx[2] == idx[3]) {
          warn(source + ":" + std::to_string(lineno) + ": repeated index, term vanishes and is dropped");
          continue;
        }
        auto it = h.two_body.find(idx);
        if (it != h.two_body.end()) {
          if (!close(it->second, c)) {
            parse_error(source, lineno, "conflicting duplicate of line " + std::to_string(two_line[idx]));
          }
          continue;
        }
        h.two_body[idx] = c;
        two_line[idx] = lineno;
      }
    } else {
      parse_error(source, lineno, "unknown record '" + tag + "'");
    }
  }
  if (!have_header) throw std::runtime_error(source + ": missing L header");

  // Hermitian closure.
  std::vector<std::pair<std::pair<int, int>, cplx>> add1;
  for (const auto& [ij, c] : h.one_body) {
    std::pair<int, int> p{ij.second, ij.first};
    auto it = h.one_body.find(p);
    if (it == h.one_body.end()) {
      add1.push_back({p, std::conj(c)});
    } else if (!close(it->second, std::conj(c))) {
      parse_error(source, one_line[ij], "one-body entry is not Hermitian with line " + std::to_string(one_line[p]));
    }
  }
  for (const auto& [p, c] : add1) {
    warn(source + ": added missing Hermitian partner 1 " + std::to_string(p.first) + " " + std::to_string(p.second));
    h.one_body[p] = c;
  }
  std::vector<std::pair<std::array<int, 4>, cplx>> add2;
  for (const auto& [idx, c] : h.two_body) {
    std::array<int, 4> p{idx[3], idx[2], idx[1], idx[0]};
    auto it = h.two_body.find(p);
    if (it == h.two_body.end()) {
      add2.push_back({p, std::conj(c)});
    } else if (!close(it->second, std::conj(c))) {
      parse_error(source, two_line[idx], "two-body entry is not Hermitian with line " + std::to_string(two_line[p]));
    }
  }
  for (const auto& [p, c] : add2) {
    warn(source + ": added missing Hermitian partner 2 " + std::to_string(p[0]) + " " + std::to_string(p[1]) + " " +
         std::to_string(p[2]) + " " + std::to_string(p[3]));
    h.two_body[p] = c;
  }
  return h;
}

SecondQuantizedHamiltonian load_hamiltonian(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file " + path);
  return parse_hamiltonian(in, path, warnings);
}

void write_hamiltonian(std::ostream& out, const SecondQuantizedHamiltonian& h) {
  out << "L " << h.mode_count << "\n";
  out << std::setprecision(17);
  for (const auto& [ij, c] : h.one_body) {
    out << "1 " << ij.first << " " << ij.second << " " << c.real() << " " << c.imag() << "\n";
  }
  for (const auto& [idx, c] : h.two_body) {
    out << "2 " << idx[0] << " " << idx[1] << " " << idx[2] << " " << idx[3] << " " << c.real() << " " << c.imag()
        << "\n";
  }
}

Mat hamiltonian_matrix(const SecondQuantizedHamiltonian& h, const FockBasis& basis, std::size_t max_dim) {
  if (basis.mode_count() != h.mode_count) throw std::invalid_argument("basis and Hamiltonian mode counts differ");
  return dense_matrix(h.terms(), basis, max_dim);
}

SecondQuantizedHamiltonian relabel_modes(const SecondQuantizedHamiltonian& h, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != h.mode_count) throw std::invalid_argument("permutation size mismatch");
  SecondQuantizedHamiltonian out;
  out.mode_count = h.mode_count;
  for (const auto& [ij, c] : h.one_body) out.one_body[{perm[ij.first], perm[ij.second]}] = c;
  for (const auto& [idx, c] : h.two_body) {
    out.two_body[{perm[idx[0]], perm[idx[1]], perm[idx[2]], perm[idx[3]]}] = c;
  }
  return out;
}

SecondQuantizedHamiltonian random_hamiltonian(int mode_count, std::mt19937_64& rng, double one_body_scale,
                                              double two_body_scale) {
  if (mode_count < 1 || mode_count > 62) throw std::invalid_argument("bad mode count");
  std::normal_distribution<double> g(0.0, 1.0);
  SecondQuantizedHamiltonian h;
  h.mode_count = mode_count;
  for (int i = 0; i < mode_count; ++i) {
    for (int j = i; j < mode_count; ++j) {
      double re = g(rng);
      double im = i == j ? 0.0 : g(rng);
      cplx w = one_body_scale * cplx(re, im);
      h.one_body[{i, j}] = w;
      h.one_body[{j, i}] = std::conj(w);
    }
  }
  if (two_body_scale == 0.0) return h;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < mode_count; ++a) {
    for (int b = a + 1; b < mode_count; ++b) pairs.emplace_back(a, b);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p; q < pairs.size(); ++q) {
      auto [a, b] = pairs[p];
      auto [c, d] = pairs[q];
      double re = g(rng);
      double im = p == q ? 0.0 : g(rng);
      cplx w = two_body_scale * cplx(re, im);
      h.two_body[{a, b, c, d}] = w;
      h.two_body[{d, c, b, a}] = std::conj(w);
    }
  }
  return h;
}

}  // namespace fermiproc
