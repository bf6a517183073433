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

// Z2 lattice gauge theory with staggered fermionic matter:
//   H = lE sum_l X_l + lB sum_p Z_p1 Z_p2 Z_p3 Z_p4
//     + lJ sum_<x,y> (c+_x Z_<x,y> c_y + h.c.) + lm sum_x (-1)^{s_x} n_x
// with Gauss operators V_x = (-1)^{n_x} prod_{l at x} X_l.
//
// Register layout: matter sites first (fermionic, in site order), then one
// qubit per link (in link order).
//
// Lattice file:
//   site <x> <y>
//   link <site a> <site b>
//   plaquette <link> <link> <link> <link>
//   particles <N>                     (optional)
//   couplings <lE> <lB> <lJ> <lm>     (optional)

#ifndef FERMIPROC_LGT_HPP_
#define FERMIPROC_LGT_HPP_

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermiproc/circuit.hpp"

namespace fermiproc {

struct LGTCouplings {
  double electric = 1.0;
  double magnetic = 1.0;
  double hopping = 1.0;
  double mass = 1.0;
};

struct LGTModel {
  std::vector<std::array<int, 2>> coordinates;
  std::vector<std::pair<int, int>> links;
  std::vector<std::array<int, 4>> plaquettes;
  LGTCouplings couplings;
  std::optional<int> particles;

  int site_count() const { return static_cast<int>(coordinates.size()); }
  int link_count() const { return static_cast<int>(links.size()); }
  // s_x: parity of the coordinate sum.
  int stagger(int x) const { return (coordinates.at(x)[0] + coordinates.at(x)[1]) & 1; }
  int link_register_site(int l) const { return site_count() + l; }
  std::vector<int> incident_links(int x) const;

  // Throws on bad incidence: unknown sites, repeated links, isolated sites,
  // plaquettes whose links do not close a loop.
  void validate() const;
  std::vector<SiteKind> register_layout() const;
  std::shared_ptr<const MixedRegister> make_register() const;
};

LGTModel single_plaquette(const LGTCouplings& couplings, std::optional<int> particles = 2);
LGTModel parse_lattice(std::istream& in, const std::string& source);
LGTModel load_lattice(const std::string& path);

Mat gauss_operator(const LGTModel& model, const MixedRegister& reg, int x);
Mat lgt_dense(const LGTModel& model, const MixedRegister& reg, std::size_t max_dim = 4096);

// One first-order Trotter step: mass N gates, electric RX(2 lE dt), hopping
// INT(l,x,pi) T_xy(-2 lJ dt, 0, 0) INT(l,x,pi) per link, then per plaquette
// a CZ ladder onto its last link around RX(-2 lB dt), dressed by
// RZ RX RZ at +-pi/2. CZ between link qubits is INT(pi) on qubit sites.
Circuit lgt_trotter_step(const LGTModel& model, double dt);

}  // namespace fermiproc

#endif  // FERMIPROC_LGT_HPP_
