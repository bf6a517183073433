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

#include "fermiproc/lgt.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fermiproc {

std::vector<int> LGTModel::incident_links(int x) const {
  std::vector<int> out;
  for (int l = 0; l < link_count(); ++l) {
    if (links[l].first == x || links[l].second == x) out.push_back(l);
  }
  return out;
}

void LGTModel::validate() const {
  if (coordinates.empty()) throw std::invalid_argument("lattice has no sites");
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : links) {
    if (a < 0 || b < 0 || a >= site_count() || b >= site_count()) throw std::invalid_argument("link to unknown site");
    if (a == b) throw std::invalid_argument("link joins a site to itself");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw std::invalid_argument("repeated link");
  }
  for (int x = 0; x < site_count(); ++x) {
    if (incident_links(x).empty()) throw std::invalid_argument("site " + std::to_string(x) + " has no links");
  }
  for (const auto& p : plaquettes) {
    std::map<int, int> degree;
    std::set<int> distinct;
    for (int l : p) {
      if (l < 0 || l >= link_count()) throw std::invalid_argument("plaquette refers to unknown link");
      distinct.insert(l);
      ++degree[links[l].first];
      ++degree[links[l].second];
    }
    if (distinct.size() != 4) throw std::invalid_argument("plaquette repeats a link");
    for (const auto& [site, d] : degree) {
      if (d != 2) throw std::invalid_argument("plaquette links do not form a closed loop");
    }
    if (degree.size() != 4) throw std::invalid_argument("plaquette links do not form a single loop");
  }
  if (particles && (*particles < 0 || *particles > site_count())) {
    throw std::invalid_argument("particle number outside [0, sites]");
  }
}

std::vector<SiteKind> LGTModel::register_layout() const {
  std::vector<SiteKind> s(site_count(), SiteKind::kFermion);
  s.insert(s.end(), link_count(), SiteKind::kQubit);
  return s;
}

std::shared_ptr<const MixedRegister> LGTModel::make_register() const {
  return std::make_shared<const MixedRegister>(register_layout(), particles);
}

LGTModel single_plaquette(const LGTCouplings& couplings, std::optional<int> particles) {
  LGTModel m;
  m.coordinates = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  m.links = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  m.plaquettes = {{0, 1, 2, 3}};
  m.couplings = couplings;
  m.particles = particles;
  m.validate();
  return m;
}

LGTModel parse_lattice(std::istream& in, const std::string& source) {
  LGTModel m;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "site") {
      std::array<int, 2> c{};
      if (!(ls >> c[0] >> c[1])) fail("site needs two integer coordinates");
      m.coordinates.push_back(c);
    } else if (tag == "link") {
      int a = 0, b = 0;
      if (!(ls >> a >> b)) fail("link needs two site indices");
      m.links.push_back({a, b});
    } else if (tag == "plaquette") {
      std::array<int, 4> p{};
      for (int& l : p) {
        if (!(ls >> l)) fail("plaquette needs four link indices");
      }
      m.plaquettes.push_back(p);
    } else if (tag == "particles") {
      int n = 0;
      if (!(ls >> n)) fail("particles needs an integer");
      m.particles = n;
    } else if (tag == "couplings") {
      LGTCouplings c;
      if (!(ls >> c.electric >> c.magnetic >> c.hopping >> c.mass)) fail("couplings needs four numbers");
      m.couplings = c;
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
  return m;
}

LGTModel load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lattice file " + path);
  return parse_lattice(in, path);
}

Mat gauss_operator(const LGTModel& model, const MixedRegister& reg, int x) {
  if (x < 0 || x >= model.site_count()) throw std::out_of_range("site out of range");
  const auto n = static_cast<Eigen::Index>(reg.dim());
  Bits flip = 0;
  for (int l : model.incident_links(x)) flip |= Bits{1} << reg.local_index(model.link_register_site(l));
  const int mode = reg.local_index(x);
  Mat v = Mat::Zero(n, n);
  const Bits nq = Bits{1} << reg.qubit_count();
  for (std::size_t f = 0; f < reg.fock().size(); ++f) {
    double sign = occupied(reg.fock().state(f), mode) ? -1.0 : 1.0;
    for (Bits q = 0; q < nq; ++q) {
      v(static_cast<Eigen::Index>(reg.index(f, q ^ flip)), static_cast<Eigen::Index>(reg.index(f, q))) = sign;
    }
  }
  return v;
}

Mat lgt_dense(const LGTModel& model, const MixedRegister& reg, std::size_t max_dim) {
  if (reg.dim() > max_dim) throw std::length_error("register too large for a dense LGT Hamiltonian");
  if (reg.sites() != model.register_layout()) throw std::invalid_argument("register does not match the lattice");
  const auto n = static_cast<Eigen::Index>(reg.dim());
  const LGTCouplings& c = model.couplings;
  Mat h = Mat::Zero(n, n);
  for (int l = 0; l < model.link_count(); ++l) h += c.electric * qubit_pauli(reg, model.link_register_site(l), 'X');
  for (const auto& p : model.plaquettes) {
    Mat z = Mat::Identity(n, n);
    for (int l : p) z = z * qubit_pauli(reg, model.link_register_site(l), 'Z');
    h += c.magnetic * z;
  }
  for (int l = 0; l < model.link_count(); ++l) {
    auto [x, y] = model.links[l];
    LadderTerm hop({reg.local_index(x)}, {reg.local_index(y)});
    Mat k = dense_matrix({hop, hop.adjoint()}, reg, max_dim);
    h += c.hopping * k * qubit_pauli(reg, model.link_register_site(l), 'Z');
  }
  for (int x = 0; x < model.site_count(); ++x) {
    double s = model.stagger(x) ? -1.0 : 1.0;
    h += c.mass * s * site_number_operator(reg, x);
  }
  return h;
}

Circuit lgt_trotter_step(const LGTModel& model, double dt) {
  model.validate();
  const LGTCouplings& c = model.couplings;
  Circuit circ(model.register_layout());
  for (int x = 0; x < model.site_count(); ++x) {
    double s = model.stagger(x) ? -1.0 : 1.0;
    if (c.mass != 0.0) circ.append(GateSpec::number_phase(x, c.mass * s * dt));
  }
  for (int l = 0; l < model.link_count(); ++l) {
    if (c.electric != 0.0) circ.append(GateSpec::rx(model.link_register_site(l), 2.0 * c.electric * dt));
  }
  if (c.hopping != 0.0) {
    for (int l = 0; l < model.link_count(); ++l) {
      auto [x, y] = model.links[l];
      int q = model.link_register_site(l);
      // (-1)^{n_l n_x} flips the sign of the hop when the link is in |1>.
      circ.append(GateSpec::interaction(q, x, kPi));
      circ.append(GateSpec::tunneling(x, y, {-2.0 * c.hopping * dt, 0.0, 0.0}));
      circ.append(GateSpec::interaction(q, x, kPi));
    }
  }
  if (c.magnetic != 0.0) {
    for (const auto& p : model.plaquettes) {
      int q4 = model.link_register_site(p[3]);
      circ.append(GateSpec::rz(q4, kPi / 2));
      circ.append(GateSpec::rx(q4, kPi / 2));
      circ.append(GateSpec::rz(q4, kPi / 2));
      for (int k = 0; k < 3; ++k) circ.append(GateSpec::interaction(model.link_register_site(p[k]), q4, kPi));
      circ.append(GateSpec::rx(q4, -2.0 * c.magnetic * dt));
      for (int k = 0; k < 3; ++k) circ.append(GateSpec::interaction(model.link_register_site(p[k]), q4, kPi));
      circ.append(GateSpec::rz(q4, -kPi / 2));
      circ.append(GateSpec::rx(q4, -kPi / 2));
      circ.append(GateSpec::rz(q4, -kPi / 2));
    }
  }
  return circ;
}

}  // namespace fermiproc
