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

#include "fermiproc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fermiproc {

std::vector<int> gate_support(const GateSpec& gate, const std::vector<SiteKind>& sites) {
  std::vector<int> hop;
  switch (gate.kind) {
    case GateKind::kTunneling:
      hop = {gate.sites[0], gate.sites[1]};
      break;
    case GateKind::kControlledTunneling:
      hop = {gate.sites[1], gate.sites[2]};
      break;
    case GateKind::kDensityTunneling:
      hop = {gate.sites[0], gate.sites[2]};
      break;
    case GateKind::kPairTunneling:
      hop = gate.sites;
      break;
    default:
      break;
  }
  std::set<int> out(gate.sites.begin(), gate.sites.end());
  if (!hop.empty()) {
    auto [lo, hi] = std::minmax_element(hop.begin(), hop.end());
    for (int s = *lo; s <= *hi; ++s) {
      if (sites.at(s) == SiteKind::kFermion) out.insert(s);
    }
  }
  return {out.begin(), out.end()};
}

Circuit::Circuit(int site_count) : sites_(site_count, SiteKind::kFermion) {}

Circuit::Circuit(std::vector<SiteKind> sites) : sites_(std::move(sites)) {}

bool Circuit::overlaps(const std::vector<int>& a, const std::vector<int>& b) const {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

void Circuit::append(const GateSpec& gate) {
  validate_gate(gate, sites_);
  std::vector<int> sup = gate_support(gate, sites_);
  int target = 0;
  for (int l = depth() - 1; l >= 0; --l) {
    bool hit = false;
    for (const auto& other : supports_[l]) {
      if (overlaps(sup, other)) {
        hit = true;
        break;
      }
    }
    if (hit) {
      target = l + 1;
      break;
    }
  }
  if (target == depth()) {
    layers_.emplace_back();
    supports_.emplace_back();
  }
  layers_[target].push_back(gate);
  supports_[target].push_back(std::move(sup));
}

void Circuit::append(const Circuit& other) {
  if (other.sites_ != sites_) throw std::invalid_argument("circuits act on different registers");
  for (const GateSpec& g : other.gates()) append(g);
}

void Circuit::append_layer(const std::vector<GateSpec>& gates) {
  std::vector<std::vector<int>> sups;
  for (const GateSpec& g : gates) {
    validate_gate(g, sites_);
    sups.push_back(gate_support(g, sites_));
    for (std::size_t a = 0; a + 1 < sups.size(); ++a) {
      if (overlaps(sups[a], sups.back())) throw std::invalid_argument("gates in one layer overlap");
    }
  }
  layers_.push_back(gates);
  supports_.push_back(std::move(sups));
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

std::map<GateKind, int> Circuit::gate_counts() const {
  std::map<GateKind, int> c;
  for (const auto& l : layers_) {
    for (const GateSpec& g : l) ++c[g.kind];
  }
  return c;
}

std::vector<GateSpec> Circuit::gates() const {
  std::vector<GateSpec> out;
  for (const auto& l : layers_) out.insert(out.end(), l.begin(), l.end());
  return out;
}

void Circuit::check_layers() const {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    std::set<int> used;
    for (const GateSpec& g : layers_[l]) {
      for (int s : gate_support(g, sites_)) {
        if (!used.insert(s).second) throw std::logic_error("layer " + std::to_string(l) + " has overlapping gates");
      }
    }
  }
}

Circuit pack_layers(const std::vector<GateSpec>& gates, const std::vector<SiteKind>& sites) {
  Circuit c(sites);
  std::vector<GateSpec> rest = gates;
  while (!rest.empty()) {
    std::vector<GateSpec> layer;
    std::vector<GateSpec> later;
    std::set<int> used;
    for (const GateSpec& g : rest) {
      validate_gate(g, sites);
      auto sup = gate_support(g, sites);
      bool free = std::none_of(sup.begin(), sup.end(), [&](int s) { return used.count(s) > 0; });
      if (free) {
        used.insert(sup.begin(), sup.end());
        layer.push_back(g);
      } else {
        later.push_back(g);
      }
    }
    c.append_layer(layer);
    rest = std::move(later);
  }
  return c;
}

void apply_circuit(const Circuit& circuit, StateVector& state) {
  if (circuit.sites() != state.reg->sites()) throw std::invalid_argument("circuit and register layouts differ");
  for (const auto& layer : circuit.layers()) {
    for (const GateSpec& g : layer) apply_gate(g, state);
  }
}

Mat circuit_unitary(const Circuit& circuit, const MixedRegister& reg) {
  auto shared = std::make_shared<const MixedRegister>(reg);
  const auto n = static_cast<Eigen::Index>(reg.dim());
  Mat u(n, n);
  StateVector col(shared);
  for (Eigen::Index c = 0; c < n; ++c) {
    col.amplitudes.setZero();
    col.amplitudes[c] = 1.0;
    apply_circuit(circuit, col);
    u.col(c) = col.amplitudes;
  }
  return u;
}

void write_circuit(std::ostream& out, const Circuit& circuit) {
  std::string kinds;
  for (SiteKind k : circuit.sites()) kinds += k == SiteKind::kFermion ? 'F' : 'Q';
  out << "SITES " << kinds << "\n";
  char buf[64];
  for (std::size_t l = 0; l < circuit.layers().size(); ++l) {
    if (l > 0) out << "---\n";
    for (const GateSpec& g : circuit.layers()[l]) {
      out << gate_name(g.kind);
      for (int s : g.sites) out << " " << s;
      for (double p : g.params) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << " " << buf;
      }
      out << "\n";
    }
  }
}

Circuit read_circuit(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<SiteKind> sites;
  std::vector<std::vector<GateSpec>> layers(1);
  int max_site = -1;
  bool first = true;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("circuit line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "SITES") {
      if (!first) fail("SITES must come first");
      std::string kinds;
      ls >> kinds;
      for (char c : kinds) {
        if (c == 'F') {
          sites.push_back(SiteKind::kFermion);
        } else if (c == 'Q') {
          sites.push_back(SiteKind::kQubit);
        } else {
          fail("site kinds must be F or Q");
        }
      }
      first = false;
      continue;
    }
    first = false;
    if (tag == "---") {
      layers.emplace_back();
      continue;
    }
    GateKind kind;
    try {
      kind = gate_kind_from_name(tag);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    std::vector<int> s(gate_arity(kind));
    std::vector<double> p(gate_param_count(kind));
    for (int& x : s) {
      if (!(ls >> x)) fail("missing site index");
      max_site = std::max(max_site, x);
    }
    for (double& x : p) {
      if (!(ls >> x)) fail("missing parameter");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
    try {
      layers.back().emplace_back(kind, s, p);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (sites.empty()) sites.assign(max_site + 1, SiteKind::kFermion);
  Circuit c(sites);
  for (const auto& l : layers) {
    if (!l.empty()) c.append_layer(l);
  }
  return c;
}

std::string circuit_to_string(const Circuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

Circuit circuit_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_circuit(is);
}

namespace {

int ladder_sign(const LadderTerm& t, Bits bits, Bits expect) {
  auto img = ladder_action(t, bits);
  if (!img || img->first != expect) throw std::logic_error("unexpected ladder image");
  return img->second;
}

}  // namespace

Circuit trotter_step(const SecondQuantizedHamiltonian& h, double dt) {
  if (h.hermiticity_defect() > 1e-10) throw std::invalid_argument("Hamiltonian is not Hermitian");
  std::vector<GateSpec> gates;
  std::vector<GateSpec> diag;
  for (const auto& [ij, w] : h.one_body) {
    auto [i, j] = ij;
    if (i == j) {
      if (w.real() != 0.0) diag.push_back(GateSpec::number_phase(i, w.real() * dt));
    } else if (i < j && std::abs(w) > 0.0) {
      gates.push_back(GateSpec::tunneling(i, j, {2.0 * std::abs(w) * dt, -std::arg(w), 0.0}));
    }
  }
  gates.insert(gates.end(), diag.begin(), diag.end());

  std::map<std::array<int, 4>, cplx> normal;
  for (const auto& [idx, c] : h.two_body) {
    int a = idx[0], b = idx[1], cc = idx[2], d = idx[3];
    double s = 1.0;
    if (a > b) {
      std::swap(a, b);
      s = -s;
    }
    if (cc > d) {
      std::swap(cc, d);
      s = -s;
    }
    normal[{a, b, cc, d}] += s * c;
  }
  for (const auto& [key, w] : normal) {
    auto [a, b, c, d] = key;
    std::pair<int, int> cre{a, b};
    std::pair<int, int> ann{c, d};
    if (cre > ann || std::abs(w) == 0.0) continue;
    if (cre == ann) {
      // c+_a c+_b c_a c_b = -n_a n_b
      gates.push_back(GateSpec::interaction(a, b, -w.real() * dt));
      continue;
    }
    auto partner = normal.find({c, d, a, b});
    cplx pw = partner == normal.end() ? cplx(0.0) : partner->second;
    if (std::abs(pw - std::conj(w)) > 1e-10 * std::max(1.0, std::abs(w))) {
      throw std::invalid_argument("two-body table is not Hermitian after normal ordering");
    }
    std::vector<int> shared;
    for (int x : {a, b}) {
      if (x == c || x == d) shared.push_back(x);
    }
    if (shared.empty()) {
      gates.push_back(GateSpec::pair_tunneling(a, b, c, d, std::abs(w) * dt, -std::arg(w)));
    } else {
      int m = shared[0];
      int x = a == m ? b : a;
      int y = c == m ? d : c;
      Bits in = (Bits{1} << m) | (Bits{1} << y);
      Bits outb = (Bits{1} << m) | (Bits{1} << x);
      int s = ladder_sign(LadderTerm({a, b}, {c, d}), in, outb) * ladder_sign(LadderTerm({x, m}, {m, y}), in, outb);
      cplx ws = w * static_cast<double>(s);
      gates.push_back(GateSpec::density_tunneling(x, m, y, std::abs(ws) * dt, -std::arg(ws)));
    }
  }
  return pack_layers(gates, std::vector<SiteKind>(h.mode_count, SiteKind::kFermion));
}

}  // namespace fermiproc
