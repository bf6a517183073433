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

#include "fermiproc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermiproc/circuit.hpp"
#include "fermiproc/decomposition.hpp"
#include "fermiproc/echo.hpp"
#include "fermiproc/hamiltonian.hpp"
#include "fermiproc/lgt.hpp"
#include "fermiproc/noise.hpp"
#include "fermiproc/parallel.hpp"
#include "fermiproc/qpe.hpp"
#include "fermiproc/vqe.hpp"

namespace fermiproc {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::string command;
  json section;
  fs::path base_dir;
  std::optional<std::uint64_t> seed;
  fs::path out_dir;
  int workers = 1;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  std::uint64_t require_seed() const {
    if (!seed) throw UsageError(command + " is stochastic and needs --seed");
    return *seed;
  }
  fs::path resolve(const std::string& p) const {
    fs::path q(p);
    return q.is_absolute() ? q : base_dir / q;
  }
  std::ofstream open_csv(const std::string& name) const {
    fs::create_directories(out_dir);
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
    f << std::setprecision(17);
    return f;
  }
};

// Typed access with key context in error messages.
template <class T>
T get(const json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

template <class T>
T require(const json& j, const std::string& key) {
  if (!j.contains(key)) throw UsageError("config key '" + key + "' is required");
  return get<T>(j, key, T{});
}

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw UsageError("unknown key '" + k + "' in " + where);
    }
  }
}

bool is_finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// ---------------------------------------------------------------- verify-decomp

int cmd_verify_decomp(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"targets", "grid", "theta1", "theta2", "restarts", "tolerance", "max_evaluations",
                 "five_gate_scan"},
             "verify-decomp");
  const std::uint64_t seed = ctx.require_seed();
  auto targets = get<std::vector<std::string>>(c, "targets", {"dt", "pt"});
  int grid = get<int>(c, "grid", 5);
  if (grid < 1) throw UsageError("grid must be positive");
  auto t1 = get<std::vector<double>>(c, "theta1", {});
  auto t2 = get<std::vector<double>>(c, "theta2", {});
  if (t1.empty()) {
    for (int a = 0; a < grid; ++a) t1.push_back(2.0 * kPi * (a + 1) / (grid + 1));
  }
  if (t2.empty()) {
    for (int b = 0; b < grid; ++b) t2.push_back(2.0 * kPi * b / grid);
  }
  SearchOptions opt;
  opt.restarts = get<int>(c, "restarts", 64);
  opt.tolerance = get<double>(c, "tolerance", 1e-9);
  opt.max_evaluations = get<int>(c, "max_evaluations", opt.max_evaluations);
  if (opt.restarts < 1 || !(opt.tolerance > 0.0)) throw UsageError("restarts and tolerance must be positive");
  std::vector<GateKind> kinds;
  for (const auto& t : targets) {
    if (t == "dt") {
      kinds.push_back(GateKind::kDensityTunneling);
    } else if (t == "pt") {
      kinds.push_back(GateKind::kPairTunneling);
    } else {
      throw UsageError("unknown decomposition target '" + t + "'");
    }
  }
  const json scan = get<json>(c, "five_gate_scan", json::object());
  check_keys(scan, {"points", "restarts", "max_evaluations"}, "five_gate_scan");
  const int scan_points = get<int>(scan, "points", 0);
  const int scan_restarts = get<int>(scan, "restarts", 8);
  const int scan_evaluations = get<int>(scan, "max_evaluations", 50000);

  struct Row {
    GateKind kind;
    double a, b;
    DecompositionResult r;
  };
  std::vector<Row> rows;
  for (GateKind k : kinds) {
    for (double a : t1) {
      for (double b : t2) rows.push_back({k, a, b, {}});
    }
  }
  parallel_for(rows.size(), ctx.workers, [&](std::size_t i) {
    Row& row = rows[i];
    SearchOptions o = opt;
    o.seed = derive_seed(seed, i);
    auto tmpl = row.kind == GateKind::kDensityTunneling ? dt_template() : pt_layered_template();
    row.r = find_decomposition(row.kind, row.a, row.b, tmpl, o);
  });

  auto f = ctx.open_csv("decomp.csv");
  f << "target,theta1,theta2,template,gates,depth,residual,pass\n";
  int failures = 0;
  for (const auto& row : rows) {
    bool pass = row.r.success && row.r.residual <= opt.tolerance;
    failures += !pass;
    f << gate_name(row.kind) << ',' << row.a << ',' << row.b << ',' << row.r.solved.name << ','
      << row.r.solved.slot_count() << ',' << row.r.solved.depth() << ',' << row.r.residual << ',' << (pass ? 1 : 0)
      << '\n';
  }
  *ctx.out << "verify-decomp: " << rows.size() - failures << "/" << rows.size() << " grid points below "
           << opt.tolerance << "\n";

  if (scan_points > 0 && std::find(kinds.begin(), kinds.end(), GateKind::kPairTunneling) != kinds.end()) {
    // Sequential five-gate templates for pt; reported, not gating.
    auto tmpls = pt_five_gate_templates();
    struct ScanRow {
      double a, b;
      std::size_t t;
      double residual;
    };
    std::vector<ScanRow> scan_rows;
    for (int p = 0; p < scan_points && p < static_cast<int>(rows.size()); ++p) {
      for (std::size_t t = 0; t < tmpls.size(); ++t) scan_rows.push_back({t1[p % t1.size()], t2[p % t2.size()], t, 0.0});
    }
    parallel_for(scan_rows.size(), ctx.workers, [&](std::size_t i) {
      SearchOptions o = opt;
      o.restarts = scan_restarts;
      o.max_evaluations = scan_evaluations;
      o.seed = derive_seed(seed, 0xf17e, i);
      scan_rows[i].residual =
          find_decomposition(GateKind::kPairTunneling, scan_rows[i].a, scan_rows[i].b, tmpls[scan_rows[i].t], o)
              .residual;
    });
    auto g = ctx.open_csv("pt_five_gate.csv");
    g << "theta1,theta2,template,residual\n";
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : scan_rows) {
      g << s.a << ',' << s.b << ',' << tmpls[s.t].name << ',' << s.residual << '\n';
      best = std::min(best, s.residual);
    }
    *ctx.out << "verify-decomp: best five-gate pt residual " << best << " over " << scan_rows.size() << " searches\n";
  }
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- trotter

double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

int cmd_trotter(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"hamiltonian", "random", "particles", "time", "dt", "slope_tolerance"}, "trotter");
  SecondQuantizedHamiltonian h;
  if (c.contains("hamiltonian")) {
    fs::path p = ctx.resolve(require<std::string>(c, "hamiltonian"));
    if (!fs::exists(p)) throw UsageError("Hamiltonian file not found: " + p.string());
    try {
      h = load_hamiltonian(p.string());
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  } else if (c.contains("random")) {
    const json r = c.at("random");
    check_keys(r, {"modes", "two_body_scale"}, "trotter.random");
    std::mt19937_64 rng(ctx.require_seed());
    h = random_hamiltonian(get<int>(r, "modes", 4), rng, 1.0, get<double>(r, "two_body_scale", 0.5));
  } else {
    throw UsageError("trotter needs 'hamiltonian' or 'random'");
  }
  std::optional<int> particles;
  if (c.contains("particles")) particles = get<int>(c, "particles", 0);
  const double t = get<double>(c, "time", 1.0);
  auto dts = get<std::vector<double>>(c, "dt", {0.2, 0.1, 0.05, 0.025});
  const double slope_tol = get<double>(c, "slope_tolerance", 0.2);
  if (!(t > 0.0) || dts.empty()) throw UsageError("time and dt list must be positive and non-empty");
  for (double d : dts) {
    double n = t / d;
    if (!(d > 0.0) || std::abs(n - std::round(n)) > 1e-9) throw UsageError("every dt must divide the total time");
  }

  auto reg = MixedRegister::fermions(h.mode_count, particles);
  Mat hm = hamiltonian_matrix(h, reg->fock());
  Mat exact = expm(cplx(0.0, -t) * hm);
  auto f = ctx.open_csv("trotter.csv");
  f << "dt,steps,error\n";
  std::vector<double> lx, ly;
  bool exact_rows = true;
  for (double d : dts) {
    long n = std::lround(t / d);
    Mat step = circuit_unitary(trotter_step(h, d), *reg);
    Mat u = Mat::Identity(step.rows(), step.cols());
    for (long k = 0; k < n; ++k) u = step * u;
    double e = spectral_norm(u - exact);
    f << d << ',' << n << ',' << e << '\n';
    if (e > 1e-12) {
      exact_rows = false;
      lx.push_back(std::log(d));
      ly.push_back(std::log(e));
    }
  }
  if (exact_rows) {
    *ctx.out << "trotter: all terms commute, every row exact\n";
    return kExitOk;
  }
  if (lx.size() < 2) {
    *ctx.out << "trotter: too few nonzero errors for a slope\n";
    return kExitCheckFailed;
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  double slope = sxy / sxx;
  *ctx.out << "trotter: log-log slope " << slope << "\n";
  return std::abs(slope - 1.0) <= slope_tol ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- vqe

TrapParams parse_trap(const json& j) {
  check_keys(j, {"depth_khz", "waist_um", "wavelength_um", "mass_amu"}, "trap");
  TrapParams t;
  t.depth_khz = get<double>(j, "depth_khz", t.depth_khz);
  t.waist_um = get<double>(j, "waist_um", t.waist_um);
  t.wavelength_um = get<double>(j, "wavelength_um", t.wavelength_um);
  t.mass_amu = get<double>(j, "mass_amu", t.mass_amu);
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return t;
}

int cmd_vqe(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"hamiltonian", "reference", "optimizer", "target", "noise"}, "vqe");
  const std::uint64_t seed = ctx.require_seed();
  fs::path hp = ctx.resolve(require<std::string>(c, "hamiltonian"));
  if (!fs::exists(hp)) throw UsageError("Hamiltonian file not found: " + hp.string());
  SecondQuantizedHamiltonian h;
  try {
    h = load_hamiltonian(hp.string());
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::string ref = require<std::string>(c, "reference");
  if (static_cast<int>(ref.size()) != h.mode_count) throw UsageError("reference length differs from the mode count");
  Bits refbits = 0;
  try {
    refbits = bits_from_string(ref);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const json oj = get<json>(c, "optimizer", json::object());
  check_keys(oj, {"method", "initial_step", "size_tolerance", "max_evaluations", "restarts"}, "optimizer");
  MinimizeOptions mo;
  std::string method = get<std::string>(oj, "method", "nelder-mead");
  if (method == "nelder-mead") {
    mo.method = MinimizeMethod::kNelderMead;
  } else if (method == "bfgs") {
    mo.method = MinimizeMethod::kBfgs;
  } else {
    throw UsageError("unknown optimizer '" + method + "'");
  }
  mo.initial_step = get<double>(oj, "initial_step", mo.initial_step);
  mo.size_tolerance = get<double>(oj, "size_tolerance", mo.size_tolerance);
  mo.max_evaluations = get<int>(oj, "max_evaluations", mo.max_evaluations);
  mo.restarts = get<int>(oj, "restarts", mo.restarts);
  const double target = get<double>(c, "target", kChemicalAccuracy);

  std::optional<SweepSpec> sweep;
  NoiseModel nm;
  if (c.contains("noise")) {
    const json nj = c.at("noise");
    check_keys(nj, {"trap", "pulse_time_us", "overlap", "per_run", "delta_wr", "delta_r", "delta_z", "samples"},
               "vqe.noise");
    nm.trap = parse_trap(get<json>(nj, "trap", json::object()));
    nm.pulse_time_s = get<double>(nj, "pulse_time_us", 10.0) * 1e-6;
    std::string ov = get<std::string>(nj, "overlap", "transverse");
    if (ov == "transverse") {
      nm.overlap = OverlapMode::kTransverse;
    } else if (ov == "radial-literal") {
      nm.overlap = OverlapMode::kRadialLiteral;
    } else {
      throw UsageError("unknown overlap mode '" + ov + "'");
    }
    nm.per_run = get<bool>(nj, "per_run", false);
    SweepSpec s;
    s.delta_wr = get<std::vector<double>>(nj, "delta_wr", {0.0});
    s.delta_r = get<std::vector<double>>(nj, "delta_r", {0.0});
    s.delta_z = get<double>(nj, "delta_z", 0.0);
    s.samples = get<int>(nj, "samples", 200);
    s.seed = derive_seed(seed, 0x401);
    s.workers = ctx.workers;
    if (s.samples < 2) throw UsageError("noise samples must be at least 2");
    for (double v : s.delta_wr) {
      if (!is_finite_nonneg(v)) throw UsageError("noise widths must be non-negative");
    }
    for (double v : s.delta_r) {
      if (!is_finite_nonneg(v)) throw UsageError("noise widths must be non-negative");
    }
    if (!is_finite_nonneg(s.delta_z)) throw UsageError("noise widths must be non-negative");
    sweep = s;
  }

  EnergyModel model(h, UCCAnsatz::from_reference(h.mode_count, refbits));
  VQEResult r = optimize_vqe(model, mo, seed);
  {
    auto f = ctx.open_csv("vqe.csv");
    f << "parameters,energy,exact_energy,delta_e,evaluations,converged\n";
    f << r.params.size() << ',' << r.energy << ',' << r.exact_energy << ',' << r.delta_e << ',' << r.evaluations
      << ',' << (r.converged ? 1 : 0) << '\n';
    auto g = ctx.open_csv("vqe_params.csv");
    g << "index,theta\n";
    for (std::size_t k = 0; k < r.params.size(); ++k) g << k << ',' << r.params[k] << '\n';
  }
  *ctx.out << "vqe: " << r.params.size() << " parameters, E = " << std::setprecision(12) << r.energy
           << ", E0 = " << r.exact_energy << ", dE = " << r.delta_e << "\n";
  bool ok = std::abs(r.delta_e) < target;
  if (sweep) {
    auto cells = noise_sweep(model, r.params, nm, *sweep);
    auto f = ctx.open_csv("noise_sweep.csv");
    write_sweep_csv(f, cells);
    auto cross = threshold_crossing(cells);
    if (cross) {
      *ctx.out << "vqe: first cell above chemical accuracy at delta_wr = " << cross->delta_wr
               << ", delta_r = " << cross->delta_r << "\n";
    } else {
      *ctx.out << "vqe: no cell above chemical accuracy\n";
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- lgt

int cmd_lgt(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"lattice", "couplings", "particles", "dt", "steps", "matter", "tolerance"}, "lgt");
  LGTModel model;
  std::string lat = get<std::string>(c, "lattice", "single-plaquette");
  try {
    if (lat == "single-plaquette") {
      model = single_plaquette({}, get<int>(c, "particles", 2));
    } else {
      fs::path p = ctx.resolve(lat);
      if (!fs::exists(p)) throw UsageError("lattice file not found: " + p.string());
      model = load_lattice(p.string());
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (c.contains("couplings")) {
    const json cj = c.at("couplings");
    check_keys(cj, {"electric", "magnetic", "hopping", "mass"}, "lgt.couplings");
    model.couplings.electric = get<double>(cj, "electric", model.couplings.electric);
    model.couplings.magnetic = get<double>(cj, "magnetic", model.couplings.magnetic);
    model.couplings.hopping = get<double>(cj, "hopping", model.couplings.hopping);
    model.couplings.mass = get<double>(cj, "mass", model.couplings.mass);
  }
  if (c.contains("particles")) model.particles = get<int>(c, "particles", 2);
  const double dt = get<double>(c, "dt", 0.1);
  const int steps = get<int>(c, "steps", 100);
  const double tol = get<double>(c, "tolerance", 1e-10);
  if (steps < 1 || !std::isfinite(dt)) throw UsageError("steps must be positive and dt finite");
  std::shared_ptr<const MixedRegister> reg;
  try {
    reg = model.make_register();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::string matter = get<std::string>(c, "matter", "");
  if (matter.empty()) {
    for (int x = 0; x < model.site_count(); ++x) matter += x < model.particles.value_or(0) ? '1' : '0';
  }
  if (static_cast<int>(matter.size()) != model.site_count()) throw UsageError("matter string length differs from the site count");

  // Matter Fock state with every link in an X eigenstate.
  StateVector psi = StateVector::basis_state(reg, bits_from_string(matter));
  for (int l = 0; l < model.link_count(); ++l) {
    int q = model.link_register_site(l);
    apply_gate(GateSpec::rz(q, kPi / 2), psi);
    apply_gate(GateSpec::rx(q, kPi / 2), psi);
    apply_gate(GateSpec::rz(q, kPi / 2), psi);
  }
  std::vector<Mat> gauss;
  std::vector<double> g0;
  for (int x = 0; x < model.site_count(); ++x) {
    gauss.push_back(gauss_operator(model, *reg, x));
    g0.push_back(psi.amplitudes.dot(gauss.back() * psi.amplitudes).real());
  }
  Circuit step = lgt_trotter_step(model, dt);
  auto f = ctx.open_csv("lgt.csv");
  f << "step";
  for (int x = 0; x < model.site_count(); ++x) f << ",gauss_" << x;
  f << ",max_drift\n";
  double worst = 0.0;
  for (int s = 1; s <= steps; ++s) {
    apply_circuit(step, psi);
    double drift = 0.0;
    f << s;
    for (int x = 0; x < model.site_count(); ++x) {
      double g = psi.amplitudes.dot(gauss[x] * psi.amplitudes).real();
      f << ',' << g;
      drift = std::max(drift, std::abs(g - g0[x]));
    }
    f << ',' << drift << '\n';
    worst = std::max(worst, drift);
  }
  *ctx.out << "lgt: max Gauss-law drift " << worst << " over " << steps << " steps\n";
  return worst <= tol ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- qpe

struct QpeCase {
  std::string label;
  std::vector<SiteKind> sites;  // fermions then the ancilla
  int ancilla;
  ControlledPowerBuilder builder;
  Vec eigenvector;  // on the fermionic sector
  double phase;
  int particles;
};

std::vector<QpeCase> qpe_cases(const json& spec) {
  std::vector<QpeCase> out;
  std::string type = require<std::string>(spec, "type");
  const std::vector<SiteKind> sites{SiteKind::kFermion, SiteKind::kFermion, SiteKind::kQubit};
  auto freg = MixedRegister::fermions(2, 1);
  GateSpec g;
  ControlledPowerBuilder b;
  std::string label;
  if (type == "number-phase") {
    check_keys(spec, {"type", "theta"}, "qpe unitary");
    double th = require<double>(spec, "theta");
    g = GateSpec::number_phase(0, th);
    b = controlled_number_phase(sites, 2, 0, th);
    label = "N(" + std::to_string(th) + ")";
  } else if (type == "tunneling") {
    check_keys(spec, {"type", "theta1", "theta2", "theta3"}, "qpe unitary");
    TunnelingParams t{require<double>(spec, "theta1"), get<double>(spec, "theta2", 0.0), get<double>(spec, "theta3", 0.0)};
    g = GateSpec::tunneling(0, 1, t);
    b = controlled_tunneling_power(sites, 2, 0, 1, t);
    label = "T(" + std::to_string(t.theta1) + "," + std::to_string(t.theta2) + "," + std::to_string(t.theta3) + ")";
  } else {
    throw UsageError("unknown qpe unitary type '" + type + "'");
  }
  Mat u = gate_matrix(g, *freg);
  Eigen::ComplexEigenSolver<Mat> es(u);
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    cplx lam = es.eigenvalues()(k);
    double ph = -std::arg(lam) / (2.0 * kPi);
    ph -= std::floor(ph);
    if (ph >= 1.0) ph -= 1.0;
    out.push_back({label + "#" + std::to_string(k), sites, 2, b, es.eigenvectors().col(k).normalized(), ph, 1});
  }
  return out;
}

int cmd_qpe(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"bits", "unitaries"}, "qpe");
  auto bits = get<std::vector<int>>(c, "bits", {8});
  for (int k : bits) {
    if (k < 1 || k > 30) throw UsageError("qpe bit counts must lie in [1, 30]");
  }
  json us = get<json>(c, "unitaries", json::array({{{"type", "number-phase"}, {"theta", kPi / 2}}}));
  if (!us.is_array() || us.empty()) throw UsageError("qpe unitaries must be a non-empty list");
  std::vector<QpeCase> cases;
  for (const auto& u : us) {
    auto v = qpe_cases(u);
    cases.insert(cases.end(), v.begin(), v.end());
  }
  auto f = ctx.open_csv("qpe.csv");
  f << "unitary,bits,exact_phase,estimate,error,min_confidence,pass\n";
  int failures = 0;
  for (const auto& qc : cases) {
    auto reg = std::make_shared<const MixedRegister>(qc.sites, qc.particles);
    for (int k : bits) {
      StateVector s(reg);
      for (std::size_t fi = 0; fi < reg->fock().size(); ++fi) s.amplitudes[reg->index(fi, 0)] = qc.eigenvector[fi];
      QpeOptions o;
      o.bits = k;
      QpeResult r = iterative_qpe(qc.builder, s, qc.ancilla, o);
      double err = phase_distance(r.phase, qc.phase);
      bool pass = err < std::ldexp(1.0, -k);
      failures += !pass;
      f << qc.label << ',' << k << ',' << qc.phase << ',' << r.phase << ',' << err << ',' << r.min_confidence << ','
        << (pass ? 1 : 0) << '\n';
    }
  }
  *ctx.out << "qpe: " << cases.size() * bits.size() - failures << "/" << cases.size() * bits.size()
           << " estimates within 2^-k\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- echo

int cmd_echo(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"sites", "atoms", "J", "tau", "sigma", "strategy", "horizon", "threshold", "seeds", "record_every",
                 "min_ratio"},
             "echo");
  const std::uint64_t seed = ctx.require_seed();
  EchoConfig base;
  base.sites = get<int>(c, "sites", base.sites);
  base.atoms = get<int>(c, "atoms", base.atoms);
  base.j = get<double>(c, "J", base.j);
  base.tau = get<double>(c, "tau", base.tau);
  base.sigma = get<double>(c, "sigma", base.sigma);
  base.strategy = strategy_from_name(get<std::string>(c, "strategy", "cyclic-shift"));
  base.horizon = get<long>(c, "horizon", base.horizon);
  base.threshold = get<double>(c, "threshold", base.threshold);
  base.record_every = get<int>(c, "record_every", 1);
  const int seeds = get<int>(c, "seeds", 10);
  const double min_ratio = get<double>(c, "min_ratio", 50.0);
  if (seeds < 1) throw UsageError("seeds must be positive");
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<EchoTrace> traces(seeds);
  parallel_for(seeds, ctx.workers, [&](std::size_t s) {
    EchoConfig cfg = base;
    cfg.seed = derive_seed(seed, s);
    traces[s] = run_echo_experiment(cfg);
  });
  {
    auto f = ctx.open_csv("echo.csv");
    write_echo_csv(f, traces[0], base.tau);
  }
  auto g = ctx.open_csv("echo_summary.csv");
  g << "seed_index,useful_none,useful_echo,censored_none,censored_echo,ratio\n";
  std::vector<double> ratios;
  for (int s = 0; s < seeds; ++s) {
    const auto& t = traces[s];
    g << s << ',' << t.useful_none << ',' << t.useful_echo << ',' << t.censored_none << ',' << t.censored_echo << ','
      << t.ratio() << '\n';
    ratios.push_back(t.ratio());
  }
  std::sort(ratios.begin(), ratios.end());
  double median = ratios.size() % 2 ? ratios[ratios.size() / 2]
                                    : 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]);
  *ctx.out << "echo: median useful-time ratio " << median << " (" << strategy_name(base.strategy) << " vs none)\n";
  if (base.sigma == 0.0) return kExitOk;
  return median >= min_ratio ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- noise-budget

int cmd_noise_budget(Context& ctx) {
  const json& c = ctx.section;
  check_keys(c, {"rabi_khz", "gate_time_ns", "depth_khz", "relative_sigma", "move_time_us", "operations"},
             "noise-budget");
  const double rabi = get<double>(c, "rabi_khz", 15.0);
  const double tg = get<double>(c, "gate_time_ns", 100.0);
  const double depth = get<double>(c, "depth_khz", 50.0);
  const double rel = get<double>(c, "relative_sigma", 0.002);
  const double move = get<double>(c, "move_time_us", 500.0);
  const double ops = get<double>(c, "operations", 1000.0);
  for (double v : {rabi, tg, depth, rel, move, ops}) {
    if (!is_finite_nonneg(v)) throw UsageError("budget inputs must be finite and non-negative");
  }
  double heating = rydberg_heating_probability(2.0 * kPi * rabi * 1e3, tg * 1e-9);
  double t2 = dephasing_time_estimate(depth * 1e3, rel);
  MotionBudget mb = motion_budget(move * 1e-6, ops, std::isfinite(t2) ? t2 : std::numeric_limits<double>::max());
  auto f = ctx.open_csv("budget.csv");
  f << "quantity,value\n";
  f << "heating_probability," << heating << '\n';
  f << "t2_star_s," << t2 << '\n';
  f << "total_motion_time_s," << mb.total_time << '\n';
  f << "motion_over_t2," << (std::isfinite(t2) ? mb.ratio_to_t2 : 0.0) << '\n';
  *ctx.out << "noise-budget: heating " << heating << ", T2* " << t2 << " s, motion " << mb.total_time << " s\n";
  return kExitOk;
}

const std::map<std::string, int (*)(Context&)>& commands() {
  static const std::map<std::string, int (*)(Context&)> m{
      {"verify-decomp", &cmd_verify_decomp}, {"trotter", &cmd_trotter}, {"vqe", &cmd_vqe},
      {"lgt", &cmd_lgt},                     {"qpe", &cmd_qpe},         {"echo", &cmd_echo},
      {"noise-budget", &cmd_noise_budget},
  };
  return m;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fermiproc: fermionic processor emulator"};
  app.require_subcommand(1, 1);
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  int workers = 1;
  for (const auto& [name, fn] : commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fermiproc: " << e.what() << "\n";
    return kExitUsage;
  }
  CLI::App* sub = app.get_subcommands().front();
  Context ctx;
  ctx.command = sub->get_name();
  ctx.seed = seed;
  ctx.out_dir = out_dir;
  ctx.workers = workers;
  ctx.out = &out;
  ctx.err = &err;
  try {
    std::ifstream in(config);
    if (!in) throw UsageError("cannot open config " + config);
    json root;
    try {
      root = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw UsageError("config must be a JSON object");
    if (get<int>(root, "version", -1) != kConfigVersion) {
      throw UsageError("config version must be " + std::to_string(kConfigVersion));
    }
    if (!ctx.seed && root.contains("seed")) ctx.seed = get<std::uint64_t>(root, "seed", 0);
    ctx.section = get<json>(root, ctx.command, json::object());
    ctx.base_dir = fs::absolute(fs::path(config)).parent_path();
  } catch (const UsageError& e) {
    err << "fermiproc " << ctx.command << ": " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return commands().at(ctx.command)(ctx);
  } catch (const UsageError& e) {
    err << "fermiproc " << ctx.command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "fermiproc " << ctx.command << ": invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fermiproc " << ctx.command << ": " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace fermiproc
