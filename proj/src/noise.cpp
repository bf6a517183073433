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

#include "fermiproc/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fermiproc {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

constexpr double kQuadTol = 1e-10;

template <class F>
double integrate(F f, double a, double b, double* err) {
  double e = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14, &e);
  *err = e;
  return v;
}

// Unnormalized ground-state profile in zero-point units.
double psi(double x) { return std::exp(-x * x / 4.0); }

OverlapValue overlap_1d(double d) {
  double e1 = 0.0, e0 = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  double num = integrate([d](double x) { return psi(x) * psi(x + d); }, -inf, inf, &e1);
  double den = integrate([](double x) { return psi(x) * psi(x); }, -inf, inf, &e0);
  return {num / den, (e1 + e0) / den};
}

OverlapValue overlap_radial(double d) {
  double e1 = 0.0, e0 = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  double num = integrate([d](double r) { return 2.0 * kPi * r * psi(r) * psi(r + d); }, 0.0, inf, &e1);
  double den = integrate([](double r) { return 2.0 * kPi * r * psi(r) * psi(r); }, 0.0, inf, &e0);
  return {num / den, (e1 + e0) / den};
}

}  // namespace

double TrapParams::rayleigh_length() const { return kPi * waist() * waist() / wavelength(); }
double TrapParams::omega_r() const { return std::sqrt(4.0 * depth_joule() / (mass() * waist() * waist())); }
double TrapParams::omega_z() const {
  double zr = rayleigh_length();
  return std::sqrt(2.0 * depth_joule() / (mass() * zr * zr));
}
double TrapParams::r_zp() const { return std::sqrt(kHbar / (2.0 * mass() * omega_r())); }
double TrapParams::z_zp() const { return std::sqrt(kHbar / (2.0 * mass() * omega_z())); }

void TrapParams::validate() const {
  require_positive(depth_khz, "trap depth");
  require_positive(waist_um, "waist");
  require_positive(wavelength_um, "wavelength");
  require_positive(mass_amu, "mass");
  require_positive(omega_r(), "omega_r");
  require_positive(omega_z(), "omega_z");
  require_positive(r_zp(), "r_zp");
  require_positive(z_zp(), "z_zp");
}

void NoiseDistribution::validate() const {
  require_nonnegative(delta_omega_r, "delta_omega_r");
  require_nonnegative(delta_r, "delta_r");
  require_nonnegative(delta_z, "delta_z");
}

NoiseSample draw_sample(const NoiseDistribution& dist, const TrapParams& trap, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double a = g(rng);
  double b = g(rng);
  double c = g(rng);
  NoiseSample s;
  s.dr = a * dist.delta_r * trap.r_zp();
  s.dz = b * dist.delta_z * trap.z_zp();
  s.domega_r = c * dist.delta_omega_r * trap.omega_r();
  return s;
}

double delta_v0(const NoiseSample& s, const TrapParams& trap) {
  double w = trap.omega_r();
  double k = trap.mass() * trap.waist() * trap.waist() / 4.0;
  return k * ((w + s.domega_r) * (w + s.domega_r) - w * w);
}

OverlapValue overlap_factor(double dr, double dz, OverlapMode mode) {
  OverlapValue r = mode == OverlapMode::kTransverse ? overlap_1d(dr) : overlap_radial(dr);
  OverlapValue z = overlap_1d(dz);
  OverlapValue out{r.value * z.value, r.error_estimate * std::abs(z.value) + z.error_estimate * std::abs(r.value)};
  if (out.error_estimate > kQuadTol) throw std::runtime_error("overlap quadrature did not converge");
  return out;
}

double overlap_factor(const NoiseSample& s, const TrapParams& trap, OverlapMode mode) {
  return overlap_factor(s.dr / trap.r_zp(), s.dz / trap.z_zp(), mode).value;
}

double overlap_closed_form(double dr, double dz, OverlapMode mode) {
  double axial = std::exp(-dz * dz / 8.0);
  if (mode == OverlapMode::kTransverse) return std::exp(-dr * dr / 8.0) * axial;
  double c = dr / 2.0;
  double radial =
      std::exp(-dr * dr / 8.0) * (std::exp(-c * c / 2.0) - c * std::sqrt(kPi / 2.0) * std::erfc(c / std::sqrt(2.0)));
  return radial * axial;
}

TunnelingParams perturbed_pulse(const TunnelingParams& ideal, double f, double extra_z_angle) {
  return {f * ideal.theta1, ideal.theta2, f * ideal.theta3 + extra_z_angle};
}

PulseError pulse_error(const NoiseSample& s, const TrapParams& trap, double pulse_time_s, OverlapMode mode) {
  PulseError e;
  if (s.zero()) return e;
  e.f = overlap_factor(s, trap, mode);
  e.z_angle = delta_v0(s, trap) * pulse_time_s / kHbar;
  return e;
}

TwoModeOperator perturbed_shuttle(const TunnelingParams& t, const PulseError& e1, const PulseError& e3,
                                  const PulseError& e5) {
  const TunnelingParams flip{kPi, 0.0, 0.0};
  const TunnelingParams star{t.theta1, t.theta2 + kPi / 2, t.theta3};
  const TunnelingParams undo{-kPi, 0.0, 0.0};
  Mat local = shuttle_local_unitary(perturbed_pulse(flip, e1.f, e1.z_angle), perturbed_pulse(star, e3.f, e3.z_angle),
                                    perturbed_pulse(undo, e5.f, e5.z_angle));
  return two_mode_operator_from_matrix(local.topLeftCorner(4, 4));
}

double rydberg_heating_probability(double omega, double t_gate) {
  require_nonnegative(omega, "omega");
  require_nonnegative(t_gate, "gate time");
  double x = omega * t_gate;
  return std::min(1.0, x * x / 4.0);
}

double dephasing_time_estimate(double depth_hz, double relative_sigma) {
  require_nonnegative(depth_hz, "trap depth");
  require_nonnegative(relative_sigma, "relative sigma");
  double sigma = depth_hz * relative_sigma;
  if (sigma == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * kPi * sigma);
}

MotionBudget motion_budget(double move_time_s, double operations, double t2_s) {
  require_nonnegative(move_time_s, "move time");
  require_nonnegative(operations, "operation count");
  require_positive(t2_s, "T2*");
  MotionBudget b;
  b.total_time = move_time_s * operations;
  b.ratio_to_t2 = b.total_time / t2_s;
  if (move_time_s > 0.0) b.moves_within_t2 = t2_s / move_time_s;
  return b;
}

}  // namespace fermiproc
