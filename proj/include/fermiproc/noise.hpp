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

// Error model for shuttle-implemented tunneling gates and the hardware
// budget estimates.
//
// Lengths are in metres, frequencies in rad/s and energies in joules inside
// the structs; rotation angles are energy * time / hbar. Inputs are taken in
// laboratory units (kHz * h, um, amu, s) through the named accessors.

#ifndef FERMIPROC_NOISE_HPP_
#define FERMIPROC_NOISE_HPP_

#include <cstdint>
#include <limits>
#include <random>

#include "fermiproc/gates.hpp"

namespace fermiproc {

inline constexpr double kPlanck = 6.62607015e-34;        // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);   // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

struct TrapParams {
  double depth_khz = 50.0;     // V0 / h in kHz
  double waist_um = 1.1;       // w0
  double wavelength_um = 0.515;
  double mass_amu = 86.9088775;  // 87Sr

  double depth_joule() const { return depth_khz * 1e3 * kPlanck; }
  double waist() const { return waist_um * 1e-6; }
  double wavelength() const { return wavelength_um * 1e-6; }
  double mass() const { return mass_amu * kAtomicMassUnit; }
  double rayleigh_length() const;  // z_R = pi w0^2 / lambda
  double omega_r() const;          // sqrt(4 V0 / (m w0^2))
  double omega_z() const;          // sqrt(2 V0 / (m z_R^2))
  double r_zp() const;             // sqrt(hbar / (2 m omega_r))
  double z_zp() const;             // sqrt(hbar / (2 m omega_z))

  // Throws unless every input and derived quantity is positive and finite.
  void validate() const;
};

// Independent Gaussian widths: radial frequency as a fraction of omega_r,
// offsets as fractions of the zero-point lengths.
struct NoiseDistribution {
  double delta_omega_r = 0.0;
  double delta_r = 0.0;
  double delta_z = 0.0;

  bool zero() const { return delta_omega_r == 0.0 && delta_r == 0.0 && delta_z == 0.0; }
  void validate() const;
};

struct NoiseSample {
  double dr = 0.0;       // m
  double dz = 0.0;       // m
  double domega_r = 0.0; // rad/s

  bool zero() const { return dr == 0.0 && dz == 0.0 && domega_r == 0.0; }
};

// N(0, 1) draws scaled by the widths; three normals per sample, in the order
// dr, dz, domega_r.
NoiseSample draw_sample(const NoiseDistribution& dist, const TrapParams& trap, std::mt19937_64& rng);

// Depth mismatch V0(omega_r + d) - V0(omega_r) with V0 = m omega_r^2 w0^2 / 4.
double delta_v0(const NoiseSample& s, const TrapParams& trap);

enum class OverlapMode {
  // Transverse displacement of the full 3D ground state: separable in x, y,
  // z and even in each offset.
  kTransverse,
  // The radial integral taken literally, int dr dz 2 pi r psi(r) psi(r + dr),
  // normalized so that f(0, 0) = 1.
  kRadialLiteral,
};

struct OverlapValue {
  double value = 1.0;
  double error_estimate = 0.0;
};

// Overlap of storage and transport ground states for offsets in units of
// r_zp and z_zp, by adaptive Gauss-Kronrod quadrature. Throws when the
// error estimate exceeds 1e-10.
OverlapValue overlap_factor(double dr_over_rzp, double dz_over_zzp, OverlapMode mode = OverlapMode::kTransverse);
double overlap_factor(const NoiseSample& s, const TrapParams& trap, OverlapMode mode = OverlapMode::kTransverse);

// Closed forms of the same integrals:
//   transverse: exp(-(dr^2 + dz^2) / 8)
//   radial:     exp(-dr^2 / 8) [exp(-c^2/2) - c sqrt(pi/2) erfc(c / sqrt 2)] exp(-dz^2 / 8), c = dr / 2
double overlap_closed_form(double dr_over_rzp, double dz_over_zzp, OverlapMode mode = OverlapMode::kTransverse);

// A pulse realized at fixed duration with Rabi coupling and detuning scaled
// by f and the detuning shifted by the depth mismatch:
//   (t1, t2, t3) -> (f t1, t2, f t3 + extra_z_angle).
TunnelingParams perturbed_pulse(const TunnelingParams& ideal, double f, double extra_z_angle);

struct PulseError {
  double f = 1.0;
  double z_angle = 0.0;  // delta V0 * tau / hbar
};

PulseError pulse_error(const NoiseSample& s, const TrapParams& trap, double pulse_time_s,
                       OverlapMode mode = OverlapMode::kTransverse);

// Two-mode operator of the shuttle sequence with one error per pulse (steps
// 1, 3 and 5). Amplitude left in the transport level is dropped.
TwoModeOperator perturbed_shuttle(const TunnelingParams& t, const PulseError& e1, const PulseError& e3,
                                  const PulseError& e5);

// (omega t)^2 / 4, capped at 1.
double rydberg_heating_probability(double omega, double t_gate);

// 1 / (2 pi depth relative_sigma) in seconds; +inf when relative_sigma = 0.
double dephasing_time_estimate(double depth_hz, double relative_sigma);

struct MotionBudget {
  double total_time = 0.0;   // s
  double ratio_to_t2 = 0.0;  // total / T2*
  double moves_within_t2 = std::numeric_limits<double>::infinity();
};

MotionBudget motion_budget(double move_time_s, double operations, double t2_s);

}  // namespace fermiproc

#endif  // FERMIPROC_NOISE_HPP_
