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

#ifndef FERMIPROC_LINALG_HPP_
#define FERMIPROC_LINALG_HPP_

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace fermiproc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Matrix exponential exp(A) by scaling and squaring with a Pade approximant.
Mat expm(const Mat& a);

// exp(-i H) for Hermitian H via its eigendecomposition.
Mat expm_hermitian(const Mat& h);

// min over phi of ||U - e^{i phi} V||_F.
double phase_insensitive_distance(const Mat& u, const Mat& v);

// Same distance for state vectors.
double phase_insensitive_distance(const Vec& a, const Vec& b);

// ||U^dag U - 1||_max.
double unitarity_defect(const Mat& u);

double hermiticity_defect(const Mat& h);

// Random state with i.i.d. complex Gaussian entries, normalized.
template <class Rng>
Vec random_state(std::int64_t dim, Rng& rng);

// Random Hermitian matrix with standard Gaussian entries.
template <class Rng>
Mat random_hermitian(std::int64_t dim, Rng& rng);

}  // namespace fermiproc

#include <random>

namespace fermiproc {

template <class Rng>
Vec random_state(std::int64_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    double re = g(rng);
    double im = g(rng);
    v[i] = cplx(re, im);
  }
  return v / v.norm();
}

template <class Rng>
Mat random_hermitian(std::int64_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    for (std::int64_t j = 0; j < dim; ++j) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  }
  Mat h = (m + m.adjoint()) / 2.0;
  return h;
}

}  // namespace fermiproc

#endif  // FERMIPROC_LINALG_HPP_
