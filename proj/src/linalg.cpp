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

#include "fermiproc/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace fermiproc {

Mat expm(const Mat& a) { return a.exp(); }

Mat expm_hermitian(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases = (-kI * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// The optimal phase is arg tr(V^dag U); evaluating the residual directly
// keeps the result accurate near zero.
double phase_insensitive_distance(const Mat& u, const Mat& v) {
  cplx overlap = (v.adjoint() * u).trace();
  cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (u - phase * v).norm();
}

double phase_insensitive_distance(const Vec& a, const Vec& b) {
  cplx overlap = b.dot(a);
  cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (a - phase * b).norm();
}

double unitarity_defect(const Mat& u) {
  Mat d = u.adjoint() * u - Mat::Identity(u.cols(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace fermiproc
