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

// Unconstrained minimization over GSL's multimin drivers.

#ifndef FERMIPROC_OPTIMIZE_HPP_
#define FERMIPROC_OPTIMIZE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

namespace fermiproc {

using Objective = std::function<double(const std::vector<double>&)>;

enum class MinimizeMethod {
  kNelderMead,  // nmsimplex2
  kBfgs,        // vector_bfgs2 on central-difference gradients
};

struct MinimizeOptions {
  MinimizeMethod method = MinimizeMethod::kNelderMead;
  double initial_step = 0.1;
  // Nelder-Mead stops when the simplex characteristic size drops below this.
  double size_tolerance = 1e-9;
  double gradient_tolerance = 1e-9;
  double fd_step = 1e-6;
  int max_evaluations = 200000;
  // Additional runs started from the best point with a reseeded simplex.
  int restarts = 2;
  std::uint64_t seed = 1;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
  bool budget_exhausted = false;
  std::vector<double> trace;  // best value after each iteration
};

MinimizeResult minimize(const Objective& f, std::vector<double> x0, const MinimizeOptions& options);

}  // namespace fermiproc

#endif  // FERMIPROC_OPTIMIZE_HPP_
