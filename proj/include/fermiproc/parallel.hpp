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

// Fixed-size worker pool for independent tasks, and per-task seed
// derivation so results do not depend on the worker count.

#ifndef FERMIPROC_PARALLEL_HPP_
#define FERMIPROC_PARALLEL_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>

namespace fermiproc {

// Runs fn(0) .. fn(n - 1) on up to `workers` threads (0 means hardware
// concurrency). The first exception thrown by a task is rethrown here after
// all workers have stopped.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

std::uint64_t splitmix64(std::uint64_t x);

// Seed for task (a, b) of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace fermiproc

#endif  // FERMIPROC_PARALLEL_HPP_
