// Copyright 2026 The matchgp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace matchgp {

/// Hard ceiling for dense 2^n materialization. Overridable via the
/// QGP_DENSE_CAP environment variable (checked once per process).
int dense_cap();

inline void check_dense_cap(int n) {
  if (n > dense_cap()) {
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " exceeds dense cap " + std::to_string(dense_cap()));
  }
}

/// splitmix64, used to derive independent substreams from (seed, stream id).
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Deterministic substream: results never depend on thread scheduling as long
/// as each unit of work derives its own stream from a fixed counter.
inline Rng substream(uint64_t seed, uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51ed2701ULL)));
}

int worker_threads();
void set_worker_threads(int k);

/// Index-chunked parallel loop. `fn(i)` must only write to slot i of
/// preallocated storage; chunk assignment is static so outputs are
/// independent of the actual thread count.
void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn);

double binomial_coefficient(int n, int k);

}  // namespace matchgp
